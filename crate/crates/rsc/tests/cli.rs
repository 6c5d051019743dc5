//! End-to-end behaviour of the command line: exit codes, output shapes, determinism.

use std::path::PathBuf;
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

fn rsc(args: &[&str]) -> rsc::Outcome {
    rsc_env(args, None)
}

fn rsc_env(args: &[&str], threads: Option<&str>) -> rsc::Outcome {
    let mut argv = vec!["rsc"];
    argv.extend_from_slice(args);
    rsc::run(argv, threads)
}

fn json(out: &rsc::Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", out.stdout))
}

fn schema(name: &str) -> JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    JSONSchema::compile(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
}

fn assert_valid(name: &str, value: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(value) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{name} schema rejects {value}: {msgs:?}");
}

const STEP: &str = r#"{"domain":"halfline","breaks":["1","3"],"values":["1","2"],"tail":"0"}"#;

#[test]
fn decide_exit_codes() {
    let base = ["decide", "--m", "1", "--n", "3", "--domain", "entire", "--X", "L(p=2,q=2)"];
    let mut args = base.to_vec();
    args.extend(["--Y", "L(p=4,q=4)"]);
    let out = rsc(&args);
    assert_eq!(out.code, rsc::exit::OK, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["compact"], Value::Bool(true));
    assert_valid("verdict", &v);

    let mut args = base.to_vec();
    args.extend(["--Y", "L(p=6,q=6)"]);
    let out = rsc(&args);
    assert_eq!(out.code, rsc::exit::NOT_COMPACT);
    let v = json(&out);
    assert_eq!(v["compact"], Value::Bool(false));
    assert_valid("verdict", &v);

    let mut args = base.to_vec();
    args.extend(["--Y", "L(p=4,q="]);
    let out = rsc(&args);
    assert_eq!(out.code, rsc::exit::INVALID_INPUT);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn decide_ball_and_orlicz() {
    let out = rsc(&[
        "decide", "--m", "1", "--n", "3", "--domain", "ball", "--R", "2", "--alpha", "2", "--X", "L2", "--Y",
        "L(p=9,q=9)",
    ]);
    assert_eq!(out.code, rsc::exit::OK, "{}", out.stderr);
    assert_valid("verdict", &json(&out));
    let out = rsc(&[
        "decide", "--m", "1", "--n", "3", "--domain", "ball", "--alpha", "2", "--X", "L2", "--Y", "L(p=10,q=10)",
    ]);
    assert_eq!(out.code, rsc::exit::NOT_COMPACT);

    let out = rsc(&[
        "decide", "--m", "1", "--n", "3", "--domain", "entire", "--X", "Orlicz(p0=2,a0=0,pinf=2,ainf=0)", "--Y",
        "Orlicz(p0=4,a0=0,pinf=4,ainf=0)",
    ]);
    assert_eq!(out.code, rsc::exit::OK, "{}", out.stderr);
    assert_valid("verdict", &json(&out));
}

#[test]
fn invalid_parameters_exit_two() {
    for args in [
        vec!["decide", "--m", "0", "--n", "3", "--domain", "entire", "--X", "L2", "--Y", "L4"],
        vec!["decide", "--m", "1", "--n", "3", "--domain", "sphere", "--X", "L2", "--Y", "L4"],
        vec!["decide", "--m", "1", "--n", "3", "--domain", "ball", "--R", "-1", "--X", "L2", "--Y", "L4"],
        vec!["optimal", "--m", "1", "--n", "3", "--alpha", "-1", "--X", "L2"],
        vec!["suptail", "--X", "L2", "--Y", "L4", "--a-grid", "log:1:0:3"],
        vec!["rearrange", "--f", "{\"domain\":\"halfline\"}"],
        vec!["verify", "--suite", "nope"],
        vec!["frobnicate"],
    ] {
        let out = rsc(&args);
        assert_eq!(out.code, rsc::exit::INVALID_INPUT, "{args:?}: {}", out.stdout);
    }
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(rsc(&["--help"]).code, rsc::exit::OK);
    assert_eq!(rsc(&["--version"]).code, rsc::exit::OK);
}

#[test]
fn optimal_targets() {
    let cases = [
        ("2", "L2", "L(r=10,s=2,g=0)"),
        ("0", "L2", "L(r=6,s=2,g=0)"),
        ("0", "L4", "Linf"),
        ("0", "L(p=3,q=1)", "Linf"),
    ];
    for (alpha, x, literal) in cases {
        let out = rsc(&["optimal", "--m", "1", "--n", "3", "--alpha", alpha, "--X", x]);
        assert_eq!(out.code, rsc::exit::OK, "{}", out.stderr);
        let v = json(&out);
        assert_eq!(v["literal"], Value::String(literal.into()), "{alpha} {x}");
        assert_valid("optimal", &v);
    }
}

#[test]
fn optimal_literal_parses_back() {
    let out = rsc(&["optimal", "--m", "1", "--n", "3", "--X", "L(p=3,q=2)"]);
    let v = json(&out);
    let literal = v["literal"].as_str().unwrap();
    literal.parse::<rsc_core::spaces::LZSpace>().expect("optimal literal parses as a space");
}

#[test]
fn suptail_csv_rows_decay() {
    let out = rsc(&["--format", "csv", "suptail", "--X", "L2", "--Y", "L4", "--a-grid", "log:1:1e4:9"]);
    assert_eq!(out.code, rsc::exit::OK, "{}", out.stderr);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("a,estimate,floor,certificate,family"));
    let estimates: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(estimates.len(), 9);
    assert!(estimates.windows(2).all(|w| w[1] < w[0]), "{estimates:?}");
    assert!((estimates[0] - 0.5f64.sqrt()).abs() < 1e-9);
}

#[test]
fn suptail_json_matches_schema() {
    let out = rsc(&["suptail", "--X", "L2", "--Y", "L4", "--a-grid", "1,10,100"]);
    assert_eq!(out.code, rsc::exit::OK, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_valid("suptail", &v);
    for row in v["rows"].as_array().unwrap() {
        assert_valid("stepfn", &row["best"]);
    }
}

#[test]
fn norm_and_fundamental() {
    let out = rsc(&["norm", "--X", "L2", "--f", STEP]);
    assert_eq!(out.code, rsc::exit::OK, "{}", out.stderr);
    let v = json(&out);
    assert_valid("norm", &v);
    // |f|_2^2 = 1 + 4*2 = 9
    assert!((v["norm"].as_f64().unwrap() - 3.0).abs() < 1e-9);

    let out = rsc(&["norm", "--X", "L(p=2,q=1)", "--phi", "1,4"]);
    let v = json(&out);
    assert_valid("norm", &v);
    let phi: Vec<f64> = v["fundamental"].as_array().unwrap().iter().map(|r| r["phi"].as_f64().unwrap()).collect();
    assert_eq!(phi.len(), 2);
    assert!((phi[1] / phi[0] - 2.0).abs() < 1e-9);
}

#[test]
fn rearrange_is_canonical() {
    let out = rsc(&["rearrange", "--f", STEP]);
    assert_eq!(out.code, rsc::exit::OK, "{}", out.stderr);
    let v = json(&out);
    assert_valid("stepfn", &v);
    assert_eq!(out.stdout.trim(), r#"{"breaks":["2","3"],"domain":"halfline","tail":"0","values":["2","1"]}"#);
    // Already monotone input comes back unchanged.
    let again = rsc(&["rearrange", "--f", out.stdout.trim()]);
    assert_eq!(again.stdout, out.stdout);
}

#[test]
fn rearrange_reads_file() {
    let path = std::env::temp_dir().join(format!("rsc-cli-{}.json", std::process::id()));
    std::fs::write(&path, STEP).unwrap();
    let arg = format!("@{}", path.display());
    let out = rsc(&["rearrange", "--f", &arg]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, rsc::exit::OK, "{}", out.stderr);
    assert_eq!(json(&out)["values"], serde_json::json!(["2", "1"]));
}

#[test]
fn verify_reports_match_schema() {
    for suite in ["averaging", "radial-lemma"] {
        let out = rsc(&["verify", "--suite", suite, "--samples", "40"]);
        assert_eq!(out.code, rsc::exit::OK, "{suite}: {}", out.stdout);
        let v = json(&out);
        assert_eq!(v["passed"], Value::Bool(true));
        assert_valid("verify", &v);
    }
}

#[test]
fn verify_csv_header_fixed() {
    let out = rsc(&["--format", "csv", "verify", "--suite", "radial-lemma"]);
    assert_eq!(out.code, rsc::exit::OK);
    assert_eq!(out.stdout.lines().next(), Some("check,value,limit,passed"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["suptail", "--X", "L(p=2,q=3,ainf=1)", "--Y", "L(p=5,q=inf)", "--a-grid", "log:1:1e6:7"];
    let one = rsc_env(&args, Some("1"));
    let four = rsc_env(&args, Some("4"));
    let again = rsc_env(&args, Some("4"));
    assert_eq!(one.code, rsc::exit::OK, "{}", one.stderr);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);

    let verify = ["verify", "--suite", "averaging", "--samples", "30", "--seed", "11"];
    assert_eq!(rsc_env(&verify, Some("1")).stdout, rsc_env(&verify, Some("3")).stdout);
}

#[test]
fn bad_thread_env_is_invalid_input() {
    let out = rsc_env(&["norm", "--X", "L2", "--phi", "1"], Some("zero"));
    assert_eq!(out.code, rsc::exit::INVALID_INPUT);
}

#[test]
fn config_file_overrides_and_rejects_unknown_keys() {
    let dir = std::env::temp_dir();
    let good = dir.join(format!("rsc-cfg-good-{}.toml", std::process::id()));
    let bad = dir.join(format!("rsc-cfg-bad-{}.toml", std::process::id()));
    std::fs::write(&good, "rel_gap = 1e-4\nthreads = 2\nseed = 3\n").unwrap();
    std::fs::write(&bad, "tolerance = 1\n").unwrap();
    let ok = rsc(&["--config", good.to_str().unwrap(), "suptail", "--X", "L2", "--Y", "L4", "--a-grid", "1"]);
    let err = rsc(&["--config", bad.to_str().unwrap(), "suptail", "--X", "L2", "--Y", "L4", "--a-grid", "1"]);
    std::fs::remove_file(&good).ok();
    std::fs::remove_file(&bad).ok();
    assert_eq!(ok.code, rsc::exit::OK, "{}", ok.stderr);
    assert_eq!(err.code, rsc::exit::INVALID_INPUT);
}

#[test]
fn resource_cap_exits_four() {
    let dir = std::env::temp_dir();
    let cfg = dir.join(format!("rsc-cfg-cap-{}.toml", std::process::id()));
    std::fs::write(&cfg, "max_pieces = 4\nrel_gap = 1e-12\n").unwrap();
    let out = rsc(&["--config", cfg.to_str().unwrap(), "verify", "--suite", "tail-estimate"]);
    std::fs::remove_file(&cfg).ok();
    assert_eq!(out.code, rsc::exit::RESOURCE_CAP, "{}{}", out.stdout, out.stderr);
}

#[test]
fn binary_wires_exit_code_and_env() {
    let bin = env!("CARGO_BIN_EXE_rsc");
    let status = Command::new(bin)
        .args(["decide", "--m", "1", "--n", "3", "--domain", "entire", "--X", "L2", "--Y", "L6"])
        .env("RSC_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(rsc::exit::NOT_COMPACT));
    assert!(String::from_utf8(status.stdout).unwrap().contains("\"compact\":false"));
    let status = Command::new(bin).args(["norm", "--X", "L2", "--phi", "1"]).env("RSC_THREADS", "-3").output().unwrap();
    assert_eq!(status.status.code(), Some(rsc::exit::INVALID_INPUT));
}
