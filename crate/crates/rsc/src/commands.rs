//! Command-line definitions and their implementations. [`run`] returns the exit code and the
//! text for stdout and stderr, so the binary is a thin wrapper.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use rsc_core::extremal::{monotone_envelope, suptail, SearchOptions};
use rsc_core::rational::{parse_q, Q};
use rsc_core::spaces::{fundamental_function, lz_norm, LZSpace};
use rsc_core::stepfn::IntervalDomain;
use rsc_core::verdicts::{decide, decide_entire_orlicz, optimal_target_ball_lz, EmbeddingQuery, OrliczParams, Verdict};

use crate::config::{ConfigFile, OutputFormat, RunConfig};
use crate::error::{exit, CliError};
use crate::formats::{
    cell, decode_step_fn, encode_step_fn, num, optimal_json, optimal_literal, tail_json, tail_record, verdict_json,
    write_csv, write_table, TAIL_HEADER,
};
use crate::grid::GridSpec;
use crate::suites::{self, Suite};

#[derive(Debug, Parser)]
#[command(name = "rsc", version, about = "Compactness of radial Sobolev embeddings between Lorentz-Zygmund spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// `key = value` file overriding tolerances (rel_gap, max_pieces, threads, seed, samples).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Domain {
    Entire,
    Ball,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide compactness of W^m X -> Y for radial functions.
    Decide {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        domain: Domain,
        /// Ball radius.
        #[arg(long = "R", visible_alias = "radius", default_value = "1")]
        r: String,
        /// Weight exponent of |x|^alpha on the ball.
        #[arg(long, default_value = "0")]
        alpha: String,
        /// Source space, e.g. `L(p=2,q=2)`, or `Orlicz(p0=..,a0=..,pinf=..,ainf=..)` on the entire space.
        #[arg(long = "X", visible_alias = "x")]
        x: String,
        /// Target space.
        #[arg(long = "Y", visible_alias = "y")]
        y: String,
    },
    /// Optimal rearrangement-invariant target on a ball.
    Optimal {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "0")]
        alpha: String,
        /// Accepted for symmetry with `decide`; the answer does not depend on it.
        #[arg(long = "R", visible_alias = "radius", default_value = "1")]
        r: String,
        #[arg(long = "X", visible_alias = "x")]
        x: String,
    },
    /// Lower estimates of sup over the unit ball of X of the Y-norm of rearranged tails.
    Suptail {
        #[arg(long = "X", visible_alias = "x")]
        x: String,
        #[arg(long = "Y", visible_alias = "y")]
        y: String,
        /// `log:<start>:<stop>:<count>`, `lin:..` or a comma-separated list.
        #[arg(long = "a-grid")]
        a_grid: String,
        /// Skip the upper certificate.
        #[arg(long)]
        no_certificate: bool,
    },
    /// Norm of a step function, or the fundamental function at `--phi`.
    Norm {
        #[arg(long = "X", visible_alias = "x")]
        x: String,
        /// Step function as JSON, `@path`, or `-` for stdin.
        #[arg(long, required_unless_present = "phi")]
        f: Option<String>,
        /// Evaluate the fundamental function at these points instead.
        #[arg(long)]
        phi: Option<String>,
    },
    /// Nonincreasing rearrangement of a step function.
    Rearrange {
        /// Step function as JSON, `@path`, or `-` for stdin.
        #[arg(long)]
        f: String,
    },
    /// Run a verification suite; exits 5 when any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn error(e: &CliError) -> Self {
        Outcome { code: e.code(), stdout: String::new(), stderr: format!("rsc: {e}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command. `RSC_THREADS` is read
/// from `env_threads`.
pub fn run<I, T>(args: I, env_threads: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID_INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if code == exit::OK {
                Outcome::ok(code, text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli, env_threads) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

fn execute(cli: &Cli, env_threads: Option<&str>) -> Result<Outcome, CliError> {
    let file = cli.config.as_deref().map(ConfigFile::load).transpose()?;
    let cfg = RunConfig::new(cli.format, file.as_ref(), env_threads)?;
    match &cli.command {
        Command::Decide { m, n, domain, r, alpha, x, y } => cmd_decide(&cfg, *m, *n, *domain, r, alpha, x, y),
        Command::Optimal { m, n, alpha, r, x } => cmd_optimal(&cfg, *m, *n, alpha, r, x),
        Command::Suptail { x, y, a_grid, no_certificate } => cmd_suptail(&cfg, x, y, a_grid, !no_certificate),
        Command::Norm { x, f, phi } => cmd_norm(&cfg, x, f.as_deref(), phi.as_deref()),
        Command::Rearrange { f } => cmd_rearrange(&cfg, f),
        Command::Verify { suite, seed, samples } => {
            let mut cfg = cfg;
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.samples = samples.unwrap_or(cfg.samples);
            cmd_verify(&cfg, *suite)
        }
    }
}

fn rational(name: &str, s: &str) -> Result<Q, CliError> {
    parse_q(s).map_err(|_| CliError::Invalid(format!("bad rational for {name}: `{s}`")))
}

fn space_on(s: &str, domain: IntervalDomain) -> Result<LZSpace, CliError> {
    Ok(s.parse::<LZSpace>()?.on(domain)?)
}

/// `Orlicz(p0=..,a0=..,pinf=..,ainf=..)`: a Young function like `t^{p0} ℓ^{a0}` near 0 and
/// `t^{pinf} ℓ^{ainf}` near ∞. Missing log exponents default to 0.
fn parse_orlicz(s: &str) -> Result<Option<(Q, Q, Q, Q)>, CliError> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(inner) = text.strip_prefix("Orlicz(").and_then(|t| t.strip_suffix(')')) else {
        return Ok(None);
    };
    let bad = || CliError::Invalid(format!("malformed Orlicz literal `{s}`"));
    let (mut p0, mut pinf, mut a0, mut ainf) = (None, None, Q::from_integer(0.into()), Q::from_integer(0.into()));
    for item in inner.split(',').filter(|i| !i.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(bad)?;
        let v = parse_q(v).map_err(|_| bad())?;
        match k {
            "p0" => p0 = Some(v),
            "pinf" => pinf = Some(v),
            "a0" => a0 = v,
            "ainf" => ainf = v,
            _ => return Err(bad()),
        }
    }
    Ok(Some((p0.ok_or_else(bad)?, a0, pinf.ok_or_else(bad)?, ainf)))
}

fn verdict_code(v: &Verdict) -> i32 {
    match v.compact {
        Some(true) => exit::OK,
        Some(false) => exit::NOT_COMPACT,
        None => exit::UNDETERMINED,
    }
}

fn render_verdict(cfg: &RunConfig, v: &Verdict) -> String {
    let holds = |h: Option<bool>| h.map_or("unknown".to_string(), |b| b.to_string());
    let compact = holds(v.compact);
    match cfg.format {
        OutputFormat::Json => format!("{}\n", verdict_json(v)),
        OutputFormat::Csv => write_csv(
            ["id", "holds"],
            [["compact".to_string(), compact]].into_iter().chain(v.trace.iter().map(|e| [e.id.as_str().to_string(), holds(e.holds)])),
        ),
        OutputFormat::Table => {
            let mut out = format!("compact: {compact}\nbranch: {}\nprovenance: {}\n", v.branch.as_str(), v.provenance.as_str());
            out.push_str(&write_table(["condition", "holds"], v.trace.iter().map(|e| [e.id.as_str().to_string(), holds(e.holds)])));
            for note in &v.notes {
                out.push_str(&format!("note: {note}\n"));
            }
            out
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_decide(cfg: &RunConfig, m: u32, n: u32, domain: Domain, r: &str, alpha: &str, x: &str, y: &str) -> Result<Outcome, CliError> {
    let verdict = match (parse_orlicz(x)?, parse_orlicz(y)?) {
        (Some((p1, gamma1, p2, gamma2)), Some((r1, delta1, r2, delta2))) => {
            if domain != Domain::Entire {
                return Err(CliError::Invalid("Orlicz queries are decided on the entire space only".into()));
            }
            decide_entire_orlicz(m, n, &OrliczParams { p1, p2, r1, r2, gamma1, gamma2, delta1, delta2 })?
        }
        (None, None) => {
            let query = match domain {
                Domain::Entire => EmbeddingQuery::entire(m, n, x.parse()?, y.parse()?),
                Domain::Ball => {
                    let unit = IntervalDomain::UnitInterval;
                    EmbeddingQuery::ball(m, n, rational("R", r)?, rational("alpha", alpha)?, space_on(x, unit)?, space_on(y, unit)?)
                }
            };
            query.validate()?;
            decide(&query)?
        }
        _ => return Err(CliError::Invalid("X and Y must both be LZ or both be Orlicz literals".into())),
    };
    Ok(Outcome::ok(verdict_code(&verdict), render_verdict(cfg, &verdict)))
}

fn cmd_optimal(cfg: &RunConfig, m: u32, n: u32, alpha: &str, r: &str, x: &str) -> Result<Outcome, CliError> {
    if rational("R", r)? <= Q::from_integer(0.into()) {
        return Err(CliError::Invalid("ball radius must be positive".into()));
    }
    let x = space_on(x, IntervalDomain::UnitInterval)?;
    let desc = optimal_target_ball_lz(m, n, &rational("alpha", alpha)?, &x)?;
    let notes: Vec<String> = if m >= n { vec!["m >= n: every source embeds into Linf".into()] } else { Vec::new() };
    let literal = optimal_literal(&desc);
    let out = match cfg.format {
        OutputFormat::Json => format!("{}\n", optimal_json(&desc, &notes)),
        OutputFormat::Csv => write_csv(["literal"], [[literal]]),
        OutputFormat::Table => {
            let mut s = format!("{literal}\n");
            for note in &notes {
                s.push_str(&format!("note: {note}\n"));
            }
            s
        }
    };
    Ok(Outcome::ok(exit::OK, out))
}

fn cmd_suptail(cfg: &RunConfig, x: &str, y: &str, grid: &str, certificate: bool) -> Result<Outcome, CliError> {
    let (x, y): (LZSpace, LZSpace) = (x.parse()?, y.parse()?);
    let points = grid.parse::<GridSpec>()?.points();
    if points.iter().any(|a| *a <= Q::from_integer(0.into())) {
        return Err(CliError::Invalid("cut points must be positive".into()));
    }
    let mut opts = SearchOptions::for_space(&x);
    opts.certificate = certificate;
    let mut rows = cfg
        .pool()
        .install(|| points.par_iter().map(|a| suptail(&x, &y, a, &opts)).collect::<Result<Vec<_>, _>>())?;
    rows.sort_by(|l, r| l.a.total_cmp(&r.a));
    monotone_envelope(&mut rows);
    let out = match cfg.format {
        OutputFormat::Csv => write_csv(TAIL_HEADER, rows.iter().map(tail_record)),
        OutputFormat::Table => write_table(TAIL_HEADER, rows.iter().map(tail_record)),
        OutputFormat::Json => format!(
            "{}\n",
            json!({"X": x.to_string(), "Y": y.to_string(), "rows": rows.iter().map(tail_json).collect::<Vec<_>>()})
        ),
    };
    Ok(Outcome::ok(exit::OK, out))
}

/// Inline JSON, `@path` or `-` for stdin.
fn read_fn_arg(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        return Ok(std::io::read_to_string(std::io::stdin())?);
    }
    match arg.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(arg.to_string()),
    }
}

fn cmd_norm(cfg: &RunConfig, x: &str, f: Option<&str>, phi: Option<&str>) -> Result<Outcome, CliError> {
    let space: LZSpace = x.parse()?;
    if let Some(grid) = phi {
        let x = space.clone();
        let rows: Vec<(Q, f64)> = grid.parse::<GridSpec>()?.points().into_iter().map(|t| {
            let v = fundamental_function(&x, &t);
            (t, v)
        }).collect();
        let out = match cfg.format {
            OutputFormat::Json => format!(
                "{}\n",
                json!({"space": space.to_string(), "fundamental": rows.iter().map(|(t, v)| json!({"t": t.to_string(), "phi": num(*v)})).collect::<Vec<_>>()})
            ),
            OutputFormat::Csv => write_csv(["t", "phi"], rows.iter().map(|(t, v)| [t.to_string(), cell(*v)])),
            OutputFormat::Table => write_table(["t", "phi"], rows.iter().map(|(t, v)| [t.to_string(), cell(*v)])),
        };
        return Ok(Outcome::ok(exit::OK, out));
    }
    let f = decode_step_fn(&read_fn_arg(f.expect("clap requires f without phi"))?)?;
    let space = space.on(f.domain())?;
    let value = lz_norm(&f, &space)?;
    let out = match cfg.format {
        OutputFormat::Json => format!("{}\n", json!({"space": space.to_string(), "norm": num(value)})),
        OutputFormat::Csv => write_csv(["space", "norm"], [[space.to_string(), cell(value)]]),
        OutputFormat::Table => format!("{}  {}\n", space, cell(value)),
    };
    Ok(Outcome::ok(exit::OK, out))
}

fn cmd_rearrange(cfg: &RunConfig, f: &str) -> Result<Outcome, CliError> {
    let f = decode_step_fn(&read_fn_arg(f)?)?;
    let star = f.rearrange()?;
    let enc: Value = encode_step_fn(star.as_fn());
    let out = match cfg.format {
        OutputFormat::Json => format!("{enc}\n"),
        OutputFormat::Csv | OutputFormat::Table => {
            let rows = star.as_fn().pieces().into_iter().map(|p| {
                [p.start.to_string(), p.end.map(|e| e.to_string()).unwrap_or_else(|| "inf".into()), p.value.to_string()]
            });
            if cfg.format == OutputFormat::Csv {
                write_csv(["start", "end", "value"], rows)
            } else {
                write_table(["start", "end", "value"], rows)
            }
        }
    };
    Ok(Outcome::ok(exit::OK, out))
}

fn cmd_verify(cfg: &RunConfig, suite: Suite) -> Result<Outcome, CliError> {
    let report = suites::run(suite, cfg)?;
    let code = if report.passed() { exit::OK } else { exit::INVARIANT_FAILURE };
    let rows = report.checks.iter().map(|c| [c.name.clone(), cell(c.value), cell(c.limit), c.passed().to_string()]);
    let header = ["check", "value", "limit", "passed"];
    let out = match cfg.format {
        OutputFormat::Json => format!("{}\n", report.to_json()),
        OutputFormat::Csv => write_csv(header, rows),
        OutputFormat::Table => write_table(header, rows),
    };
    let mut outcome = Outcome::ok(code, out);
    if code != exit::OK {
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        outcome.stderr = format!("rsc: {}\n", CliError::Invariant(failed.join("; ")));
    }
    Ok(outcome)
}
