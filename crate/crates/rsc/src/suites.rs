//! Verification suites run by `rsc verify`. Each check compares a measured value against a
//! limit (`value <= limit` passes).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use rsc_core::extremal::{CandidateFamily, LimitClass, SearchOptions};
use rsc_core::rational::{q, qi, to_f64, Q};
use rsc_core::spaces::{fundamental_function, lz_norm, LZSpace};
use rsc_core::stepfn::{IntervalDomain, MonotoneStepFn, PiecewiseFn};
use rsc_core::transforms::{averaging, averaging_core, tail_cut_bound, TAlphaBeta};
use rsc_core::witness::{
    tail_envelope, verify_construction_bounds, verify_radial_lemma, verify_tail_estimate, ConstructionFamily,
    RadialSample,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::formats::num;
use crate::matrix;
use crate::random;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Averaging,
    Construction,
    RadialLemma,
    TailEstimate,
    TailMatrix,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Averaging => "averaging",
            Suite::Construction => "construction",
            Suite::RadialLemma => "radial-lemma",
            Suite::TailEstimate => "tail-estimate",
            Suite::TailMatrix => "tail-matrix",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check { name: name.into(), value, limit }
    }

    /// A boolean check encoded as `0 <= 0` or `1 <= 0`.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn passed(&self) -> bool {
        self.value <= self.limit
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Suite-specific details for the JSON output.
    pub details: Value,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "passed": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "value": num(c.value),
                "limit": num(c.limit),
                "passed": c.passed(),
            })).collect::<Vec<_>>(),
            "details": self.details,
        })
    }
}

/// Runs a suite inside a thread pool sized by `cfg`.
pub fn run(suite: Suite, cfg: &RunConfig) -> Result<SuiteReport, CliError> {
    let (checks, details) = cfg.pool().install(|| match suite {
        Suite::Averaging => averaging_suite(cfg),
        Suite::Construction => construction_suite(cfg),
        Suite::RadialLemma => radial_lemma_suite(),
        Suite::TailEstimate => tail_estimate_suite(cfg),
        Suite::TailMatrix => tail_matrix_suite(),
    })?;
    Ok(SuiteReport { suite, checks, details })
}

fn space(s: &str) -> LZSpace {
    s.parse().expect("built-in space literal")
}

fn sup_of(f: &PiecewiseFn) -> Q {
    f.values().iter().chain([f.tail()]).max().cloned().unwrap_or_else(|| qi(0))
}

/// Operator bounds for the averaging operators and `T_{α,β}`.
fn averaging_suite(cfg: &RunConfig) -> Result<(Vec<Check>, Value), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.samples;
    // Contraction of the core on L¹ and L∞, exactly.
    let (mut l1_excess, mut sup_excess) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let (mut l1_ok, mut sup_ok) = (true, true);
    for _ in 0..n {
        let h = random::step_fn(&mut rng, IntervalDomain::HalfLine, 8);
        let iv = random::intervals(&mut rng);
        let core = averaging_core(&h, &iv)?;
        let d1 = core.integral()? - h.integral()?;
        let ds = sup_of(&core) - sup_of(&h);
        l1_ok &= d1 <= qi(0);
        sup_ok &= ds <= qi(0);
        l1_excess = l1_excess.max(to_f64(&d1));
        sup_excess = sup_excess.max(to_f64(&ds));
    }
    // T_{α,β} on L¹ and L∞ against max{1/|α|, 1/(β+1)}.
    let params = [(qi(1), qi(0)), (q(-1, 2), q(1, 2)), (qi(2), qi(1)), (q(1, 3), qi(0)), (qi(-1), qi(1)), (q(-1, 3), qi(2))];
    let (mut t1, mut tinf) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let f = random::step_fn(&mut rng, IntervalDomain::UnitInterval, 6);
        let (a, b) = &params[i % params.len()];
        let k = (1.0 / to_f64(a).abs()).max(1.0 / (to_f64(b) + 1.0));
        let t = TAlphaBeta::new(&f, a, b)?;
        let (n1, ninf) = (to_f64(&f.integral()?), to_f64(&sup_of(&f)));
        if n1 > 0.0 {
            t1 = t1.max(t.l1_norm() / (k * n1) - 1.0);
            tinf = tinf.max(t.sup_norm() / (k * ninf) - 1.0);
        }
    }
    // The averaging inequality with the certified tail bound, on normed pairs.
    let pairs = [("L2", "L4"), ("L1", "L2"), ("L(p=3,q=1)", "L5"), ("L2", "Linf")];
    let mut ineq = f64::NEG_INFINITY;
    for i in 0..(n / 4).max(8) {
        let (xs, ys) = pairs[i % pairs.len()];
        let (x, y) = (space(xs), space(ys));
        let g = random::step_fn(&mut rng, IntervalDomain::HalfLine, 8);
        let iv = random::intervals(&mut rng);
        let delta = &iv[0].1 - &iv[0].0;
        let lhs = lz_norm(&averaging(&g, &iv)?, &y)?;
        let bound = fundamental_function(&y, &delta) / fundamental_function(&x, &delta) + tail_cut_bound(&x, &y, &delta)?.total;
        let rhs = 2.0 * bound * lz_norm(&g, &x)?;
        if rhs > 0.0 {
            ineq = ineq.max(lhs / rhs - 1.0);
        }
    }
    let checks = vec![
        Check::flag("core contraction on L1 (exact)", l1_ok),
        Check::flag("core contraction on Linf (exact)", sup_ok),
        Check::new("T bound on L1, relative excess", t1, 1e-9),
        Check::new("T bound on Linf, relative excess", tinf, 1e-9),
        Check::new("averaging inequality, relative excess", ineq, 1e-9),
    ];
    let details = json!({"instances": n, "max_l1_excess": num(l1_excess), "max_sup_excess": num(sup_excess)});
    Ok((checks, details))
}

/// Nonincreasing samples `f` with their cut points, scaled with `a`.
pub fn entire_family(a_values: &[i64]) -> Vec<(MonotoneStepFn, Q)> {
    let mono = |levels: &[(Q, Q)]| {
        let breaks = levels.iter().map(|l| l.0.clone()).collect();
        let values = levels.iter().map(|l| l.1.clone()).collect();
        MonotoneStepFn::new(PiecewiseFn::new(IntervalDomain::HalfLine, breaks, values, qi(0)).expect("valid"))
            .expect("nonincreasing")
    };
    a_values
        .iter()
        .flat_map(|&a| {
            [
                (mono(&[(qi(2 * a), qi(1))]), qi(a)),
                (mono(&[(qi(2 * a), qi(3)), (qi(9 * a), qi(1))]), qi(a)),
                (mono(&[(q(a, 2), qi(6)), (qi(3 * a), qi(2)), (qi(40 * a), q(1, 3))]), qi(a)),
            ]
        })
        .collect()
}

/// `(f, R, a)` samples for the ball construction.
pub fn ball_family() -> Vec<(PiecewiseFn, Q, Q)> {
    let step = |levels: &[(Q, Q)]| {
        let breaks = levels.iter().map(|l| l.0.clone()).collect();
        let values = levels.iter().map(|l| l.1.clone()).collect();
        PiecewiseFn::new(IntervalDomain::UnitInterval, breaks, values, qi(0)).expect("valid")
    };
    vec![
        (step(&[(q(1, 2), qi(1))]), qi(1), q(1, 2)),
        (step(&[(q(1, 100), qi(5)), (q(1, 10), qi(1))]), qi(2), q(1, 10)),
        (step(&[(q(1, 1000), qi(1))]), q(1, 2), q(1, 1000)),
        (step(&[(q(1, 8), qi(0)), (q(1, 4), qi(3))]), qi(1), q(1, 4)),
    ]
}

pub const STABILITY_LIMIT: f64 = 10.0;

fn spread(range: (f64, f64)) -> f64 {
    if range.0 > 0.0 {
        range.1 / range.0
    } else {
        f64::INFINITY
    }
}

/// Both construction inequalities over sample families.
fn construction_suite(cfg: &RunConfig) -> Result<(Vec<Check>, Value), CliError> {
    let opts = cfg.envelope;
    let entire_cases: Vec<(u32, u32, &str, &str)> =
        vec![(1, 2, "L2", "L4"), (1, 3, "L2", "L4"), (2, 3, "L2", "L4"), (3, 2, "L2", "L4"), (1, 2, "L(p=2,q=3)", "L(p=5,q=inf,ainf=1)")];
    let entire = entire_cases
        .par_iter()
        .map(|&(m, n, xs, ys)| {
            let fam = ConstructionFamily::Entire { m, n, samples: entire_family(&[1, 4, 16, 64]) };
            verify_construction_bounds(&fam, &space(xs), &space(ys), opts).map(|r| (m, n, xs, ys, r))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut checks = Vec::new();
    let mut details = Vec::new();
    for (m, n, xs, ys, rep) in &entire {
        let tag = format!("entire m={m} n={n} {xs}->{ys}");
        checks.push(Check::new(format!("{tag}: c_x spread"), spread(rep.c_x_range), STABILITY_LIMIT));
        checks.push(Check::new(format!("{tag}: c_y spread"), spread(rep.c_y_range), STABILITY_LIMIT));
        let lebesgue = space(xs).is_lebesgue() && space(ys).is_lebesgue();
        if lebesgue {
            let u_excess = rep.rows.iter().map(|r| r.u_norm_x.0 / (rep.u_bound_factor * r.f_norm_x)).fold(0.0, f64::max);
            checks.push(Check::new(format!("{tag}: u norm / explicit bound"), u_excess, 1.0 + 1e-9));
            checks.push(Check::new(format!("{tag}: c_y / explicit bound"), rep.c_y_range.1 / rep.c_y_bound, 1.0));
            if let Some(b) = rep.c_x_bound {
                checks.push(Check::new(format!("{tag}: c_x / explicit bound"), rep.c_x_range.1 / b, 1.0 + 1e-6));
            }
        }
        details.push(json!({
            "kind": "entire", "m": m, "n": n, "X": xs, "Y": ys,
            "c_x_range": [num(rep.c_x_range.0), num(rep.c_x_range.1)],
            "c_y_range": [num(rep.c_y_range.0), num(rep.c_y_range.1)],
            "c_y_bound": num(rep.c_y_bound),
        }));
    }
    let (x, y) = (space("L2").on(IntervalDomain::UnitInterval)?, space("L6").on(IntervalDomain::UnitInterval)?);
    for (m, n, alpha) in [(1, 2, qi(0)), (2, 3, qi(1)), (1, 3, q(5, 2))] {
        let fam = ConstructionFamily::Ball { m, n, alpha: alpha.clone(), samples: ball_family() };
        let rep = verify_construction_bounds(&fam, &x, &y, opts)?;
        let tag = format!("ball m={m} n={n} alpha={alpha}");
        let u_excess = rep.rows.iter().map(|r| r.u_norm_x.0 / (rep.u_bound_factor * r.f_norm_x)).fold(0.0, f64::max);
        checks.push(Check::new(format!("{tag}: u norm / explicit bound"), u_excess, 1.0 + 1e-9));
        checks.push(Check::new(format!("{tag}: c_y / explicit bound"), rep.c_y_range.1 / rep.c_y_bound, 1.0));
        checks.push(Check::flag(format!("{tag}: finite ratios"), rep.rows.iter().all(|r| r.c_x.is_finite() && r.c_y.is_finite())));
        details.push(json!({
            "kind": "ball", "m": m, "n": n, "alpha": alpha.to_string(),
            "c_x_range": [num(rep.c_x_range.0), num(rep.c_x_range.1)],
            "c_y_range": [num(rep.c_y_range.0), num(rep.c_y_range.1)],
            "c_y_bound": num(rep.c_y_bound),
        }));
    }
    Ok((checks, Value::Array(details)))
}

/// Cones and tents in several dimensions and exponents.
fn radial_lemma_suite() -> Result<(Vec<Check>, Value), CliError> {
    let samples = [
        RadialSample::cone(1.0, 1.0)?,
        RadialSample::cone(5.0, 2.0)?,
        RadialSample::tent(4.0, 1.0, 1.0)?,
        RadialSample::tent(30.0, 5.0, 3.0)?,
        RadialSample::new(vec![(0.0, 2.0), (1.0, 1.5), (8.0, 0.25), (20.0, 0.0)])?,
    ];
    let mut checks = Vec::new();
    let mut details = Vec::new();
    for n in [2, 3, 4] {
        for p in [1.0, 2.0, 3.0] {
            let mut worst: f64 = 0.0;
            for u in &samples {
                let rep = verify_radial_lemma(u, p, n)?;
                worst = worst.max(rep.constant / rep.reference);
            }
            checks.push(Check::new(format!("n={n} p={p}: constant / reference"), worst, 1.0 + 1e-9));
            details.push(json!({"n": n, "p": p, "worst_ratio": num(worst)}));
        }
    }
    Ok((checks, Value::Array(details)))
}

/// Tent profiles pushed outwards; the tail inequality ratio against the proof envelope.
fn tail_estimate_suite(cfg: &RunConfig) -> Result<(Vec<Check>, Value), CliError> {
    let search = SearchOptions { families: vec![CandidateFamily::flat_default()], certificate: true };
    let radii: Vec<Q> = [1, 2, 4, 8, 16, 32, 64].iter().map(|&r| qi(r)).collect();
    let (x, y) = (space("L2"), space("L4"));
    let mut checks = Vec::new();
    let mut details = Vec::new();
    for n in [2u32, 3] {
        let tents = [
            RadialSample::tent(4.0, 2.0, 1.0)?,
            RadialSample::tent(10.0, 2.0, 5.0)?,
            RadialSample::tent(40.0, 10.0, 1.0)?,
            RadialSample::cone(3.0, 1.0)?,
        ];
        let mut worst: f64 = 0.0;
        for u in &tents {
            let rep = verify_tail_estimate(u, &x, &y, n, &radii, &search, cfg.envelope)?;
            worst = worst.max(rep.max_certified_ratio);
            let inside_zero = rep.rows.iter().filter(|r| r.radius >= u.outer_radius()).all(|r| r.lhs == 0.0);
            checks.push(Check::flag(format!("n={n} tent r_out={}: zero outside support", u.outer_radius()), inside_zero));
        }
        let env = tail_envelope(n);
        checks.push(Check::new(format!("n={n}: max ratio / envelope"), worst / env, 1.0));
        details.push(json!({"n": n, "max_ratio": num(worst), "envelope": num(env)}));
    }
    Ok((checks, Value::Array(details)))
}

/// Symbolic tail-decay verdicts against numerical limit classification on the shipped matrix.
fn tail_matrix_suite() -> Result<(Vec<Check>, Value), CliError> {
    let grid = matrix::default_grid();
    let outcomes = matrix::shipped()
        .par_iter()
        .map(|p| matrix::evaluate(p, &grid))
        .collect::<Result<Vec<_>, _>>()?;
    let false_vanishing = outcomes.iter().filter(|o| !o.symbolic && o.class == LimitClass::Vanishing).count();
    let clear_true: Vec<_> = outcomes.iter().filter(|o| o.symbolic && !o.near_boundary).collect();
    let clear_hits = clear_true.iter().filter(|o| o.class == LimitClass::Vanishing).count();
    let miss_rate = if clear_true.is_empty() { 0.0 } else { 1.0 - clear_hits as f64 / clear_true.len() as f64 };
    let checks = vec![
        Check::new("pairs disagreeing with the symbolic verdict", outcomes.iter().filter(|o| !o.agrees()).count() as f64, 0.0),
        Check::new("vanishing where symbolically false", false_vanishing as f64, 0.0),
        Check::new("missed vanishing on clear true cases (fraction)", miss_rate, 0.1),
    ];
    let rows = outcomes
        .iter()
        .map(|o| {
            json!({
                "source": o.source,
                "target": o.target,
                "symbolic": o.symbolic,
                "numeric": format!("{:?}", o.class),
                "slope": num(o.exponent),
                "near_boundary": o.near_boundary,
                "agrees": o.agrees(),
            })
        })
        .collect();
    Ok((checks, Value::Array(rows)))
}
