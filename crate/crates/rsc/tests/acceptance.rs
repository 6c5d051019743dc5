//! Acceptance run: one PASS/FAIL line per criterion, with the measured quantity, its
//! tolerance, and the runtime against its budget. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use rsc::{exit, matrix, random, suites};
use rsc_core::extremal::{classify, suptail, sweep, LimitClass, LimitDirection, SearchOptions};
use rsc_core::rational::{q, qi, to_f64, ExtRational, Q};
use rsc_core::spaces::{fundamental_function, fundamental_function_f64, lz_norm, LZSpace};
use rsc_core::stepfn::{IntervalDomain, MonotoneStepFn, PiecewiseFn};
use rsc_core::transforms::{averaging_core, EnvelopeOptions, TAlphaBeta};
use rsc_core::witness::{
    build_u_fa, tail_envelope, verify_construction_bounds, verify_tail_estimate, ConstructionFamily, RadialSample,
};

type Check = Result<String, String>;

fn space(s: &str) -> LZSpace {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e:?}"))
}

fn cli(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["rsc"];
    argv.extend_from_slice(args);
    let out = rsc::run(argv, None);
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sup_of(f: &PiecewiseFn) -> Q {
    f.values().iter().chain(std::iter::once(f.tail())).max().cloned().unwrap_or_else(|| qi(0))
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

// 1. W^1 L^2 -> L^q on R^3, radial: compact exactly for 2 < q < 6.
fn classical_window() -> Check {
    let mut targets: Vec<(String, Option<Q>)> = (2..=14).map(|k| (format!("L(p={k}/2,q={k}/2)"), Some(q(k, 2)))).collect();
    targets.push(("Linf".into(), None));
    let mut compact = Vec::new();
    for (lit, qv) in &targets {
        let (code, v) = cli(&["decide", "--m", "1", "--n", "3", "--domain", "entire", "--X", "L2", "--Y", lit]);
        let want = qv.as_ref().is_some_and(|x| *x > qi(2) && *x < qi(6));
        let got = v["compact"].as_bool();
        ensure(got == Some(want), || format!("{lit}: compact = {got:?}, expected {want}"))?;
        ensure(code == if want { exit::OK } else { exit::NOT_COMPACT }, || format!("{lit}: exit {code}"))?;
        if want {
            compact.push(lit.clone());
        }
    }
    Ok(format!("{} targets, compact exactly for q in (2,6): {} of them, endpoints 2 and 6 excluded", targets.len(), compact.len()))
}

// 2. Ball in R^3 with weight |x|^2, W^1 L^2 -> L^q: threshold (n+α)p/(n−mp) = 10.
fn weighted_threshold() -> Check {
    let mut qs: Vec<Q> = (2..=24).map(|k| q(k, 2)).collect();
    qs.extend([q(999, 100), q(1001, 100), q(99999, 10000), q(100001, 10000)]);
    qs.sort();
    let mut flip = None;
    let mut prev = None;
    for qv in &qs {
        let lit = format!("L(p={qv},q={qv})");
        let (code, v) = cli(&["decide", "--m", "1", "--n", "3", "--domain", "ball", "--alpha", "2", "--X", "L2", "--Y", &lit]);
        let got = v["compact"].as_bool();
        let want = *qv < qi(10);
        ensure(got == Some(want), || format!("q = {qv}: compact = {got:?}"))?;
        ensure(code == if want { exit::OK } else { exit::NOT_COMPACT }, || format!("q = {qv}: exit {code}"))?;
        if prev == Some(true) && got == Some(false) {
            flip = Some(qv.clone());
        }
        prev = got;
    }
    ensure(flip == Some(qi(10)), || format!("verdict flips at {flip:?}"))?;
    Ok(format!("{} exponents from 1 to 12, verdict flips at q = 10 (compact at 99999/10000, not at 10)", qs.len()))
}

// 3. Optimal rearrangement-invariant targets on the ball.
fn optimal_targets() -> Check {
    let cases = [
        ("0", "L2", "L(r=6,s=2,g=0)"),
        ("2", "L2", "L(r=10,s=2,g=0)"),
        ("0", "L(p=3,q=2)", "L(r=inf,s=2,g=-1)"),
    ];
    for (alpha, x, want) in cases {
        let (code, v) = cli(&["optimal", "--m", "1", "--n", "3", "--alpha", alpha, "--X", x]);
        ensure(code == exit::OK, || format!("{x}: exit {code}"))?;
        let got = v["literal"].as_str().unwrap_or("");
        ensure(got == want, || format!("alpha={alpha} X={x}: {got}, expected {want}"))?;
    }
    Ok("L2 -> L^{6,2} (alpha=0), L2 -> L^{10,2} (alpha=2), L^{3,2} -> L^{inf,2,-1}".into())
}

/// `‖χ_(a,∞) f*‖_4 / ‖f‖_2` for `f` with heights `h[i]` on cells `(t[i−1], t[i])`.
fn l2_l4_tail_ratio(cells: &[(f64, f64)], h: &[f64], a: f64) -> f64 {
    let mut levels: Vec<(f64, f64)> = cells.iter().zip(h).map(|(&(s, e), &v)| (e - s, v.abs())).collect();
    levels.sort_by(|x, y| y.1.total_cmp(&x.1));
    let (mut at, mut tail4, mut norm2) = (0.0, 0.0, 0.0);
    for (len, v) in levels {
        norm2 += len * v * v;
        let end = at + len;
        if end > a {
            tail4 += (end - at.max(a)) * v.powi(4);
        }
        at = end;
    }
    if norm2 == 0.0 {
        0.0
    } else {
        tail4.powf(0.25) / norm2.sqrt()
    }
}

fn golden_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64, iters: usize) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (hi - r * (hi - lo), lo + r * (hi - lo));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

// 4. The search against two 1-D oracles for L2 -> L4, and X = Y estimates near 1.
fn tail_oracles() -> Check {
    let target = 0.5f64.sqrt();
    let a = 1.0;
    // Oracle 1: flat truncations c·χ_(0,b), golden section over ln b.
    let flat = |lb: f64| {
        let b = lb.exp();
        (b - a).max(0.0).powf(0.25) / b.sqrt()
    };
    let (_, golden) = golden_max(a.ln(), (1e3 * a).ln(), flat, 200);
    // Oracle 2: coordinate ascent over 40 heights on a geometric grid, from a constant start.
    let ends: Vec<f64> = (1..=40).map(|i| a * 2f64.powf((i as f64 - 16.0) / 3.0)).collect();
    let cells: Vec<(f64, f64)> = ends.iter().enumerate().map(|(i, &e)| (if i == 0 { 0.0 } else { ends[i - 1] }, e)).collect();
    let mut h = vec![1.0; cells.len()];
    for _ in 0..20 {
        for i in 0..h.len() {
            let top = 4.0 * h.iter().cloned().fold(0.0, f64::max);
            let (best, _) = golden_max(0.0, top, |v| {
                let mut g = h.clone();
                g[i] = v;
                l2_l4_tail_ratio(&cells, &g, a)
            }, 60);
            let mut g = h.clone();
            g[i] = best;
            if l2_l4_tail_ratio(&cells, &g, a) >= l2_l4_tail_ratio(&cells, &h, a) {
                h = g;
            }
        }
    }
    let ascent = l2_l4_tail_ratio(&cells, &h, a);
    ensure((golden - target).abs() <= 1e-6 * target, || format!("golden-section oracle {golden}"))?;
    ensure((ascent - golden).abs() <= 0.02 * golden, || format!("coordinate ascent {ascent} vs {golden}"))?;
    let (x, y) = (space("L2"), space("L4"));
    let est = suptail(&x, &y, &qi(1), &SearchOptions::for_space(&x)).map_err(|e| e.to_string())?.estimate;
    ensure((est - golden).abs() <= 0.02 * golden, || format!("suptail(L2, L4, 1) = {est}, oracle {golden}"))?;
    let mut worst = f64::INFINITY;
    for p in ["L1", "L(p=3/2,q=3/2)", "L2", "L4"] {
        let xp = space(p);
        for a in [qi(1), qi(100), qi(10000)] {
            let t = Instant::now();
            let e = suptail(&xp, &xp, &a, &SearchOptions::for_space(&xp)).map_err(|e| e.to_string())?.estimate;
            ensure(t.elapsed() < Duration::from_secs(10), || format!("{p} at {a}: {:?}", t.elapsed()))?;
            ensure(e >= 0.98, || format!("suptail({p}, {p}, {a}) = {e}"))?;
            worst = worst.min(e);
        }
    }
    Ok(format!(
        "suptail(L2,L4,1) = {est:.6}, golden-section oracle {golden:.6}, coordinate ascent {ascent:.6} (tol 2%); min suptail(Lp,Lp,a) = {worst:.4} >= 0.98"
    ))
}

// 5. The fundamental-ratio floor on 200 random pairs. The scored candidate χ_(0,2a) gives
// estimate ≥ φ_Y(a)/φ_X(2a) for every pair, which implies φ_Y(a)/(2φ_X(a)) exactly when
// φ_X(2a) ≤ 2φ_X(a). Quasi-normed LZ functionals can break that doubling bound, and then
// the floor itself can exceed the true supremum (pinned below with a closed form).
fn floor_on_random_pairs() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pairs: Vec<(LZSpace, LZSpace)> = (0..200)
        .map(|_| (random::lz_space(&mut rng, IntervalDomain::HalfLine), random::lz_space(&mut rng, IntervalDomain::HalfLine)))
        .collect();
    let grid: Vec<Q> = [q(1, 100), qi(100), qi(1_000_000)].into();
    let rows = pairs
        .par_iter()
        .map(|(x, y)| {
            let opts = SearchOptions { certificate: false, ..SearchOptions::for_space(x) };
            grid.iter()
                .map(|a| {
                    let est = suptail(x, y, a, &opts).map_err(|e| format!("{x} -> {y}: {e}"))?.estimate;
                    let (py, px, px2) = (fundamental_function(y, a), fundamental_function(x, a), fundamental_function(x, &(a * qi(2))));
                    let candidate = py / px2;
                    if !(est >= candidate - 1e-9 || est.is_infinite()) {
                        return Err(format!("{x} -> {y} at a={a}: {est} below the candidate score {candidate}"));
                    }
                    let floor = py / (2.0 * px);
                    let doubling = px2 <= 2.0 * px * (1.0 + 1e-12);
                    let below = est < floor - 1e-9;
                    if below && doubling {
                        return Err(format!("{x} -> {y} at a={a}: {est} < {floor} although phi_X(2a) <= 2 phi_X(a)"));
                    }
                    Ok((doubling, below))
                })
                .collect::<Result<Vec<_>, String>>()
        })
        .collect::<Result<Vec<_>, String>>()?;
    let rows: Vec<(bool, bool)> = rows.into_iter().flatten().collect();
    let doubling = rows.iter().filter(|r| r.0).count();
    let exceptions = rows.iter().filter(|r| r.1).count();
    // Exact supremum for X = L(p=3/2,q=inf,a0=-1/2,ainf=1/2), Y = L(p=4,q=inf,a0=-1), a = 1:
    // the unit ball of X has the largest element 1/(t^{2/3}ℓ^A(t)), whose tail has Y-norm
    // 1/(2^{2/3}(1+ln 2)^{1/2}) < 1/2 = φ_Y(1)/(2φ_X(1)).
    let (x, y) = (space("L(p=3/2,q=inf,a0=-1/2,ainf=1/2)"), space("L(p=4,q=inf,a0=-1)"));
    let exact = 1.0 / (2f64.powf(2.0 / 3.0) * (1.0 + 2f64.ln()).sqrt());
    let est = suptail(&x, &y, &qi(1), &SearchOptions::for_space(&x)).map_err(|e| e.to_string())?.estimate;
    ensure((est - exact).abs() <= 1e-9 * exact, || format!("counterexample estimate {est}, exact {exact}"))?;
    Ok(format!(
        "200 pairs x {} cut points: estimate >= candidate score everywhere; floor holds on all {doubling} cases with phi_X(2a) <= 2 phi_X(a); \
         {exceptions} of {} cases below the floor (allowed only without that doubling bound); closed-form counterexample sup {exact:.6} < 0.5 matched",
        grid.len(),
        rows.len()
    ))
}

// 6. Symbolic tail-decay verdict against numerical classification on the shipped matrix.
fn matrix_agreement() -> Check {
    let grid = matrix::default_grid();
    let pairs = matrix::shipped();
    ensure(pairs.len() >= 30, || format!("only {} pairs shipped", pairs.len()))?;
    let outcomes = pairs
        .par_iter()
        .map(|p| matrix::evaluate(p, &grid).map_err(|e| format!("{} -> {}: {e}", p.source, p.target)))
        .collect::<Result<Vec<_>, String>>()?;
    let wrong: Vec<_> = outcomes.iter().filter(|o| !o.symbolic && o.class == LimitClass::Vanishing).collect();
    ensure(wrong.is_empty(), || format!("vanishing where symbolically false: {} -> {}", wrong[0].source, wrong[0].target))?;
    let mismatched = outcomes.iter().filter(|o| o.symbolic != o.expected).count();
    ensure(mismatched == 0, || format!("{mismatched} symbolic verdicts differ from the shipped expectation"))?;
    let clear: Vec<_> = outcomes.iter().filter(|o| o.symbolic && !o.near_boundary).collect();
    let hits = clear.iter().filter(|o| o.class == LimitClass::Vanishing).count();
    ensure(!clear.is_empty() && hits * 10 >= clear.len() * 9, || format!("vanishing on {hits}/{} clear true cases", clear.len()))?;
    Ok(format!(
        "{} pairs: 0 false vanishing, vanishing on {hits}/{} true cases away from boundaries (>= 90%)",
        outcomes.len(),
        clear.len()
    ))
}

// 7. Fundamental ratio decays while the tail supremum does not.
fn ratio_decay_is_not_enough() -> Check {
    let (x, y) = (space("L(p=2,q=inf)"), space("L(p=2,q=1,ainf=-1/2)"));
    let grid: Vec<Q> = (0..=10).map(|k| Q::from_integer(10i64.pow(k).into())).collect();
    let ratios: Vec<(f64, f64)> = grid.iter().map(|a| (to_f64(a), fundamental_function(&y, a) / fundamental_function(&x, a))).collect();
    let slope = log_slope(&ratios);
    ensure(slope < -0.05, || format!("fundamental-ratio slope {slope}"))?;
    let est = sweep(&x, &y, &grid, &SearchOptions::for_space(&x)).map_err(|e| e.to_string())?;
    let points: Vec<(f64, f64)> = est.iter().map(|e| (e.a, e.estimate)).collect();
    let probe = classify(&points, LimitDirection::ToInfinity);
    ensure(probe.class != LimitClass::Vanishing, || format!("tail supremum classified {:?}", probe.class))?;
    Ok(format!(
        "L(p=2,q=inf) -> L(p=2,q=1,ainf=-1/2) over a = 1..1e10: ratio slope {slope:.4} < -0.05, tail supremum {:?} (last estimate {:.4})",
        probe.class,
        points.last().map(|p| p.1).unwrap_or(f64::NAN)
    ))
}

// 8. Averaging core on L1 and L∞ exactly; T_{α,β} against max{1/|α|, 1/(β+1)}.
fn operator_bounds() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..1000 {
        let h = random::step_fn(&mut rng, IntervalDomain::HalfLine, 8);
        let iv = random::intervals(&mut rng);
        let core = averaging_core(&h, &iv).map_err(|e| e.to_string())?;
        ensure(core.integral().unwrap() <= h.integral().unwrap(), || format!("instance {i}: L1 contraction fails"))?;
        ensure(sup_of(&core) <= sup_of(&h), || format!("instance {i}: Linf contraction fails"))?;
    }
    let mut worst = f64::NEG_INFINITY;
    for i in 0..1000 {
        let f = random::step_fn(&mut rng, IntervalDomain::UnitInterval, 6);
        let a = q(rng.gen_range(1..=8) * if rng.gen_bool(0.5) { -1 } else { 1 }, 4);
        let b = if a < qi(0) { -a.clone() } else { qi(0) } + q(rng.gen_range(0..=8), 4);
        let c = (1.0 / to_f64(&a).abs()).max(1.0 / (to_f64(&b) + 1.0));
        let op = TAlphaBeta::new(&f, &a, &b).map_err(|e| e.to_string())?;
        let (n1, ninf) = (to_f64(&f.integral().unwrap()), to_f64(&sup_of(&f)));
        if n1 > 0.0 {
            let v = (op.l1_norm() / (c * n1) - 1.0).max(op.sup_norm() / (c * ninf) - 1.0);
            ensure(v <= 1e-9, || format!("instance {i}: alpha={a} beta={b} relative excess {v}"))?;
            worst = worst.max(v);
        }
    }
    Ok(format!("1000 exact core contractions on L1/Linf; 1000 T bounds, max relative excess {worst:.2e} <= 1e-9"))
}

/// Brute-force `f*` on midpoints of a grid of at least 10^4 cells: all breaks of the random
/// step functions are multiples of 1/24, so cells of width 1/(24k) never straddle one.
fn sorted_samples(f: &PiecewiseFn) -> (f64, Vec<f64>) {
    let end = to_f64(&f.support_end().unwrap());
    let k = (10_000.0 / (24.0 * end)).ceil().max(1.0);
    let width = 1.0 / (24.0 * k);
    let cells = (end / width).round() as usize;
    let breaks: Vec<f64> = f.breaks().iter().map(to_f64).collect();
    let values: Vec<f64> = f.values().iter().map(to_f64).collect();
    let eval = |t: f64| values.get(breaks.partition_point(|&b| b <= t)).copied().unwrap_or(0.0);
    let mut samples: Vec<f64> = (0..cells).map(|i| eval((i as f64 + 0.5) * width)).collect();
    samples.sort_by(|a, b| b.total_cmp(a));
    (width, samples)
}

// 9. Rearrangement engine on 1000 random step functions.
fn rearrangement_engine() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut min_points = usize::MAX;
    for i in 0..1000 {
        let f = random::step_fn(&mut rng, IntervalDomain::HalfLine, 8);
        let star = f.rearrange().map_err(|e| e.to_string())?;
        ensure(star.as_fn().distribution().unwrap() == f.distribution().unwrap(), || format!("instance {i}: distributions differ"))?;
        ensure(star.as_fn().rearrange().unwrap() == star, || format!("instance {i}: not idempotent"))?;
        let (width, samples) = sorted_samples(&f);
        if !f.is_zero() {
            ensure(samples.len() >= 10_000, || format!("instance {i}: only {} oracle points", samples.len()))?;
            min_points = min_points.min(samples.len());
        }
        let sb: Vec<f64> = star.as_fn().breaks().iter().map(to_f64).collect();
        let sv: Vec<f64> = star.as_fn().values().iter().map(to_f64).collect();
        for (j, s) in samples.iter().enumerate() {
            let t = (j as f64 + 0.5) * width;
            let v = sv.get(sb.partition_point(|&b| b <= t)).copied().unwrap_or(0.0);
            ensure(v == *s, || format!("instance {i}: f*({t}) = {v}, sorted samples give {s}"))?;
        }
    }
    Ok(format!("1000 functions: exact equimeasurability and idempotence; sort oracle agrees on >= {min_points} points each"))
}

// 10. ‖D_a f‖ ≤ max{1,a}‖f‖ and φ_{L^p}(t)·φ_{L^{p'}}(t) = t.
fn dilation_and_fundamental() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let spaces: Vec<LZSpace> = ["L1", "L(p=3/2,q=3/2)", "L2", "L4", "Linf", "L(p=2,q=1)", "L(p=3,q=2,ainf=1/6)", "L(p=2,q=2,a0=1,ainf=-1)"]
        .iter()
        .map(|s| space(s))
        .collect();
    let dilations = [q(1, 10), q(1, 2), qi(1), qi(2), q(15, 2), qi(100)];
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..100 {
        let f = random::step_fn(&mut rng, IntervalDomain::HalfLine, 8);
        for a in &dilations {
            let g = f.dilate(a).map_err(|e| e.to_string())?;
            let k = to_f64(a).max(1.0);
            for x in &spaces {
                let (ng, nf) = (lz_norm(&g, x).unwrap(), lz_norm(&f, x).unwrap());
                if nf > 0.0 {
                    let excess = ng / (k * nf) - 1.0;
                    ensure(excess <= 1e-9, || format!("{x}, a={a}: relative excess {excess}"))?;
                    worst = worst.max(excess);
                }
            }
        }
    }
    let mut id_err: f64 = 0.0;
    for p in [q(1, 1), q(5, 4), q(3, 2), qi(2), qi(3), qi(8)] {
        let conj = if p == qi(1) { ExtRational::Infinite } else { ExtRational::Finite(&p / (&p - qi(1))) };
        let (x, xc) = (LZSpace::lebesgue(ExtRational::Finite(p.clone())), LZSpace::lebesgue(conj));
        for k in -60..=60 {
            let t = 2f64.powf(k as f64 / 2.0);
            let e = (fundamental_function_f64(&x, t) * fundamental_function_f64(&xc, t) / t - 1.0).abs();
            ensure(e <= 1e-9, || format!("p={p} t={t}: relative error {e}"))?;
            id_err = id_err.max(e);
        }
    }
    Ok(format!(
        "dilation: 100 functions x {} factors x {} spaces, max relative excess {worst:.2e}; conjugate identity on 2^(-30..30), max error {id_err:.2e} (tol 1e-9)",
        dilations.len(),
        spaces.len()
    ))
}

// 11. Radial constructions: vanishing region, derivative chain, stability, tail estimate.
fn witness_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..200 {
        let f = MonotoneStepFn::new(random::step_fn(&mut rng, IntervalDomain::HalfLine, 8).rearrange().unwrap().into_inner()).unwrap();
        let a = [qi(1), q(5, 2), qi(4), qi(16), qi(64)][i % 5].clone();
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(2..=5));
        let u = build_u_fa(&f, &a, m, n).map_err(|e| e.to_string())?;
        let edge = &a / qi(8);
        for j in 0..=50 {
            let t = &edge * q(j, 50);
            ensure(u.eval_q(&t) == 0.0, || format!("u nonzero at t = {t} < a/8 (a = {a})"))?;
        }
    }
    let mut chain_err: f64 = 0.0;
    for (f, a) in suites::entire_family(&[1, 4, 16, 64]) {
        for (m, n) in [(1, 2), (2, 3), (3, 4)] {
            let u = build_u_fa(&f, &a, m, n).map_err(|e| e.to_string())?;
            let knots: Vec<f64> = u.terms().iter().map(|t| to_f64(&t.1).powf(1.0 / n as f64)).collect();
            let top = knots.iter().cloned().fold(0.0, f64::max);
            for j in 1..=m {
                for s in 1..200 {
                    let r = top * s as f64 / 200.0;
                    if knots.iter().any(|k| (k - r).abs() < 1e-3 * top) {
                        continue;
                    }
                    let h = 1e-6 * r.max(1.0);
                    let fd = (u.v(j, r + h) - u.v(j, r - h)) / (2.0 * h);
                    let exact = -u.v(j - 1, r);
                    let e = if exact == 0.0 { fd.abs() } else { (fd - exact).abs() / exact.abs() };
                    ensure(e < 1e-4, || format!("m={m} j={j} r={r}: {fd} vs {exact}"))?;
                    chain_err = chain_err.max(e);
                }
            }
        }
    }
    let opts = EnvelopeOptions::default();
    let mut spread: f64 = 0.0;
    for (m, n, xs, ys) in [(1, 3, "L2", "L4"), (2, 3, "L2", "L4"), (1, 2, "L1", "L2"), (1, 2, "L(p=2,q=3)", "L(p=5,q=inf,ainf=1)")] {
        let fam = ConstructionFamily::Entire { m, n, samples: suites::entire_family(&[1, 4, 16, 64]) };
        let rep = verify_construction_bounds(&fam, &space(xs), &space(ys), opts).map_err(|e| e.to_string())?;
        for (name, (lo, hi)) in [("c_x", rep.c_x_range), ("c_y", rep.c_y_range)] {
            let s = hi / lo;
            ensure(s.is_finite() && s < 10.0, || format!("m={m} n={n} {xs}->{ys}: {name} spread {s}"))?;
            spread = spread.max(s);
        }
    }
    let search = SearchOptions { families: vec![rsc_core::extremal::CandidateFamily::flat_default()], certificate: true };
    let radii: Vec<Q> = [1, 2, 4, 8, 16, 32, 64].iter().map(|&r| qi(r)).collect();
    let mut tail_ratio: f64 = 0.0;
    for n in [2u32, 3] {
        let tents = [
            RadialSample::tent(4.0, 2.0, 1.0),
            RadialSample::tent(10.0, 2.0, 5.0),
            RadialSample::tent(40.0, 10.0, 1.0),
            RadialSample::cone(3.0, 1.0),
        ];
        for u in tents {
            let u = u.map_err(|e| e.to_string())?;
            let rep = verify_tail_estimate(&u, &space("L2"), &space("L4"), n, &radii, &search, opts).map_err(|e| e.to_string())?;
            let r = rep.max_ratio / tail_envelope(n);
            ensure(r <= 2.0, || format!("n={n}: ratio {} vs envelope {}", rep.max_ratio, tail_envelope(n)))?;
            tail_ratio = tail_ratio.max(r);
        }
    }
    Ok(format!(
        "vanishing region exact on 200 profiles; derivative chain max error {chain_err:.1e} < 1e-4; constant spread over a in {{1,4,16,64}} max {spread:.2} < 10; tail ratio / envelope max {tail_ratio:.3} <= 2"
    ))
}

fn main() {
    let criteria: Vec<(&str, u64, fn() -> Check)> = vec![
        ("first-order Lebesgue window on R^3", 1, classical_window),
        ("weighted ball threshold", 1, weighted_threshold),
        ("optimal ball targets", 1, optimal_targets),
        ("tail supremum against 1-D oracles", 60, tail_oracles),
        ("fundamental-ratio floor on random pairs", 60, floor_on_random_pairs),
        ("symbolic and numeric tail decay agree on the matrix", 300, matrix_agreement),
        ("decaying fundamental ratio without tail decay", 60, ratio_decay_is_not_enough),
        ("averaging and Hardy-type operator bounds", 30, operator_bounds),
        ("rearrangement engine", 10, rearrangement_engine),
        ("dilation bound and conjugate fundamental identity", 10, dilation_and_fundamental),
        ("radial witness constructions", 120, witness_suite),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        let ok = result.is_ok() && !over;
        if !ok {
            failed += 1;
        }
        let detail = match result {
            Ok(d) => d,
            Err(e) => format!("error: {e}"),
        };
        let budget_note = if over { " OVER BUDGET" } else { "" };
        println!(
            "criterion {:>2} {} [{:.2}s / {}s{}] {}: {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget,
            budget_note,
            name,
            detail
        );
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
