//! Empirical constants of the two constructions over a sample family.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::math::{factorial, powf};
use crate::rational::{to_f64, Q};
use crate::spaces::{lz_norm, LZSpace, NormKernel};
use crate::stepfn::{IntervalDomain, MonotoneStepFn, PiecewiseFn};
use crate::transforms::{copson, t_alpha_beta, CopsonParams, Enclosure, EnvelopeOptions};

use super::{build_u_fa, build_u_fra, WitnessError};

/// Samples for one of the two constructions.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstructionFamily {
    /// `(f, a)` pairs for the entire-space construction.
    Entire { m: u32, n: u32, samples: Vec<(MonotoneStepFn, Q)> },
    /// `(f, R, a)` triples for the ball construction with weight `|x|^α`.
    Ball { m: u32, n: u32, alpha: Q, samples: Vec<(PiecewiseFn, Q, Q)> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    Entire,
    Ball,
}

/// Both inequalities for one sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionRow {
    pub a: f64,
    /// Ball radius; `None` on the entire space.
    pub radius: Option<f64>,
    pub f_norm_x: f64,
    /// Bracket of `‖u‖_X`.
    pub u_norm_x: (f64, f64),
    /// Upper estimate of the norm of the top-order derivative majorant, taken with unit
    /// constants.
    pub derivative_surrogate: f64,
    /// `(‖u‖_X + surrogate) / ‖f‖_X`, with `max{1, R^{−m}}` in the denominator on the ball.
    pub c_x: f64,
    /// `‖χ_(a,∞) f‖_Y` (entire) or the upper bracket of the Hardy-type norm (ball).
    pub lhs_y: f64,
    /// Bracket of `‖u‖_Y`.
    pub u_norm_y: (f64, f64),
    /// `lhs_y / ‖u‖_Y` with the lower bracket of `‖u‖_Y`.
    pub c_y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionReport {
    pub kind: ConstructionKind,
    pub rows: Vec<ConstructionRow>,
    pub c_x_range: (f64, f64),
    pub c_y_range: (f64, f64),
    /// The constant in `‖u‖_X ≤ c‖f‖_X` that the construction itself yields:
    /// `1/m!` (entire) or `n/(m·(m−1)!)` (ball).
    pub u_bound_factor: f64,
    /// Explicit constant for the `Y` inequality that the construction yields when the
    /// dilation operators of `Y` have norm at most their factor (true for Lebesgue spaces):
    /// `4m(m−1)!/((1−2^{−1/n})^{m−1}(1−2^{−m/n}))` (entire) or `2^{α/n+m}(m−1)!` (ball).
    pub c_y_bound: f64,
    /// `c_x` bound from the same argument with unit envelope constants:
    /// `1/m! + 1/m + 1` (entire). `None` on the ball, where it depends on `R`.
    pub c_x_bound: Option<f64>,
}

/// Range over the positive entries; zero ratios come from samples with nothing to compare.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.filter(|&v| v > 0.0).fold((f64::INFINITY, 0.0), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Computes both sides of the norm inequalities of the chosen construction for every sample.
pub fn verify_construction_bounds(
    family: &ConstructionFamily,
    x: &LZSpace,
    y: &LZSpace,
    opts: EnvelopeOptions,
) -> Result<ConstructionReport, WitnessError> {
    match family {
        ConstructionFamily::Entire { m, n, samples } => entire_bounds(*m, *n, samples, x, y, opts),
        ConstructionFamily::Ball { m, n, alpha, samples } => ball_bounds(*m, *n, alpha, samples, x, y, opts),
    }
}

fn require(space: &LZSpace, domain: IntervalDomain) -> Result<(), WitnessError> {
    if space.domain() != domain {
        return Err(WitnessError::BadInput(match domain {
            IntervalDomain::HalfLine => "entire-space checks need spaces on (0,inf)",
            IntervalDomain::UnitInterval => "ball checks need spaces on (0,1)",
        }));
    }
    Ok(())
}

fn entire_bounds(
    m: u32,
    n: u32,
    samples: &[(MonotoneStepFn, Q)],
    x: &LZSpace,
    y: &LZSpace,
    opts: EnvelopeOptions,
) -> Result<ConstructionReport, WitnessError> {
    require(x, IntervalDomain::HalfLine)?;
    require(y, IntervalDomain::HalfLine)?;
    let (kx, ky) = (NormKernel::new(x), NormKernel::new(y));
    let mut rows = Vec::with_capacity(samples.len());
    for (f, a) in samples {
        let u = build_u_fa(f, a, m, n)?;
        let enc = u.enclosure(opts)?;
        let f_norm_x = lz_norm(f.as_fn(), x)?;
        let u_norm_x = enc.norm_bracket(&kx);
        let derivative_surrogate = u.envelope_enclosure(opts)?.norm_bracket(&kx).1;
        let lhs_y = lz_norm(&f.as_fn().restrict(a, None)?, y)?;
        let u_norm_y = enc.norm_bracket(&ky);
        rows.push(ConstructionRow {
            a: to_f64(a),
            radius: None,
            f_norm_x,
            u_norm_x,
            derivative_surrogate,
            c_x: ratio(u_norm_x.1 + derivative_surrogate, f_norm_x),
            lhs_y,
            u_norm_y,
            c_y: ratio(lhs_y, u_norm_y.0),
        });
    }
    let (mf, nf) = (m as f64, n as f64);
    let c_y_bound = 4.0 * mf * factorial(m - 1)
        / (powf(1.0 - powf(2.0, -1.0 / nf), mf - 1.0) * (1.0 - powf(2.0, -mf / nf)));
    Ok(ConstructionReport {
        kind: ConstructionKind::Entire,
        c_x_range: range(rows.iter().map(|r| r.c_x)),
        c_y_range: range(rows.iter().map(|r| r.c_y)),
        rows,
        u_bound_factor: 1.0 / factorial(m),
        c_y_bound,
        c_x_bound: Some(1.0 / factorial(m) + 1.0 / mf + 1.0),
    })
}

fn ball_bounds(
    m: u32,
    n: u32,
    alpha: &Q,
    samples: &[(PiecewiseFn, Q, Q)],
    x: &LZSpace,
    y: &LZSpace,
    opts: EnvelopeOptions,
) -> Result<ConstructionReport, WitnessError> {
    require(x, IntervalDomain::UnitInterval)?;
    require(y, IntervalDomain::UnitInterval)?;
    if alpha.is_negative() {
        return Err(WitnessError::BadInput("weight exponent must be nonnegative"));
    }
    let (kx, ky) = (NormKernel::new(x), NormKernel::new(y));
    let params = CopsonParams::new(m, n, alpha.clone())?;
    let mn = Q::new((m as i64).into(), (n as i64).into());
    let mut rows = Vec::with_capacity(samples.len());
    for (f, r, a) in samples {
        let u = build_u_fra(f, r, a, m, n)?;
        let f_norm_x = lz_norm(f, x)?;
        let u_norm_x = u.enclosure(&Q::zero(), opts)?.norm_bracket(&kx);
        let rf = to_f64(r);
        let mut surrogate = powf(rf, -(m as f64)) * f_norm_x;
        for j in 1..m {
            for k in j..=m {
                let alpha_jk = &mn - Q::from_integer((j as i64).into());
                let beta_jk = Q::from_integer((j as i64).into()) - Q::new((k as i64).into(), (n as i64).into());
                let enc: Enclosure = t_alpha_beta(f, &alpha_jk, &beta_jk, opts)?;
                surrogate += powf(rf, -(k as f64)) * enc.norm_bracket(&kx).1;
            }
        }
        let lhs_y = copson(f, &params, opts)?.norm_bracket(&ky).1;
        let u_norm_y = u.enclosure(alpha, opts)?.norm_bracket(&ky);
        rows.push(ConstructionRow {
            a: to_f64(a),
            radius: Some(rf),
            f_norm_x,
            u_norm_x,
            derivative_surrogate: surrogate,
            c_x: ratio(u_norm_x.1 + surrogate, f_norm_x * powf(rf, -(m as f64)).max(1.0)),
            lhs_y,
            u_norm_y,
            c_y: ratio(lhs_y, u_norm_y.0),
        });
    }
    let (mf, nf) = (m as f64, n as f64);
    Ok(ConstructionReport {
        kind: ConstructionKind::Ball,
        c_x_range: range(rows.iter().map(|r| r.c_x)),
        c_y_range: range(rows.iter().map(|r| r.c_y)),
        rows,
        u_bound_factor: nf / (mf * factorial(m - 1)),
        c_y_bound: powf(2.0, to_f64(alpha) / nf + mf) * factorial(m - 1),
        c_x_bound: None,
    })
}

/// `‖D_s P‖_X / (max{1,s}·‖P‖_X)` for a bracketed profile `P`, with `D_s P(t) = P(t/s)`
/// truncated to the domain of `X`. The upper bracket is dilated and the lower one is used
/// below, so the result overestimates the true ratio.
pub fn dilation_ratio(enc: &Enclosure, x: &LZSpace, s: f64) -> Result<f64, WitnessError> {
    if !(s > 0.0) {
        return Err(WitnessError::BadInput("dilation factor must be positive"));
    }
    let kx = NormKernel::new(x);
    let end = match x.domain() {
        IntervalDomain::HalfLine => f64::INFINITY,
        IntervalDomain::UnitInterval => 1.0,
    };
    let upper = enc.upper();
    let mut prev = 0.0;
    let mut levels = Vec::with_capacity(upper.ends().len());
    for (&e, &v) in upper.ends().iter().zip(upper.values()) {
        let (lo, hi) = ((prev * s).min(end), (e * s).min(end));
        prev = e;
        if hi > lo {
            levels.push((hi - lo, v));
        }
    }
    let dilated = kx.norm_levels(&levels);
    let base = enc.norm_bracket(&kx).0;
    Ok(ratio(dilated, s.max(1.0) * base))
}
