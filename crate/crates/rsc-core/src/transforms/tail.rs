//! Upper bound for the tail supremum `sup_{‖f‖_X ≤ 1} ‖f*χ_(a,∞)‖_Y` on the half-line.
//!
//! Write `‖g‖_Y = ‖g* w‖_{L^s}` with `w(t) = t^{1/r−1/s} ℓ^B(t) ℓℓ^{B'}(t)`. Cutting `f*` at `a`
//! gives `sup ≤ φ_Y(a)/φ_X(a) + sup_{‖f‖_X ≤ 1} ‖f* w χ_(a,∞)‖_{L^s}`, and since
//! `f*(t) ≤ ‖f‖_X / φ_X(t)` the last supremum is at most `‖(w/φ_X) χ_(a,∞)‖_{L^s}`.

use crate::math::{exp, golden_max, integrate, ln, powf};
use crate::rational::{to_f64, ExtRational, Q};
use crate::spaces::{LZSpace, NormKernel};
use crate::stepfn::IntervalDomain;

use super::TransformError;

/// The two summands of the tail-cut bound and their sum; any of them may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCutBound {
    pub fundamental_ratio: f64,
    pub weighted_tail: f64,
    pub total: f64,
}

/// Upper bound for the tail supremum at `a > 0`.
pub fn tail_cut_bound(x: &LZSpace, y: &LZSpace, a: &Q) -> Result<TailCutBound, TransformError> {
    if x.domain() != IntervalDomain::HalfLine || y.domain() != IntervalDomain::HalfLine {
        return Err(TransformError::WrongDomain(IntervalDomain::HalfLine));
    }
    let af = to_f64(a);
    if !(af > 0.0) {
        return Err(TransformError::InvalidParams("cut point must be positive"));
    }
    let kx = NormKernel::new(x);
    let ky = NormKernel::new(y);
    let fundamental_ratio = ky.fundamental(af) / kx.fundamental(af);
    let weighted_tail = weighted_tail_majorant(x, y, af);
    Ok(TailCutBound { fundamental_ratio, weighted_tail, total: fundamental_ratio + weighted_tail })
}

/// `‖(w/φ_X) χ_(a,∞)‖_{L^s}`, with `+∞` when the integral (or supremum) is not finite.
///
/// When `X` carries no logarithms, `φ_X(t) = c·t^{1/p}` and the bound is a single
/// power-log integral. Otherwise `φ_X` is evaluated numerically and the integral is summed
/// over growing blocks in `log t`; if it has not settled by `t = e^{700}` the bound is reported
/// as infinite.
pub fn weighted_tail_majorant(x: &LZSpace, y: &LZSpace, a: f64) -> f64 {
    let inv_r = y.p().recip_q();
    let plain_x = x.log().is_zero() && x.double_log().is_zero();
    if plain_x {
        let inv_p = x.p().recip_q();
        let c = match (x.p().finite(), x.q().finite()) {
            (Some(p), Some(q)) => powf(to_f64(&(p / q)), 1.0 / to_f64(q)),
            _ => 1.0,
        };
        let k = NormKernel::weighted(&(&inv_r - &inv_p), y.q(), y.log(), y.double_log(), IntervalDomain::HalfLine);
        return k.norm_pieces(&[(a, f64::INFINITY, 1.0)]) / c;
    }
    let kx = NormKernel::new(x);
    let w = NormKernel::weighted(
        &(&inv_r - &y.q().recip_q()),
        &ExtRational::Infinite,
        y.log(),
        y.double_log(),
        IntervalDomain::HalfLine,
    );
    let log_ratio = |u: f64| {
        let t = exp(u);
        ln(w.weight(t)) - ln(kx.fundamental(t))
    };
    const LOG_T_MAX: f64 = 700.0;
    let u0 = ln(a);
    if u0 >= LOG_T_MAX {
        return f64::INFINITY;
    }
    match y.q().finite() {
        Some(s) => {
            let s = to_f64(s);
            let mut total = 0.0;
            let mut last = f64::INFINITY;
            let mut u = u0;
            let mut len: f64 = 1.0;
            let mut settled = false;
            while u < LOG_T_MAX {
                let hi = (u + len).min(LOG_T_MAX);
                let part = integrate(|v| exp(v + s * log_ratio(v)), u, hi, 0.0, 1e-9, 400).value;
                total += part;
                if part <= 1e-13 * total && part <= last {
                    settled = true;
                    break;
                }
                last = part;
                u = hi;
                len = (len * 2.0).min(64.0);
            }
            if settled && total.is_finite() {
                powf(total, 1.0 / s)
            } else {
                f64::INFINITY
            }
        }
        None => {
            const SAMPLES: usize = 4000;
            let step = (LOG_T_MAX - u0) / SAMPLES as f64;
            let mut best = (0, f64::NEG_INFINITY);
            for i in 0..=SAMPLES {
                let v = log_ratio(u0 + step * i as f64);
                if v > best.1 {
                    best = (i, v);
                }
            }
            if best.0 == SAMPLES {
                return f64::INFINITY;
            }
            let lo = u0 + step * best.0.saturating_sub(1) as f64;
            let hi = u0 + step * (best.0 + 1) as f64;
            let (_, refined) = golden_max(log_ratio, lo, hi, 80);
            exp(best.1.max(refined))
        }
    }
}
