//! Numerical stand-in for "the limit of the estimates is zero".

use alloc::vec::Vec;

use crate::math::{abs, ln};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitDirection {
    ToInfinity,
    ToZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitClass {
    Vanishing,
    Positive,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeResult {
    pub class: LimitClass,
    /// Least-squares slope of `ln estimate` against `ln a` (towards infinity) or `ln(1/a)`
    /// (towards zero), so negative means decay in the limit direction. `NaN` when the grid is
    /// too short to fit.
    pub exponent: f64,
}

const MIN_POINTS: usize = 8;
const MIN_DECADES: f64 = 4.0;

/// Evaluates `estimate` on `grid` and classifies the trend with [`classify`].
pub fn limit_probe(grid: &[f64], mut estimate: impl FnMut(f64) -> f64, direction: LimitDirection) -> ProbeResult {
    let points: Vec<(f64, f64)> = grid.iter().map(|&a| (a, estimate(a))).collect();
    classify(&points, direction)
}

/// Classifies `(a, estimate)` pairs.
///
/// Vanishing needs a fitted slope below `−0.05` and a last value under a tenth of the first.
/// Positive needs the last three values within 5% of each other and above `10^{-3}`
/// (infinite values count as positive), and the second half of the curve must not be falling
/// at every step: slow logarithmic decay looks flat over three points. Anything else, or a
/// grid with fewer than 8 points or spanning less than 4 decades, is inconclusive.
pub fn classify(points: &[(f64, f64)], direction: LimitDirection) -> ProbeResult {
    let inconclusive = ProbeResult { class: LimitClass::Inconclusive, exponent: f64::NAN };
    if points.len() < MIN_POINTS || points.iter().any(|p| !(p.0 > 0.0) || p.1.is_nan()) {
        return inconclusive;
    }
    let mut pts = points.to_vec();
    pts.sort_by(|l, r| l.0.total_cmp(&r.0));
    if direction == LimitDirection::ToZero {
        pts.reverse();
    }
    let span = abs(ln(pts[pts.len() - 1].0) - ln(pts[0].0)) / core::f64::consts::LN_10;
    if span < MIN_DECADES {
        return inconclusive;
    }
    let sign = if direction == LimitDirection::ToInfinity { 1.0 } else { -1.0 };
    let xs: Vec<f64> = pts.iter().map(|p| sign * ln(p.0)).collect();
    let ys: Vec<f64> = pts.iter().map(|p| ln(p.1.max(f64::MIN_POSITIVE).min(f64::MAX))).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let exponent = sxy / sxx;

    let first = pts[0].1;
    let last = pts[pts.len() - 1].1;
    if exponent < -0.05 && last < 0.1 * first {
        return ProbeResult { class: LimitClass::Vanishing, exponent };
    }
    let tail = &pts[pts.len() - 3..];
    let plateau = if tail.iter().all(|p| p.1 == f64::INFINITY) {
        true
    } else {
        let lo = tail.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let hi = tail.iter().map(|p| p.1).fold(0.0, f64::max);
        lo > 1e-3 && hi.is_finite() && hi <= 1.05 * lo
    };
    let half = &pts[pts.len() / 2..];
    let still_falling = half.windows(2).all(|w| w[1].1 < w[0].1 * (1.0 - 1e-6));
    let class = if plateau && !still_falling { LimitClass::Positive } else { LimitClass::Inconclusive };
    ProbeResult { class, exponent }
}

/// `count` points `start·ratio^i`.
pub fn geometric_grid(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut a = start;
    for _ in 0..count {
        out.push(a);
        a *= ratio;
    }
    out
}
