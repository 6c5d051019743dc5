//! Norm evaluation on nonincreasing step profiles.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::math::{ell, ell_ell, exp, golden_max, ln, powf};
use crate::rational::{to_f64, ExtRational, Q};
use crate::stepfn::{IntervalDomain, PiecewiseFn};

use super::integral::{PowerLog, Scaled};
use super::{BrokenLog, LZSpace, SpaceError};

/// Precomputed binary64 form of a space, for evaluating many norms against it.
#[derive(Debug, Clone)]
pub struct NormKernel {
    unit: bool,
    /// Power of `t` in the weight; `1/p` for a Lorentz–Zygmund norm.
    power: f64,
    /// `None` for `q = ∞`.
    q: Option<f64>,
    /// Integrands of the `q < ∞` norm below and above `t = 1`.
    lower: Option<PowerLog>,
    upper: Option<PowerLog>,
    a0: f64,
    ainf: f64,
    b0: f64,
    binf: f64,
    plain: bool,
    p_over_q: f64,
}

impl NormKernel {
    pub fn new(space: &LZSpace) -> Self {
        let mut k = NormKernel::weighted(&space.p().recip_q(), space.q(), space.log(), space.double_log(), space.domain());
        k.plain = space.log().is_zero() && space.double_log().is_zero();
        if let (Some(p), Some(q)) = (space.p().finite(), space.q().finite()) {
            k.p_over_q = to_f64(&(p / q));
        }
        k
    }

    /// The functional `g ↦ ‖t^{power − 1/q} ℓ^A(t) ℓℓ^B(t) g(t)‖_{L^q}` applied to profiles
    /// as given (no rearrangement). With `power = 1/p` this is the norm of `L^{p,q,A,B}`;
    /// other powers describe weighted tails such as `t^{1/r−1/p} ℓ^B` against `L^s`.
    pub fn weighted(power: &Q, q: &ExtRational, a: &BrokenLog, b: &BrokenLog, domain: IntervalDomain) -> Self {
        let unit = domain == IntervalDomain::UnitInterval;
        let (lower, upper) = match q.finite() {
            Some(q) => {
                let c = q * power - Q::one();
                let (qa, qb) = (a.scaled(q), b.scaled(q));
                let inf_a = if unit { &qa.zero } else { &qa.inf };
                let inf_b = if unit { &qb.zero } else { &qb.inf };
                (Some(PowerLog::new(&c, &qa.zero, &qb.zero)), Some(PowerLog::new(&c, inf_a, inf_b)))
            }
            None => (None, None),
        };
        let pick = |zero: &Q, inf: &Q| if unit { to_f64(zero) } else { to_f64(inf) };
        NormKernel {
            unit,
            power: to_f64(power),
            q: q.finite().map(to_f64),
            lower,
            upper,
            a0: to_f64(&a.zero),
            ainf: pick(&a.zero, &a.inf),
            b0: to_f64(&b.zero),
            binf: pick(&b.zero, &b.inf),
            plain: false,
            p_over_q: 0.0,
        }
    }

    /// `∫_s^e t^{q/p−1} ℓ^{qA} ℓℓ^{qB} dt`, `+∞` when divergent or past the range of
    /// binary64 (see [`Self::log_weight_integral`]). Only meaningful for `q < ∞`.
    pub fn weight_integral(&self, s: f64, e: f64) -> f64 {
        match self.scaled_weight_integral(s, e) {
            Some(Ok(w)) => w.value(),
            Some(Err(_)) => f64::INFINITY,
            None => f64::NAN,
        }
    }

    /// `ln` of [`Self::weight_integral`]: `−∞` for an empty range, `+∞` when divergent, and
    /// finite for every convergent integral even when the integral itself overflows.
    pub fn log_weight_integral(&self, s: f64, e: f64) -> f64 {
        match self.scaled_weight_integral(s, e) {
            Some(Ok(w)) => w.ln(),
            Some(Err(_)) => f64::INFINITY,
            None => f64::NAN,
        }
    }

    /// `None` for `q = ∞`, `Err` when divergent.
    fn scaled_weight_integral(&self, s: f64, e: f64) -> Option<Result<Scaled, SpaceError>> {
        let (lower, upper) = (self.lower.as_ref()?, self.upper.as_ref()?);
        let e = if self.unit { e.min(1.0) } else { e };
        let mut total = Scaled::ZERO;
        if e <= s {
            return Some(Ok(total));
        }
        if s < 1.0 {
            match lower.scaled_integral(s, e.min(1.0)) {
                Ok(v) => total = total.add(v),
                Err(err) => return Some(Err(err)),
            }
        }
        if e > 1.0 {
            match upper.scaled_integral(s.max(1.0), e) {
                Ok(v) => total = total.add(v),
                Err(err) => return Some(Err(err)),
            }
        }
        Some(Ok(total))
    }

    fn log_weight(&self, t: f64) -> f64 {
        let (a, b) = if t <= 1.0 { (self.a0, self.b0) } else { (self.ainf, self.binf) };
        let mut v = self.power * ln(t);
        if a != 0.0 {
            v += a * ln(ell(t));
        }
        if b != 0.0 {
            v += b * ln(ell_ell(t));
        }
        v
    }

    /// `w(t) = t^{power} ℓ^A(t) ℓℓ^B(t)`.
    pub fn weight(&self, t: f64) -> f64 {
        exp(self.log_weight(t))
    }

    /// `lim_{t→0+} w(t)`.
    fn weight_at_zero(&self) -> f64 {
        if self.power != 0.0 {
            return if self.power > 0.0 { 0.0 } else { f64::INFINITY };
        }
        limit_of_logs(self.a0, self.b0)
    }

    /// `lim_{t→∞} w(t)`.
    fn weight_at_infinity(&self) -> f64 {
        if self.power != 0.0 {
            return if self.power > 0.0 { f64::INFINITY } else { 0.0 };
        }
        limit_of_logs(self.ainf, self.binf)
    }

    /// `sup_{s ≤ t ≤ e} w(t)`; `s = 0` and `e = ∞` mean the one-sided limits.
    ///
    /// With no double-log tier the weight has at most one critical point on each side of 1,
    /// where `ℓ(t) = p·α₀` below 1 and `ℓ(t) = −p·α∞` above, so the supremum is the largest of
    /// the endpoint values, `w(1)` and those critical values. A double-log tier falls back to a
    /// sampled search refined by golden section.
    pub fn sup_weight(&self, s: f64, e: f64) -> f64 {
        let e = if self.unit { e.min(1.0) } else { e };
        let mut best = if s == 0.0 { self.weight_at_zero() } else { self.weight(s) };
        let right = if e == f64::INFINITY { self.weight_at_infinity() } else { self.weight(e) };
        best = best.max(right);
        if s < 1.0 && 1.0 < e {
            best = best.max(self.weight(1.0));
        }
        if best == f64::INFINITY {
            return best;
        }
        let lo_end = e.min(1.0);
        if s < lo_end {
            best = best.max(self.interior_sup(s, lo_end, self.a0, self.b0, true));
        }
        let hi_start = s.max(1.0);
        if hi_start < e {
            best = best.max(self.interior_sup(hi_start, e, self.ainf, self.binf, false));
        }
        best
    }

    fn interior_sup(&self, s: f64, e: f64, a: f64, b: f64, below_one: bool) -> f64 {
        if b == 0.0 {
            if a == 0.0 || self.power == 0.0 {
                return 0.0;
            }
            // 1 + |log t| = ±α/power at the critical point.
            let target = if below_one { a / self.power } else { -a / self.power };
            if target < 1.0 {
                return 0.0;
            }
            let t = if below_one { exp(1.0 - target) } else { exp(target - 1.0) };
            return if s < t && t < e { self.weight(t) } else { 0.0 };
        }
        let lo = ln(s.max(1e-300));
        let hi = ln(e.min(1e300));
        if !(lo < hi) {
            return 0.0;
        }
        const SAMPLES: usize = 96;
        let step = (hi - lo) / SAMPLES as f64;
        let mut best_i = 0;
        let mut best_v = f64::NEG_INFINITY;
        for i in 0..=SAMPLES {
            let v = self.log_weight(exp(lo + step * i as f64));
            if v > best_v {
                best_v = v;
                best_i = i;
            }
        }
        let a_ = lo + step * best_i.saturating_sub(1) as f64;
        let b_ = (lo + step * (best_i + 1) as f64).min(hi);
        let (_, refined) = golden_max(|x| self.log_weight(exp(x)), a_, b_, 100);
        exp(best_v.max(refined))
    }

    /// The functional on a profile given as disjoint pieces `(start, end, value)`, taken as is.
    /// For a norm the pieces must be those of a nonincreasing rearrangement starting at 0.
    pub fn norm_pieces(&self, pieces: &[(f64, f64, f64)]) -> f64 {
        let top = pieces.iter().map(|p| p.2).fold(0.0, f64::max);
        if top <= 0.0 {
            return 0.0;
        }
        match self.q {
            Some(q) => {
                let mut sum = 0.0;
                let mut huge = Vec::new();
                for &(s, e, v) in pieces {
                    if v <= 0.0 {
                        continue;
                    }
                    let Some(Ok(scaled)) = self.scaled_weight_integral(s, e) else {
                        return f64::INFINITY;
                    };
                    let w = scaled.value();
                    if w < f64::INFINITY {
                        sum += powf(v / top, q) * w;
                    } else {
                        huge.push(q * ln(v / top) + scaled.ln());
                    }
                }
                lq_sum(top, q, sum, &huge)
            }
            None => pieces
                .iter()
                .filter(|p| p.2 > 0.0)
                .map(|&(s, e, v)| v * self.sup_weight(s, e))
                .fold(0.0, f64::max),
        }
    }

    /// Norm of a function given by its level sets `(measure, value)` in any order.
    pub fn norm_levels(&self, levels: &[(f64, f64)]) -> f64 {
        let mut sorted: Vec<(f64, f64)> = levels.iter().copied().filter(|l| l.1 > 0.0 && l.0 > 0.0).collect();
        sorted.sort_by(|x, y| y.1.total_cmp(&x.1));
        let mut pieces = Vec::with_capacity(sorted.len());
        let mut t = 0.0;
        for (len, v) in sorted {
            pieces.push((t, t + len, v));
            t += len;
        }
        self.norm_pieces(&pieces)
    }

    /// `Some(q)` for `q < ∞`.
    pub fn exponent(&self) -> Option<f64> {
        self.q
    }

    /// `φ(t) = ‖χ_(0,t)‖`.
    pub fn fundamental(&self, t: f64) -> f64 {
        let t = if self.unit { t.min(1.0) } else { t };
        if t <= 0.0 {
            return 0.0;
        }
        if self.plain {
            return match self.q {
                Some(q) => powf(self.p_over_q, 1.0 / q) * powf(t, self.power),
                None => powf(t, self.power),
            };
        }
        self.norm_pieces(&[(0.0, t, 1.0)])
    }
}

/// A [`NormKernel`] frozen on a fixed list of cells, so that the functional of any step
/// profile on those cells reduces to a weighted sum (or maximum) of its heights.
#[derive(Debug, Clone)]
pub struct CellNorm {
    /// Weight integrals for `q < ∞`, sup weights for `q = ∞`.
    weights: Vec<f64>,
    /// Logarithms of the weights, kept only when some weight integral overflows.
    log_weights: Vec<f64>,
    q: Option<f64>,
}

impl CellNorm {
    pub fn new(kernel: &NormKernel, cells: &[(f64, f64)]) -> Self {
        let mut weights = Vec::with_capacity(cells.len());
        let mut log_weights = Vec::new();
        for &(s, e) in cells {
            if kernel.q.is_none() {
                weights.push(kernel.sup_weight(s, e));
                continue;
            }
            let (w, lw) = match kernel.scaled_weight_integral(s, e) {
                Some(Ok(scaled)) => (scaled.value(), scaled.ln()),
                _ => (f64::INFINITY, f64::INFINITY),
            };
            if w == f64::INFINITY && lw < f64::INFINITY && log_weights.is_empty() {
                // First overflowing cell: logs of the earlier weights are only needed from here on.
                log_weights = weights.iter().map(|&w: &f64| ln(w)).collect();
            }
            if !log_weights.is_empty() {
                log_weights.push(lw);
            }
            weights.push(w);
        }
        CellNorm { weights, log_weights, q: kernel.q }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// The functional of the profile equal to `heights[i]` on cell `i`.
    pub fn norm(&self, heights: &[f64]) -> f64 {
        let top = heights.iter().copied().fold(0.0, f64::max);
        if top <= 0.0 {
            return 0.0;
        }
        match self.q {
            Some(q) => {
                let mut sum = 0.0;
                let mut huge = Vec::new();
                for (i, (&h, &w)) in heights.iter().zip(&self.weights).enumerate() {
                    if h <= 0.0 {
                        continue;
                    }
                    if w < f64::INFINITY {
                        sum += powf(h / top, q) * w;
                    } else {
                        let lw = self.log_weights.get(i).copied().unwrap_or(f64::INFINITY);
                        if lw == f64::INFINITY {
                            return f64::INFINITY;
                        }
                        huge.push(q * ln(h / top) + lw);
                    }
                }
                lq_sum(top, q, sum, &huge)
            }
            None => heights.iter().zip(&self.weights).filter(|(h, _)| **h > 0.0).map(|(h, w)| h * w).fold(0.0, f64::max),
        }
    }
}

/// Limit of `ℓ^a ℓℓ^b` as `ℓ → ∞`.
/// `ln Σ exp(x_i)`, `−∞` for an empty sum.
fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + ln(xs.map(|x| exp(x - m)).sum::<f64>())
}

/// `top·(sum + Σ e^{huge_i})^{1/q}`, where `huge` holds the logarithms of the terms whose
/// weight integral overflows.
fn lq_sum(top: f64, q: f64, sum: f64, huge: &[f64]) -> f64 {
    if huge.is_empty() {
        return top * powf(sum, 1.0 / q);
    }
    let all = huge.iter().copied().chain(core::iter::once(ln(sum)));
    top * exp(log_sum_exp(all) / q)
}

fn limit_of_logs(a: f64, b: f64) -> f64 {
    let sign = if a != 0.0 { a } else { b };
    if sign < 0.0 {
        0.0
    } else if sign > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

/// Nonincreasing rearrangement of `f` as f64 pieces. A positive tail on the half-line becomes
/// a final unbounded piece; levels below it disappear into that piece.
fn decreasing_pieces(f: &PiecewiseFn) -> Result<Vec<(f64, f64, f64)>, SpaceError> {
    let tail = f.tail();
    if f.domain() == IntervalDomain::UnitInterval || tail.is_zero() {
        let star = f.rearrange()?;
        return Ok(star.pieces().into_iter().filter(|p| p.value.is_positive()).map(|p| {
            let end = p.end.as_ref().map(to_f64).unwrap_or(f64::INFINITY);
            (to_f64(&p.start), end, to_f64(&p.value))
        }).collect());
    }
    let mut levels: Vec<(Q, Q)> = f
        .pieces()
        .into_iter()
        .filter(|p| p.value > *tail)
        .map(|p| (p.value.clone(), p.length().expect("only the tail is unbounded")))
        .collect();
    levels.sort_by(|a, b| b.0.cmp(&a.0));
    let mut out = Vec::with_capacity(levels.len() + 1);
    let mut t = Q::zero();
    for (v, len) in levels {
        let next = &t + len;
        out.push((to_f64(&t), to_f64(&next), to_f64(&v)));
        t = next;
    }
    out.push((to_f64(&t), f64::INFINITY, to_f64(tail)));
    Ok(out)
}

/// `‖f‖` in the given space; `+∞` when `f` is not in it.
pub fn lz_norm(f: &PiecewiseFn, space: &LZSpace) -> Result<f64, SpaceError> {
    if f.domain() != space.domain() {
        return Err(SpaceError::DomainMismatch);
    }
    Ok(NormKernel::new(space).norm_pieces(&decreasing_pieces(f)?))
}

/// Norm of a function described by `(measure, value)` level sets.
pub fn lz_norm_of_levels(levels: &[(f64, f64)], space: &LZSpace) -> f64 {
    NormKernel::new(space).norm_levels(levels)
}

/// `φ_X(t) = ‖χ_(0,t)‖_X` for exact `t > 0`. On `(0,1)` arguments past 1 are clamped.
pub fn fundamental_function(space: &LZSpace, t: &Q) -> f64 {
    fundamental_function_f64(space, to_f64(t))
}

pub fn fundamental_function_f64(space: &LZSpace, t: f64) -> f64 {
    NormKernel::new(space).fundamental(t)
}

/// `∫ f·g`, exactly.
pub fn holder_pairing(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<Q, SpaceError> {
    if f.domain() != g.domain() {
        return Err(SpaceError::DomainMismatch);
    }
    Ok(f.mul(g)?.integral()?)
}
