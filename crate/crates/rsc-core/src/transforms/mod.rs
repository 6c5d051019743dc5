//! Integral operators on step functions: the Copson-type reduction operator, the
//! averaging operator over equal intervals, `T_{α,β}`, and the tail-cut bound.

mod enclosure;
mod tail;

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::math::{exp, ln, powf};
use crate::rational::{to_f64, Q};
use crate::spaces::SpaceError;
use crate::stepfn::{IntervalDomain, PiecewiseFn, StepFnError};

pub use enclosure::{Enclosure, EnvelopeOptions, FloatStep};
pub use tail::{tail_cut_bound, weighted_tail_majorant, TailCutBound};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("intervals must be nonoverlapping with a common positive length")]
    BadIntervals,
    #[error("envelope refinement needs more than {0} pieces")]
    ResourceExhausted(usize),
    #[error("invalid operator parameters: {0}")]
    InvalidParams(&'static str),
    #[error("operator expects a function on {0:?}")]
    WrongDomain(IntervalDomain),
    #[error(transparent)]
    StepFn(#[from] StepFnError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Order `m`, dimension `n` and weight exponent `α` of the reduction operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CopsonParams {
    m: u32,
    n: u32,
    alpha: Q,
}

impl CopsonParams {
    pub fn new(m: u32, n: u32, alpha: Q) -> Result<Self, TransformError> {
        if m < 1 {
            return Err(TransformError::InvalidParams("m must be at least 1"));
        }
        if n < 2 {
            return Err(TransformError::InvalidParams("n must be at least 2"));
        }
        if alpha.is_negative() {
            return Err(TransformError::InvalidParams("alpha must be nonnegative"));
        }
        Ok(CopsonParams { m, n, alpha })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> &Q {
        &self.alpha
    }

    /// `m/n`, the exponent in the kernel `s^{−1+m/n}`.
    pub fn mu(&self) -> Q {
        Q::new(self.m.into(), self.n.into())
    }

    /// `n/(n+α)`, the power applied to `t` in the lower limit.
    pub fn lower_limit_power(&self) -> Q {
        let n = Q::from_integer(self.n.into());
        &n / (&n + &self.alpha)
    }
}

/// `R(s) = ∫_s^1 f(σ) σ^{μ−1} dσ` for a step function `f` on `(0,1)`, closed form per piece.
#[derive(Debug, Clone)]
pub(crate) struct RightIntegral {
    /// `0 = k_0 < k_1 < … < k_N = 1`.
    knots: Vec<f64>,
    values: Vec<f64>,
    /// `cum[i] = R(k_i)`.
    cum: Vec<f64>,
    mu: f64,
}

impl RightIntegral {
    pub fn new(f: &PiecewiseFn, mu: f64) -> Self {
        let mut knots = Vec::with_capacity(f.breaks().len() + 2);
        let mut values = Vec::with_capacity(f.breaks().len() + 1);
        knots.push(0.0);
        for p in f.pieces() {
            let end = p.end.as_ref().map(to_f64).unwrap_or(1.0).min(1.0);
            knots.push(end);
            values.push(to_f64(&p.value));
        }
        let mut cum = alloc::vec![0.0; knots.len()];
        for i in (0..values.len()).rev() {
            let mass = if values[i] == 0.0 { 0.0 } else { values[i] * Self::power_diff(mu, knots[i], knots[i + 1]) };
            cum[i] = cum[i + 1] + mass;
        }
        RightIntegral { knots, values, cum, mu }
    }

    /// `∫_x^y σ^{μ−1} dσ`.
    fn power_diff(mu: f64, x: f64, y: f64) -> f64 {
        if x == 0.0 {
            return if mu > 0.0 { powf(y, mu) / mu } else { f64::INFINITY };
        }
        (powf(y, mu) - powf(x, mu)) / mu
    }

    fn piece_index(&self, s: f64) -> usize {
        let i = self.knots.partition_point(|&k| k <= s);
        i.saturating_sub(1).min(self.values.len() - 1)
    }

    pub fn eval(&self, s: f64) -> f64 {
        if s >= 1.0 {
            return 0.0;
        }
        let i = self.piece_index(s);
        let v = self.values[i];
        let tail = self.cum[i + 1];
        if v == 0.0 {
            return tail;
        }
        tail + v * Self::power_diff(self.mu, s, self.knots[i + 1])
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }
}

/// Geometric base grid `2^{-j}` together with extra points, sorted and deduplicated in `[0,1]`.
fn base_grid(extra: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut g: Vec<f64> = (0..48).map(|j| powf(2.0, -(j as f64))).collect();
    g.push(0.0);
    g.extend(extra.into_iter().filter(|x| *x > 0.0 && *x < 1.0));
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

fn require_unit(f: &PiecewiseFn) -> Result<(), TransformError> {
    if f.domain() != IntervalDomain::UnitInterval {
        return Err(TransformError::WrongDomain(IntervalDomain::UnitInterval));
    }
    Ok(())
}

/// The reduction operator `t ↦ ∫_{t^{n/(n+α)}}^1 f(s) s^{−1+m/n} ds` on `(0,1)`.
#[derive(Debug, Clone)]
pub struct Copson {
    right: RightIntegral,
    k: f64,
}

impl Copson {
    pub fn new(f: &PiecewiseFn, params: &CopsonParams) -> Result<Self, TransformError> {
        require_unit(f)?;
        Ok(Copson { right: RightIntegral::new(f, to_f64(&params.mu())), k: to_f64(&params.lower_limit_power()) })
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.right.eval(powf(t, self.k))
    }

    /// Value at `0+`, the supremum.
    pub fn sup(&self) -> f64 {
        self.right.eval(0.0)
    }

    /// The output is nonincreasing, so each cell is bracketed by its endpoint values.
    pub fn enclosure(&self, opts: EnvelopeOptions) -> Result<Enclosure, TransformError> {
        let images = self.right.knots().iter().map(|&s| powf(s, 1.0 / self.k));
        let grid = base_grid(images);
        Enclosure::refine(&grid, |t0, t1| (self.eval(t1), self.eval(t0)), opts)
    }
}

/// Enclosure of the reduction operator applied to `f ≥ 0`.
pub fn copson(f: &PiecewiseFn, params: &CopsonParams, opts: EnvelopeOptions) -> Result<Enclosure, TransformError> {
    Copson::new(f, params)?.enclosure(opts)
}

/// `T_{α,β} f(t) = t^β ∫_t^1 f(s) s^{−1+α} ds` on `(0,1)`, `α ≠ 0`, `β ≥ max{0, −α}`.
#[derive(Debug, Clone)]
pub struct TAlphaBeta {
    right: RightIntegral,
    a: f64,
    b: f64,
    b_is_zero: bool,
    a_plus_b_is_zero: bool,
}

impl TAlphaBeta {
    pub fn new(f: &PiecewiseFn, a: &Q, b: &Q) -> Result<Self, TransformError> {
        require_unit(f)?;
        if a.is_zero() {
            return Err(TransformError::InvalidParams("alpha must be nonzero"));
        }
        if b.is_negative() || (a + b).is_negative() {
            return Err(TransformError::InvalidParams("beta must be at least max(0, -alpha)"));
        }
        Ok(TAlphaBeta {
            right: RightIntegral::new(f, to_f64(a)),
            a: to_f64(a),
            b: to_f64(b),
            b_is_zero: b.is_zero(),
            a_plus_b_is_zero: (a + b).is_zero(),
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return self.at_zero();
        }
        powf(t, self.b) * self.right.eval(t)
    }

    /// On a piece where `f ≡ v` the output is `t^β (K − (v/α) t^α)`.
    fn piece_form(&self, i: usize) -> (f64, f64) {
        let v = self.right.values[i];
        let y = self.right.knots[i + 1];
        let k = self.right.cum[i + 1] + v * powf(y, self.a) / self.a;
        (k, v)
    }

    fn at_zero(&self) -> f64 {
        let (k, v) = self.piece_form(0);
        let first = if self.b_is_zero { k } else { 0.0 };
        let second = if self.a_plus_b_is_zero { v / self.a } else { 0.0 };
        first - second
    }

    /// `(inf, sup)` over `[t0, t1]`, which must not straddle a breakpoint of `f`.
    fn cell_bounds(&self, t0: f64, t1: f64) -> (f64, f64) {
        let i = self.right.piece_index(0.5 * (t0 + t1));
        let mut lo = self.eval(t0).min(self.eval(t1));
        let mut hi = self.eval(t0).max(self.eval(t1));
        if let Some(t) = self.critical_point(i) {
            if t0 < t && t < t1 {
                let v = self.eval(t);
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
        (lo, hi)
    }

    /// Zero of `d/dt [t^β (K − (v/α) t^α)]`: `t^α = βKα / (v(α+β))`.
    fn critical_point(&self, i: usize) -> Option<f64> {
        let (k, v) = self.piece_form(i);
        if v == 0.0 || self.b_is_zero || self.a_plus_b_is_zero {
            return None;
        }
        let ta = self.b * k * self.a / (v * (self.a + self.b));
        if ta <= 0.0 {
            return None;
        }
        Some(exp(ln(ta) / self.a))
    }

    /// `‖T f‖_{L¹(0,1)} = Σ v_i (y^{α+β+1} − x^{α+β+1}) / ((β+1)(α+β+1))` by Fubini.
    pub fn l1_norm(&self) -> f64 {
        let e = self.a + self.b + 1.0;
        let r = &self.right;
        (0..r.values.len())
            .map(|i| r.values[i] * (powf(r.knots[i + 1], e) - powf(r.knots[i], e)))
            .sum::<f64>()
            / ((self.b + 1.0) * e)
    }

    /// `sup_{(0,1)} T f` from the endpoint and critical values on each piece of `f`.
    pub fn sup_norm(&self) -> f64 {
        let r = &self.right;
        let mut best = self.at_zero();
        for i in 0..r.values.len() {
            best = best.max(self.cell_bounds(r.knots[i], r.knots[i + 1]).1);
        }
        best
    }

    pub fn enclosure(&self, opts: EnvelopeOptions) -> Result<Enclosure, TransformError> {
        let grid = base_grid(self.right.knots().iter().copied());
        Enclosure::refine(&grid, |t0, t1| self.cell_bounds(t0, t1), opts)
    }
}

/// Enclosure of `T_{α,β} f`.
pub fn t_alpha_beta(f: &PiecewiseFn, a: &Q, b: &Q, opts: EnvelopeOptions) -> Result<Enclosure, TransformError> {
    TAlphaBeta::new(f, a, b)?.enclosure(opts)
}

/// Checks that the intervals have a common positive length and pairwise disjoint interiors;
/// returns that length.
fn common_length(intervals: &[(Q, Q)]) -> Result<Q, TransformError> {
    let Some((a0, b0)) = intervals.first() else {
        return Err(TransformError::BadIntervals);
    };
    let delta = b0 - a0;
    if !delta.is_positive() || intervals.iter().any(|(a, b)| b - a != delta || a.is_negative()) {
        return Err(TransformError::BadIntervals);
    }
    let mut sorted: Vec<&(Q, Q)> = intervals.iter().collect();
    sorted.sort_by(|x, y| x.0.cmp(&y.0));
    if sorted.windows(2).any(|w| w[0].1 > w[1].0) {
        return Err(TransformError::BadIntervals);
    }
    Ok(delta)
}

fn integral_over(g: &PiecewiseFn, a: &Q, b: &Q) -> Result<Q, TransformError> {
    Ok(g.restrict(a, Some(b))?.integral()?)
}

fn sum_of_blocks(domain: IntervalDomain, blocks: Vec<(&Q, &Q, Q)>) -> Result<PiecewiseFn, TransformError> {
    let mut out = PiecewiseFn::zero(domain);
    for (a, b, v) in blocks {
        if v.is_zero() {
            continue;
        }
        out = out.add(&PiecewiseFn::indicator_scaled(domain, a, Some(b), v)?)?;
    }
    Ok(out)
}

/// `Σ_{j=1}^{M} χ_{I_j} (1/δ) ∫_{I_j ∪ I_{j+1}} g` for `M+1` intervals of common length `δ`,
/// taken in the given order.
pub fn averaging(g: &PiecewiseFn, intervals: &[(Q, Q)]) -> Result<PiecewiseFn, TransformError> {
    let delta = common_length(intervals)?;
    let masses: Vec<Q> = intervals.iter().map(|(a, b)| integral_over(g, a, b)).collect::<Result<_, _>>()?;
    let blocks = intervals
        .windows(2)
        .zip(masses.windows(2))
        .map(|(iv, m)| (&iv[0].0, &iv[0].1, (&m[0] + &m[1]) / &delta))
        .collect();
    sum_of_blocks(g.domain(), blocks)
}

/// `Σ_j χ_{I_j} (1/δ) ∫_{I_j} h` over all given intervals.
pub fn averaging_core(h: &PiecewiseFn, intervals: &[(Q, Q)]) -> Result<PiecewiseFn, TransformError> {
    let delta = common_length(intervals)?;
    let blocks = intervals
        .iter()
        .map(|(a, b)| Ok((a, b, integral_over(h, a, b)? / &delta)))
        .collect::<Result<_, TransformError>>()?;
    sum_of_blocks(h.domain(), blocks)
}
