//! The radial function vanishing near the origin whose `Y` norm controls the tail of a
//! given nonincreasing step function.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::math::{factorial, powf};
use crate::rational::{to_f64, Q};
use crate::stepfn::{IntervalDomain, MonotoneStepFn};
use crate::transforms::{Enclosure, EnvelopeOptions};

use super::{CutoffSpec, WitnessError};

/// `u(x) = η(ω_n^{1/n}|x|)·v_m(ω_n^{1/n}|x|)` with
/// `v_m(r) = (1/m!) Σ_j γ_j (1 − r/b_j^{1/n})_+^m`, stored through its exact data `(γ_j, b_j)`.
///
/// In the measure coordinate `t = ω_n|x|^n` the profile is `η(t^{1/n}) v_m(t^{1/n})`.
#[derive(Debug, Clone, PartialEq)]
pub struct EntireProfile {
    m: u32,
    n: u32,
    a: Q,
    /// `(γ_j, b_j)` with `γ_j > 0` and `a ≤ b_1 < … < b_M`.
    terms: Vec<(Q, Q)>,
    /// `(γ_j, b_j^{1/n}, b_j)` in binary64.
    radii: Vec<(f64, f64, f64)>,
    cutoff: CutoffSpec,
}

/// Builds `u_{f,a}` from a nonincreasing step function with bounded support on `(0,∞)`.
///
/// `f` is first replaced by `f(a+)` on `(0,a)`, which leaves it unchanged on `(a,∞)` and
/// does not increase any norm; the level decomposition then starts at or after `a`.
pub fn build_u_fa(f: &MonotoneStepFn, a: &Q, m: u32, n: u32) -> Result<EntireProfile, WitnessError> {
    let f = f.as_fn();
    if f.domain() != IntervalDomain::HalfLine {
        return Err(WitnessError::BadInput("f must live on (0,inf)"));
    }
    if !f.has_bounded_support() {
        return Err(WitnessError::BadInput("f must have bounded support"));
    }
    let cutoff = CutoffSpec::new(a, m, n)?;

    // Levels of the flattened function right of `a`: (end, value) with values decreasing.
    let mut levels: Vec<(Q, Q)> = Vec::new();
    for p in f.pieces() {
        let Some(end) = p.end else { break };
        if end <= *a || p.value.is_zero() {
            continue;
        }
        match levels.last_mut() {
            Some(last) if last.1 == p.value => last.0 = end,
            _ => levels.push((end, p.value)),
        }
    }
    let mut terms = Vec::with_capacity(levels.len());
    for (j, (end, value)) in levels.iter().enumerate() {
        let next = levels.get(j + 1).map(|l| l.1.clone()).unwrap_or_else(Q::zero);
        let gamma = value - next;
        debug_assert!(gamma.is_positive());
        terms.push((gamma, end.clone()));
    }
    let inv_n = 1.0 / n as f64;
    let radii = terms.iter().map(|(g, b)| (to_f64(g), powf(to_f64(b), inv_n), to_f64(b))).collect();
    Ok(EntireProfile { m, n, a: a.clone(), terms, radii, cutoff })
}

impl EntireProfile {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn terms(&self) -> &[(Q, Q)] {
        &self.terms
    }

    pub fn cutoff(&self) -> &CutoffSpec {
        &self.cutoff
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `b_M`, the end of the support in the measure coordinate (0 for the zero profile).
    pub fn support_end(&self) -> Q {
        self.terms.last().map(|t| t.1.clone()).unwrap_or_else(Q::zero)
    }

    /// `g(r) = Σ_j γ_j b_j^{−m/n} χ_(0, b_j^{1/n})(r)`.
    pub fn g(&self, r: f64) -> f64 {
        self.v(0, r)
    }

    /// `v_k(r) = ∫_r^∞ g(τ)(τ − r)^{k−1}/(k−1)! dτ`, with `v_0 = g`.
    pub fn v(&self, k: u32, r: f64) -> f64 {
        let m = self.m as f64;
        let mut sum = 0.0;
        for &(gamma, c, _) in &self.radii {
            if r < c {
                let x = 1.0 - r.max(0.0) / c;
                sum += gamma * powf(c, k as f64 - m) * powf(x, k as f64);
            }
        }
        sum / factorial(k)
    }

    /// Value at radius variable `r = ω_n^{1/n}|x|`.
    pub fn at_radius(&self, r: f64) -> f64 {
        if r <= self.cutoff.r0 {
            return 0.0;
        }
        self.cutoff.eval(r) * self.v(self.m, r)
    }

    /// Value in the measure coordinate `t = ω_n|x|^n`; exactly 0 for `t ≤ a/8`.
    pub fn eval(&self, t: f64) -> f64 {
        if t <= to_f64(&self.cutoff.t0) {
            return 0.0;
        }
        self.at_radius(powf(t, 1.0 / self.n as f64))
    }

    /// Exact-argument form of [`eval`](Self::eval): the vanishing region is decided in `Q`.
    pub fn eval_q(&self, t: &Q) -> f64 {
        if *t <= self.cutoff.t0 {
            return 0.0;
        }
        self.eval(to_f64(t))
    }

    /// The derivative majorant `∫_r^∞ g(τ)τ^{m−1} dτ + g(r)` at `r = t^{1/n}`, set to 0 where
    /// the cutoff and all its derivatives vanish (`t ≤ a/8`).
    pub fn derivative_envelope(&self, t: f64) -> f64 {
        if t <= to_f64(&self.cutoff.t0) {
            return 0.0;
        }
        self.envelope_unclipped(t)
    }

    fn envelope_unclipped(&self, t: f64) -> f64 {
        let m = self.m as f64;
        let e = m / self.n as f64;
        let mut sum = 0.0;
        for &(gamma, _, b) in &self.radii {
            if t < b {
                sum += gamma * (1.0 - powf(t / b, e)) / m + gamma * powf(b, -e);
            }
        }
        sum
    }

    fn base_grid(&self) -> Vec<f64> {
        let start = to_f64(&self.cutoff.t0);
        let end = to_f64(&self.support_end());
        let mut grid = Vec::new();
        grid.push(0.0);
        if end <= start {
            return grid;
        }
        grid.push(start);
        grid.push(to_f64(&self.cutoff.t1));
        let mut t = start;
        while t < end {
            t *= 1.25;
            grid.push(t.min(end));
        }
        grid.extend(self.terms.iter().map(|(_, b)| to_f64(b)));
        grid.retain(|&x| x <= end);
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        grid
    }

    /// Bracket of the profile over `[0, b_M)` in the measure coordinate. `η` is nondecreasing
    /// and `v_m` nonincreasing, so each cell is bracketed by crossed endpoint products.
    pub fn enclosure(&self, opts: EnvelopeOptions) -> Result<Enclosure, WitnessError> {
        let grid = self.base_grid();
        if grid.len() < 2 {
            return Ok(Enclosure::refine(&[0.0, 1.0], |_, _| (0.0, 0.0), opts)?);
        }
        let n = self.n as f64;
        let bounds = |t0: f64, t1: f64| {
            let (r0, r1) = (powf(t0, 1.0 / n), powf(t1, 1.0 / n));
            let lo = if t0 <= to_f64(&self.cutoff.t0) { 0.0 } else { self.cutoff.eval(r0) * self.v(self.m, r1) };
            let hi = if t1 <= to_f64(&self.cutoff.t0) { 0.0 } else { self.cutoff.eval(r1) * self.v(self.m, r0) };
            (lo, hi)
        };
        Ok(Enclosure::refine(&grid, bounds, opts)?)
    }

    /// Bracket of [`derivative_envelope`](Self::derivative_envelope), which is nonincreasing
    /// right of `a/8`.
    pub fn envelope_enclosure(&self, opts: EnvelopeOptions) -> Result<Enclosure, WitnessError> {
        let grid = self.base_grid();
        if grid.len() < 2 {
            return Ok(Enclosure::refine(&[0.0, 1.0], |_, _| (0.0, 0.0), opts)?);
        }
        let start = to_f64(&self.cutoff.t0);
        let bounds = |t0: f64, t1: f64| {
            if t1 <= start {
                (0.0, 0.0)
            } else {
                (self.envelope_unclipped(t1), self.envelope_unclipped(t0))
            }
        };
        Ok(Enclosure::refine(&grid, bounds, opts)?)
    }
}
