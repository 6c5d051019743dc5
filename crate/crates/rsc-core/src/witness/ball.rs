//! The nonincreasing radial function on a ball whose norm controls the Hardy-type operator
//! of a given bounded function.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::math::{binomial, factorial, integrate, powf};
use crate::rational::{to_f64, Q};
use crate::stepfn::{IntervalDomain, PiecewiseFn};
use crate::transforms::{Enclosure, EnvelopeOptions};

use super::WitnessError;

/// `u(x) = G_m((|x|/R)^n)` on `B_R` with
/// `G_k(s) = (1/(k−1)!) ∫_s^1 f(σ) σ^{−m+m/n} (σ − s)^{k−1} dσ`.
///
/// The measure coordinate on `(B_R, |x|^α dx)` is `t = (|x|/R)^{n+α}`, so the profile there is
/// `G_m(t^{n/(n+α)})`; with `α = 0` it is `G_m` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct BallProfile {
    m: u32,
    n: u32,
    r: Q,
    a: Q,
    f: PiecewiseFn,
    /// End of the support of `f` (`ϱ`).
    rho: Q,
    /// Pieces `(start, end, value)` of `f` with positive value.
    pieces: Vec<(f64, f64, f64)>,
}

/// Builds `u_{f,R,a}` for `f ≥ 0` on `(0,1)` supported in `[0,a)`, `a ∈ (0,1]`, `m < n`.
pub fn build_u_fra(f: &PiecewiseFn, r: &Q, a: &Q, m: u32, n: u32) -> Result<BallProfile, WitnessError> {
    if f.domain() != IntervalDomain::UnitInterval {
        return Err(WitnessError::BadInput("f must live on (0,1)"));
    }
    if !r.is_positive() {
        return Err(WitnessError::BadInput("radius must be positive"));
    }
    if !a.is_positive() || *a > Q::from_integer(1.into()) {
        return Err(WitnessError::BadInput("a must lie in (0,1]"));
    }
    if m < 1 || n < 2 || m >= n {
        return Err(WitnessError::BadInput("need 1 <= m < n"));
    }
    let rho = f.support_end()?;
    if rho > *a {
        return Err(WitnessError::BadInput("support of f must lie inside [0,a)"));
    }
    let pieces = f
        .pieces()
        .into_iter()
        .filter(|p| p.value.is_positive())
        .map(|p| (to_f64(&p.start), p.end.as_ref().map(to_f64).unwrap_or(1.0).min(1.0), to_f64(&p.value)))
        .collect();
    Ok(BallProfile { m, n, r: r.clone(), a: a.clone(), f: f.clone(), rho, pieces })
}

impl BallProfile {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn radius(&self) -> &Q {
        &self.r
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn f(&self) -> &PiecewiseFn {
        &self.f
    }

    /// `ϱ`, the essential supremum of the support of `f`.
    pub fn support_measure(&self) -> &Q {
        &self.rho
    }

    /// `ϱ^{1/n} R`: the profile is positive exactly on the open ball of this radius.
    pub fn support_radius(&self) -> f64 {
        powf(to_f64(&self.rho), 1.0 / self.n as f64) * to_f64(&self.r)
    }

    fn beta(&self) -> f64 {
        let (m, n) = (self.m as f64, self.n as f64);
        -m + m / n
    }

    /// `G_0(s) = f(s) s^{−m+m/n}`.
    fn g0(&self, s: f64) -> f64 {
        self.pieces
            .iter()
            .find(|p| p.0 <= s && s < p.1)
            .map(|p| p.2 * powf(s, self.beta()))
            .unwrap_or(0.0)
    }

    /// `G_k(s)`, `k ≥ 0`. Infinite at `s = 0` when the integral diverges there.
    pub fn g(&self, k: u32, s: f64) -> f64 {
        if k == 0 {
            return self.g0(s);
        }
        if s >= 1.0 {
            return 0.0;
        }
        let s = s.max(0.0);
        let beta = self.beta();
        let mut sum = 0.0;
        for &(x, y, v) in &self.pieces {
            if y <= s {
                continue;
            }
            sum += v * self.kernel_integral(k, beta, x.max(s), y, s);
        }
        sum / factorial(k - 1)
    }

    /// `∫_l^y σ^β (σ − s)^{k−1} dσ` for `0 ≤ s ≤ l < y`, by binomial expansion, or by
    /// quadrature when the expansion would cancel badly.
    fn kernel_integral(&self, k: u32, beta: f64, l: f64, y: f64, s: f64) -> f64 {
        if l == 0.0 {
            // Only s = 0 reaches here; the integrand is σ^{β+k−1}.
            let e = beta + k as f64;
            return if e > 0.0 { powf(y, e) / e } else { f64::INFINITY };
        }
        if k >= 2 && l == s && y - s < 0.5 * s {
            let q = integrate(|x| powf(x, beta) * powf(x - s, (k - 1) as f64), s, y, 0.0, 1e-13, 200);
            return q.value;
        }
        let mut total = 0.0;
        for i in 0..k {
            let e = beta + i as f64 + 1.0;
            let c = binomial(k - 1, i) * powf(-s, (k - 1 - i) as f64);
            total += c * (powf(y, e) - powf(l, e)) / e;
        }
        total.max(0.0)
    }

    /// Value at `|x| = ρ`.
    pub fn at_radius(&self, rho: f64) -> f64 {
        let r = to_f64(&self.r);
        if rho >= r {
            return 0.0;
        }
        self.g(self.m, powf(rho / r, self.n as f64))
    }

    /// Value in the measure coordinate of `(B_R, dx)`.
    pub fn eval(&self, s: f64) -> f64 {
        self.g(self.m, s)
    }

    /// Value in the measure coordinate of `(B_R, |x|^α dx)`.
    pub fn eval_weighted(&self, t: f64, alpha: &Q) -> f64 {
        let n = self.n as f64;
        self.g(self.m, powf(t, n / (n + to_f64(alpha))))
    }

    /// Bracket of the (nonincreasing) profile in the measure coordinate of `(B_R, |x|^α dx)`.
    pub fn enclosure(&self, alpha: &Q, opts: EnvelopeOptions) -> Result<Enclosure, WitnessError> {
        if alpha.is_negative() {
            return Err(WitnessError::BadInput("weight exponent must be nonnegative"));
        }
        let n = self.n as f64;
        let k = (n + to_f64(alpha)) / n;
        let mut grid: Vec<f64> = (0..48).map(|j| powf(2.0, -(j as f64))).collect();
        grid.push(0.0);
        for &(x, y, _) in &self.pieces {
            grid.push(powf(x, k));
            grid.push(powf(y, k));
        }
        let end = powf(to_f64(&self.rho), k);
        if end <= 0.0 {
            return Ok(Enclosure::refine(&[0.0, 1.0], |_, _| (0.0, 0.0), opts)?);
        }
        grid.retain(|&t| t <= end);
        grid.push(end);
        grid.sort_by(f64::total_cmp);
        grid.dedup();
        let bounds = |t0: f64, t1: f64| (self.eval_weighted(t1, alpha), self.eval_weighted(t0, alpha));
        Ok(Enclosure::refine(&grid, bounds, opts)?)
    }

    /// True when `f` vanishes identically.
    pub fn is_zero(&self) -> bool {
        self.rho.is_zero()
    }
}
