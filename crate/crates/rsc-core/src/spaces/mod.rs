//! Lorentz–Zygmund spaces `L^{p,q,A}` (optionally with a double-logarithmic tier `B`):
//! parameters, validity, norms of step functions and fundamental functions.

mod integral;
mod literal;
mod norm;

use core::fmt;

use num_traits::{Signed, Zero};

use crate::math::{ell, ell_ell, powf};
use crate::rational::{to_f64, ExtRational, Q};
use crate::stepfn::{IntervalDomain, StepFnError};

pub use integral::{power_log_integral, Endpoint};
pub use literal::ParseSpaceError;
pub use norm::{CellNorm, fundamental_function, fundamental_function_f64, holder_pairing, lz_norm, lz_norm_of_levels, NormKernel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("integral diverges at {0:?}")]
    DivergentIntegral(Endpoint),
    #[error("integration interval must satisfy 0 <= a <= b")]
    InvalidInterval,
    #[error("invalid Lorentz-Zygmund parameters: {0}")]
    InvalidSpace(&'static str),
    #[error("function and space live on different domains")]
    DomainMismatch,
    #[error(transparent)]
    StepFn(#[from] StepFnError),
}

/// Exponent pair `(e₀, e∞)` of a weight that is `ℓ(t)^{e₀}` on `(0,1]` and `ℓ(t)^{e∞}` on `(1,∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BrokenLog {
    pub zero: Q,
    pub inf: Q,
}

impl BrokenLog {
    pub fn new(zero: Q, inf: Q) -> Self {
        BrokenLog { zero, inf }
    }

    pub fn uniform(e: Q) -> Self {
        BrokenLog { zero: e.clone(), inf: e }
    }

    pub fn is_zero(&self) -> bool {
        self.zero.is_zero() && self.inf.is_zero()
    }

    /// The exponent in force at `t`.
    pub fn exponent_at(&self, t: f64) -> &Q {
        if t <= 1.0 {
            &self.zero
        } else {
            &self.inf
        }
    }

    /// `ℓ(t)^{e}` with `e` chosen by the side of 1 that `t` lies on.
    pub fn eval(&self, t: f64) -> f64 {
        powf(ell(t), to_f64(self.exponent_at(t)))
    }

    /// Same broken exponent applied to `ℓℓ(t) = 1 + log ℓ(t)`.
    pub fn eval_double(&self, t: f64) -> f64 {
        powf(ell_ell(t), to_f64(self.exponent_at(t)))
    }

    fn scaled(&self, k: &Q) -> BrokenLog {
        BrokenLog { zero: &self.zero * k, inf: &self.inf * k }
    }
}

/// Unvalidated parameters of a Lorentz–Zygmund space. [`LZSpace::new`] checks them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LzParams {
    pub p: ExtRational,
    pub q: ExtRational,
    pub a: BrokenLog,
    pub b: BrokenLog,
    pub domain: IntervalDomain,
}

impl LzParams {
    /// `L^{p,q}` on the half-line, no logarithms.
    pub fn lorentz(p: ExtRational, q: ExtRational) -> Self {
        LzParams { p, q, a: BrokenLog::default(), b: BrokenLog::default(), domain: IntervalDomain::HalfLine }
    }

    pub fn with_log(mut self, a: BrokenLog) -> Self {
        self.a = a;
        self
    }

    pub fn with_double_log(mut self, b: BrokenLog) -> Self {
        self.b = b;
        self
    }

    pub fn on(mut self, domain: IntervalDomain) -> Self {
        self.domain = domain;
        self
    }
}

/// Outcome of [`is_valid_ri`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Validity {
    pub valid: bool,
    pub reason: &'static str,
}

impl Validity {
    fn yes(reason: &'static str) -> Self {
        Validity { valid: true, reason }
    }
    fn no(reason: &'static str) -> Self {
        Validity { valid: false, reason }
    }
}

/// Whether the parameters give a functional equivalent to a rearrangement-invariant norm.
///
/// The four admissible regimes are `p = q = 1` with `α₀ ≥ 0 ≥ α∞`, `1 < p < ∞`,
/// `p = ∞ > q` with `α₀ + 1/q < 0`, and `p = q = ∞` with `α₀ ≤ 0`. On `(0,1)` the exponent
/// at infinity plays no role. A nonzero double-log tier only matters where the single-log
/// condition sits on its boundary, and then the same condition is imposed one tier down.
pub fn is_valid_ri(c: &LzParams) -> Validity {
    let one = ExtRational::int(1);
    if c.p < one || c.q < one {
        return Validity::no("p and q must lie in [1, inf]");
    }
    let unit = c.domain == IntervalDomain::UnitInterval;
    let (a0, ainf) = (&c.a.zero, &c.a.inf);
    let (b0, binf) = (&c.b.zero, &c.b.inf);
    match (&c.p, &c.q) {
        (p, q) if p.is_one() && q.is_one() => {
            let zero_ok = a0.is_positive() || (a0.is_zero() && !b0.is_negative());
            let inf_ok = unit || ainf.is_negative() || (ainf.is_zero() && !binf.is_positive());
            if !zero_ok {
                Validity::no("p = q = 1 needs a0 >= 0")
            } else if !inf_ok {
                Validity::no("p = q = 1 needs ainf <= 0")
            } else {
                Validity::yes("p = q = 1 with a0 >= 0 >= ainf")
            }
        }
        (p, _) if p.is_one() => Validity::no("p = 1 requires q = 1"),
        (ExtRational::Finite(_), _) => Validity::yes("1 < p < inf"),
        (ExtRational::Infinite, ExtRational::Finite(q)) => {
            let s = a0 + q.recip();
            let t = b0 + q.recip();
            if s.is_negative() || (s.is_zero() && t.is_negative()) {
                Validity::yes("p = inf > q with a0 + 1/q < 0")
            } else {
                Validity::no("p = inf > q needs a0 + 1/q < 0")
            }
        }
        (ExtRational::Infinite, ExtRational::Infinite) => {
            if a0.is_negative() || (a0.is_zero() && !b0.is_positive()) {
                Validity::yes("p = q = inf with a0 <= 0")
            } else {
                Validity::no("p = q = inf needs a0 <= 0")
            }
        }
    }
}

/// A validated Lorentz–Zygmund space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LZSpace {
    params: LzParams,
}

impl LZSpace {
    pub fn new(params: LzParams) -> Result<Self, SpaceError> {
        let v = is_valid_ri(&params);
        if v.valid {
            Ok(LZSpace { params })
        } else {
            Err(SpaceError::InvalidSpace(v.reason))
        }
    }

    /// Lebesgue `L^p` on the half-line.
    pub fn lebesgue(p: ExtRational) -> Self {
        LZSpace::new(LzParams::lorentz(p.clone(), p)).expect("L^p is valid for p >= 1")
    }

    pub fn lorentz(p: ExtRational, q: ExtRational) -> Result<Self, SpaceError> {
        LZSpace::new(LzParams::lorentz(p, q))
    }

    /// Unweighted `L^{p,q,α}` on `(0,1)`.
    pub fn unit(p: ExtRational, q: ExtRational, alpha: Q) -> Result<Self, SpaceError> {
        LZSpace::new(LzParams::lorentz(p, q).with_log(BrokenLog::uniform(alpha)).on(IntervalDomain::UnitInterval))
    }

    pub fn params(&self) -> &LzParams {
        &self.params
    }

    pub fn p(&self) -> &ExtRational {
        &self.params.p
    }

    pub fn q(&self) -> &ExtRational {
        &self.params.q
    }

    pub fn log(&self) -> &BrokenLog {
        &self.params.a
    }

    pub fn double_log(&self) -> &BrokenLog {
        &self.params.b
    }

    pub fn domain(&self) -> IntervalDomain {
        self.params.domain
    }

    /// Same parameters on another domain, if still valid there.
    pub fn on(&self, domain: IntervalDomain) -> Result<Self, SpaceError> {
        LZSpace::new(self.params.clone().on(domain))
    }

    /// True when `p = q` and there are no logarithms.
    pub fn is_lebesgue(&self) -> bool {
        self.params.p == self.params.q && self.params.a.is_zero() && self.params.b.is_zero()
    }

    /// `L^∞` (on either domain).
    pub fn is_linf(&self) -> bool {
        self.is_lebesgue() && self.params.p.is_infinite()
    }

    /// True when the functional is a norm and not merely equivalent to one. For `q ≥ 1` that
    /// happens exactly when the weight `t^{1/p−1/q} ℓ^A(t)` is nonincreasing on the domain:
    /// `q ≤ p`, plus `1/p − 1/q ≤ α₀` when `α₀ < 0` and `1/p − 1/q + α∞ ≤ 0` when `α∞ > 0`.
    /// Spaces with a double-log tier are reported as not normed.
    pub fn is_normed(&self) -> bool {
        let c = &self.params;
        if !c.b.is_zero() || c.q < ExtRational::int(1) || c.q > c.p {
            return false;
        }
        let e = c.p.recip_q() - c.q.recip_q();
        let zero_ok = !c.a.zero.is_negative() || e <= c.a.zero;
        let inf_ok = self.domain() == IntervalDomain::UnitInterval || !c.a.inf.is_positive() || &e + &c.a.inf <= Q::zero();
        zero_ok && inf_ok
    }
}

impl fmt::Display for LZSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::write_params(f, &self.params)
    }
}

impl fmt::Display for LzParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::write_params(f, self)
    }
}
