//! Exact nonnegative step functions on `(0, ∞)` or `(0, 1)` and their rearrangements.
//!
//! A [`PiecewiseFn`] takes the value `values[i]` on `[breaks[i-1], breaks[i])` (with an
//! implicit first breakpoint at 0) and `tail` on `[breaks[last], end)`. Every constructor
//! returns the canonical form, in which adjacent pieces carry different values, so derived
//! equality is equality of functions.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Deref;

use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// The interval a step function lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalDomain {
    /// `(0, ∞)`
    HalfLine,
    /// `(0, 1)`
    UnitInterval,
}

impl IntervalDomain {
    /// Right endpoint, `None` for `∞`.
    pub fn end(self) -> Option<Q> {
        match self {
            IntervalDomain::HalfLine => None,
            IntervalDomain::UnitInterval => Some(Q::one()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepFnError {
    #[error("breakpoints must be strictly increasing, positive and inside the domain")]
    InvalidBreakpoints,
    #[error("expected one value per breakpoint, got {values} values for {breaks} breakpoints")]
    LengthMismatch { breaks: usize, values: usize },
    #[error("step function values must be nonnegative")]
    NegativeValue,
    #[error("operands live on different domains")]
    DomainMismatch,
    #[error("nonzero tail on (0,∞): the function does not have bounded support")]
    NonIntegrableTail,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

/// One constant piece `[start, end)`; `end == None` means the piece runs to `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub start: Q,
    pub end: Option<Q>,
    pub value: Q,
}

impl Piece {
    /// Length of the piece, `None` when unbounded.
    pub fn length(&self) -> Option<Q> {
        self.end.as_ref().map(|e| e - &self.start)
    }
}

/// Nonnegative piecewise-constant function with finitely many pieces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiecewiseFn {
    domain: IntervalDomain,
    breaks: Vec<Q>,
    values: Vec<Q>,
    tail: Q,
}

/// Binary and unary pointwise operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointwiseOp {
    Add,
    Max,
    Min,
    /// Multiply `f` by `λ ≥ 0`; `g` only fixes the domain.
    Scale(Q),
    /// `min(f, N)`; `g` only fixes the domain.
    TruncateAbove(Q),
    /// `f·χ_[a, b)`, `b == None` for `∞`; `g` only fixes the domain.
    Restrict(Q, Option<Q>),
}

impl PiecewiseFn {
    /// Validating constructor; the result is canonicalised.
    pub fn new(domain: IntervalDomain, breaks: Vec<Q>, values: Vec<Q>, tail: Q) -> Result<Self, StepFnError> {
        if breaks.len() != values.len() {
            return Err(StepFnError::LengthMismatch { breaks: breaks.len(), values: values.len() });
        }
        let end = domain.end();
        let mut prev = Q::zero();
        for b in &breaks {
            if *b <= prev || end.as_ref().is_some_and(|e| b >= e) {
                return Err(StepFnError::InvalidBreakpoints);
            }
            prev = b.clone();
        }
        if values.iter().chain(core::iter::once(&tail)).any(|v| v.is_negative()) {
            return Err(StepFnError::NegativeValue);
        }
        Ok(Self::build(domain, breaks.into_iter().zip(values).collect(), tail))
    }

    /// Builds the canonical form from segments `(end, value)` with nondecreasing ends.
    /// Zero-length segments are dropped and anything beyond the domain end is cut off.
    fn build(domain: IntervalDomain, segs: Vec<(Q, Q)>, tail: Q) -> Self {
        let end = domain.end();
        let mut breaks: Vec<Q> = Vec::with_capacity(segs.len());
        let mut values: Vec<Q> = Vec::with_capacity(segs.len());
        let mut tail = tail;
        let mut prev = Q::zero();
        for (b, v) in segs {
            if b <= prev {
                continue;
            }
            if let Some(e) = &end {
                if b >= *e {
                    // This segment reaches the end of the domain and becomes the tail.
                    if prev < *e {
                        tail = v;
                    }
                    break;
                }
            }
            if let Some(last) = values.last() {
                if *last == v {
                    *breaks.last_mut().expect("paired with values") = b.clone();
                    prev = b;
                    continue;
                }
            }
            prev = b.clone();
            breaks.push(b);
            values.push(v);
        }
        while values.last().is_some_and(|v| *v == tail) {
            values.pop();
            breaks.pop();
        }
        PiecewiseFn { domain, breaks, values, tail }
    }

    pub fn zero(domain: IntervalDomain) -> Self {
        PiecewiseFn { domain, breaks: Vec::new(), values: Vec::new(), tail: Q::zero() }
    }

    pub fn constant(domain: IntervalDomain, c: Q) -> Result<Self, StepFnError> {
        Self::new(domain, Vec::new(), Vec::new(), c)
    }

    /// `c·χ_[a, b)`; `b == None` means up to the end of the domain.
    pub fn indicator_scaled(domain: IntervalDomain, a: &Q, b: Option<&Q>, c: Q) -> Result<Self, StepFnError> {
        if a.is_negative() || c.is_negative() {
            return Err(StepFnError::InvalidArgument("indicator needs a ≥ 0 and c ≥ 0"));
        }
        let mut segs = Vec::new();
        segs.push((a.clone(), Q::zero()));
        match b {
            Some(b) => {
                if b < a {
                    return Err(StepFnError::InvalidArgument("indicator needs a ≤ b"));
                }
                segs.push((b.clone(), c));
                Ok(Self::build(domain, segs, Q::zero()))
            }
            None => Ok(Self::build(domain, segs, c)),
        }
    }

    /// `χ_[a, b)`.
    pub fn indicator(domain: IntervalDomain, a: &Q, b: &Q) -> Result<Self, StepFnError> {
        Self::indicator_scaled(domain, a, Some(b), Q::one())
    }

    /// Build from consecutive pieces `(length, value)` starting at 0, followed by `tail`.
    pub fn from_lengths(domain: IntervalDomain, pieces: &[(Q, Q)], tail: Q) -> Result<Self, StepFnError> {
        let mut t = Q::zero();
        let mut breaks = Vec::with_capacity(pieces.len());
        let mut values = Vec::with_capacity(pieces.len());
        for (len, v) in pieces {
            if !len.is_positive() {
                return Err(StepFnError::InvalidBreakpoints);
            }
            t += len;
            breaks.push(t.clone());
            values.push(v.clone());
        }
        Self::new(domain, breaks, values, tail)
    }

    pub fn domain(&self) -> IntervalDomain {
        self.domain
    }

    pub fn breaks(&self) -> &[Q] {
        &self.breaks
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn tail(&self) -> &Q {
        &self.tail
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty() && self.tail.is_zero()
    }

    /// All pieces covering the domain, left to right.
    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::with_capacity(self.values.len() + 1);
        let mut start = Q::zero();
        for (b, v) in self.breaks.iter().zip(&self.values) {
            out.push(Piece { start: start.clone(), end: Some(b.clone()), value: v.clone() });
            start = b.clone();
        }
        out.push(Piece { start, end: self.domain.end(), value: self.tail.clone() });
        out
    }

    /// Value at `t` (right-continuous convention). Points outside the domain give 0.
    pub fn eval(&self, t: &Q) -> Q {
        if t.is_negative() || self.domain.end().is_some_and(|e| *t >= e) {
            return Q::zero();
        }
        let idx = self.breaks.partition_point(|b| b <= t);
        self.values.get(idx).cloned().unwrap_or_else(|| self.tail.clone())
    }

    /// Bounded support: always on `(0,1)`, and `tail == 0` on `(0,∞)`.
    pub fn has_bounded_support(&self) -> bool {
        self.domain == IntervalDomain::UnitInterval || self.tail.is_zero()
    }

    fn require_bounded(&self) -> Result<(), StepFnError> {
        if self.has_bounded_support() {
            Ok(())
        } else {
            Err(StepFnError::NonIntegrableTail)
        }
    }

    /// Smallest `T` with `f = 0` on `[T, end)`.
    pub fn support_end(&self) -> Result<Q, StepFnError> {
        self.require_bounded()?;
        if !self.tail.is_zero() {
            return Ok(Q::one());
        }
        Ok(self.breaks.last().cloned().unwrap_or_else(Q::zero))
    }

    /// Exact `∫ f`.
    pub fn integral(&self) -> Result<Q, StepFnError> {
        self.require_bounded()?;
        let mut total = Q::zero();
        for p in self.pieces() {
            if let Some(len) = p.length() {
                total += len * p.value;
            }
        }
        Ok(total)
    }

    /// Exact `∫_0^t f`.
    pub fn integral_to(&self, t: &Q) -> Result<Q, StepFnError> {
        let mut total = Q::zero();
        for p in self.pieces() {
            if p.start >= *t {
                break;
            }
            let hi = match &p.end {
                Some(e) if e < t => e.clone(),
                _ => t.clone(),
            };
            total += (hi - &p.start) * p.value;
        }
        Ok(total)
    }

    pub fn is_nonincreasing(&self) -> bool {
        let mut it = self.values.iter().chain(core::iter::once(&self.tail));
        let mut prev = match it.next() {
            Some(v) => v,
            None => return true,
        };
        for v in it {
            if v > prev {
                return false;
            }
            prev = v;
        }
        true
    }

    /// Positive level pieces as `(value, length)`.
    fn positive_levels(&self) -> Result<Vec<(Q, Q)>, StepFnError> {
        self.require_bounded()?;
        let mut levels = Vec::new();
        for p in self.pieces() {
            if p.value.is_positive() {
                let len = p.length().expect("bounded support checked");
                levels.push((p.value, len));
            }
        }
        levels.sort_by(|a, b| b.0.cmp(&a.0));
        // Merge equal levels.
        let mut merged: Vec<(Q, Q)> = Vec::with_capacity(levels.len());
        for (v, len) in levels {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += len,
                _ => merged.push((v, len)),
            }
        }
        Ok(merged)
    }

    /// The distribution function `λ ↦ |{f > λ}|` as a nonincreasing step function of `λ ≥ 0`.
    pub fn distribution(&self) -> Result<MonotoneStepFn, StepFnError> {
        let levels = self.positive_levels()?;
        // Ascending in λ: on [v_{j+1}, v_j) the measure is the cumulative length of levels ≥ v_j.
        let mut cumulative = Vec::with_capacity(levels.len());
        let mut acc = Q::zero();
        for (_, len) in &levels {
            acc += len;
            cumulative.push(acc.clone());
        }
        let segs: Vec<(Q, Q)> =
            levels.iter().zip(cumulative).rev().map(|((v, _), measure)| (v.clone(), measure)).collect();
        Ok(MonotoneStepFn(Self::build(IntervalDomain::HalfLine, segs, Q::zero())))
    }

    /// The nonincreasing rearrangement `f*`.
    pub fn rearrange(&self) -> Result<MonotoneStepFn, StepFnError> {
        let levels = self.positive_levels()?;
        let mut segs = Vec::with_capacity(levels.len());
        let mut t = Q::zero();
        for (v, len) in levels {
            t += len;
            segs.push((t.clone(), v));
        }
        Ok(MonotoneStepFn(Self::build(self.domain, segs, Q::zero())))
    }

    /// `f**(t) = (1/t) ∫_0^t f*`.
    pub fn maximal_rearrangement(&self, t: &Q) -> Result<Q, StepFnError> {
        if !t.is_positive() {
            return Err(StepFnError::InvalidArgument("f** needs t > 0"));
        }
        let star = self.rearrange()?;
        Ok(star.integral_to(t)? / t)
    }

    /// `D_a f(t) = f(t/a)·χ_(0, aL)` where `L` is the length of the domain.
    pub fn dilate(&self, a: &Q) -> Result<Self, StepFnError> {
        if !a.is_positive() {
            return Err(StepFnError::InvalidArgument("dilation needs a > 0"));
        }
        let mut segs: Vec<(Q, Q)> = self.breaks.iter().map(|b| b * a).zip(self.values.iter().cloned()).collect();
        match self.domain {
            IntervalDomain::HalfLine => Ok(Self::build(self.domain, segs, self.tail.clone())),
            IntervalDomain::UnitInterval => {
                segs.push((a.clone(), self.tail.clone()));
                Ok(Self::build(self.domain, segs, Q::zero()))
            }
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Q, &Q) -> Q) -> Result<Self, StepFnError> {
        if self.domain != other.domain {
            return Err(StepFnError::DomainMismatch);
        }
        let mut segs = Vec::with_capacity(self.breaks.len() + other.breaks.len());
        let (mut i, mut j) = (0, 0);
        loop {
            let bi = self.breaks.get(i);
            let bj = other.breaks.get(j);
            let vi = self.values.get(i).unwrap_or(&self.tail);
            let vj = other.values.get(j).unwrap_or(&other.tail);
            let next = match (bi, bj) {
                (None, None) => break,
                (Some(x), None) => {
                    i += 1;
                    x
                }
                (None, Some(y)) => {
                    j += 1;
                    y
                }
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Less => {
                        i += 1;
                        x
                    }
                    Ordering::Greater => {
                        j += 1;
                        y
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        x
                    }
                },
            };
            segs.push((next.clone(), op(vi, vj)));
        }
        Ok(Self::build(self.domain, segs, op(&self.tail, &other.tail)))
    }

    fn map_values(&self, op: impl Fn(&Q) -> Q) -> Self {
        let segs = self.breaks.iter().cloned().zip(self.values.iter().map(&op)).collect();
        Self::build(self.domain, segs, op(&self.tail))
    }

    pub fn add(&self, other: &Self) -> Result<Self, StepFnError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn max(&self, other: &Self) -> Result<Self, StepFnError> {
        self.zip_with(other, |a, b| if a >= b { a.clone() } else { b.clone() })
    }

    pub fn min(&self, other: &Self) -> Result<Self, StepFnError> {
        self.zip_with(other, |a, b| if a <= b { a.clone() } else { b.clone() })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self, StepFnError> {
        self.zip_with(other, |a, b| a * b)
    }

    /// `λ·f` for `λ ≥ 0`.
    pub fn scale(&self, lambda: &Q) -> Result<Self, StepFnError> {
        if lambda.is_negative() {
            return Err(StepFnError::NegativeValue);
        }
        Ok(self.map_values(|v| v * lambda))
    }

    /// `min(f, N)` for `N ≥ 0`.
    pub fn truncate_above(&self, n: &Q) -> Result<Self, StepFnError> {
        if n.is_negative() {
            return Err(StepFnError::NegativeValue);
        }
        Ok(self.map_values(|v| if v > n { n.clone() } else { v.clone() }))
    }

    /// `f·χ_[a, b)`; `b == None` keeps everything right of `a`.
    pub fn restrict(&self, a: &Q, b: Option<&Q>) -> Result<Self, StepFnError> {
        let window = Self::indicator_scaled(self.domain, a, b, Q::one())?;
        self.mul(&window)
    }

    /// True when `self ≤ other` everywhere.
    pub fn le(&self, other: &Self) -> Result<bool, StepFnError> {
        let diff = self.zip_with(other, |a, b| if a <= b { Q::zero() } else { Q::one() })?;
        Ok(diff.is_zero())
    }
}

/// Applies `op` to `f` and `g` (unary operations use `g` only for the domain check).
pub fn pointwise(f: &PiecewiseFn, g: &PiecewiseFn, op: &PointwiseOp) -> Result<PiecewiseFn, StepFnError> {
    if f.domain != g.domain {
        return Err(StepFnError::DomainMismatch);
    }
    match op {
        PointwiseOp::Add => f.add(g),
        PointwiseOp::Max => f.max(g),
        PointwiseOp::Min => f.min(g),
        PointwiseOp::Scale(l) => f.scale(l),
        PointwiseOp::TruncateAbove(n) => f.truncate_above(n),
        PointwiseOp::Restrict(a, b) => f.restrict(a, b.as_ref()),
    }
}

/// A [`PiecewiseFn`] whose values (tail included) are nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonotoneStepFn(PiecewiseFn);

impl MonotoneStepFn {
    pub fn new(f: PiecewiseFn) -> Result<Self, StepFnError> {
        if f.is_nonincreasing() {
            Ok(MonotoneStepFn(f))
        } else {
            Err(StepFnError::InvalidArgument("values are not nonincreasing"))
        }
    }

    pub fn as_fn(&self) -> &PiecewiseFn {
        &self.0
    }

    pub fn into_inner(self) -> PiecewiseFn {
        self.0
    }
}

impl Deref for MonotoneStepFn {
    type Target = PiecewiseFn;

    fn deref(&self) -> &PiecewiseFn {
        &self.0
    }
}

impl From<MonotoneStepFn> for PiecewiseFn {
    fn from(f: MonotoneStepFn) -> Self {
        f.0
    }
}
