//! The explicit parameter conditions, all compared in exact extended-rational arithmetic.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::min;

use num_traits::{One, Signed, Zero};

use crate::rational::{ExtRational, Q};
use crate::spaces::{BrokenLog, LZSpace, LzParams};
use crate::stepfn::IntervalDomain;

use super::{Branch, CondId, EmbeddingQuery, Geometry, Provenance, TraceEntry, Verdict, VerdictError};

/// Exponents of one space, read off in the form the conditions use them.
struct Side {
    p: ExtRational,
    q: ExtRational,
    inv_q: Q,
    at_zero: Q,
    at_inf: Q,
}

impl Side {
    fn of(x: &LZSpace) -> Self {
        Side {
            p: x.p().clone(),
            q: x.q().clone(),
            inv_q: x.q().recip_q(),
            at_zero: x.log().zero.clone(),
            at_inf: x.log().inf.clone(),
        }
    }

    fn is_locally_l1(&self) -> bool {
        self.p.is_one() && self.q.is_one() && self.at_zero.is_zero()
    }

    fn is_locally_linf(&self) -> bool {
        self.p.is_infinite() && self.q.is_infinite() && self.at_zero.is_zero()
    }
}

fn entry(id: CondId, holds: bool) -> TraceEntry {
    TraceEntry { id, holds: Some(holds) }
}

fn qn(n: u32) -> Q {
    Q::from_integer(n.into())
}

/// `num·p/(n − m p)` for `p ≤ n/m`, with `+∞` at `p = n/m`; `None` when `p > n/m`.
fn critical_exponent(num: &Q, m: u32, n: u32, p: &ExtRational) -> Option<ExtRational> {
    let p = p.finite()?;
    let denom = qn(n) - qn(m) * p;
    if denom.is_negative() {
        None
    } else if denom.is_zero() {
        Some(ExtRational::Infinite)
    } else {
        Some(ExtRational::Finite(num * p / denom))
    }
}

/// Conditions C1–C5 with their trace.
fn global_conditions(x: &Side, y: &Side) -> Vec<TraceEntry> {
    let zero = Q::zero();
    let both_inf = x.p.is_infinite() && y.p.is_infinite();
    let c1 = x.p < y.p;
    let c2 = x.p == y.p && x.p.is_finite() && &y.at_inf + max_q(&y.inv_q - &x.inv_q, zero.clone()) < x.at_inf;
    let ax = &x.at_inf + &x.inv_q;
    let by = &y.at_inf + &y.inv_q;
    let c3 = both_inf && ax > zero && ax > by;
    let c4 = both_inf && x.q.is_finite() && ax.is_zero() && by < zero;
    let c5 = both_inf && x.q < y.q && ax.is_zero() && by.is_zero();
    vec![entry(CondId::C1, c1), entry(CondId::C2, c2), entry(CondId::C3, c3), entry(CondId::C4, c4), entry(CondId::C5, c5)]
}

fn max_q(a: Q, b: Q) -> Q {
    if a > b {
        a
    } else {
        b
    }
}

/// The four local conditions shared by the entire-space (C6–C9) and ball (E1–E4) criteria.
/// `num` is `n` for the entire space and `n + α` on the ball.
fn local_conditions(m: u32, n: u32, num: &Q, x: &Side, y: &Side, ids: [CondId; 4]) -> Vec<TraceEntry> {
    let nm = ExtRational::Finite(Q::new(n.into(), m.into()));
    let one = Q::one();
    let crit = critical_exponent(num, m, n, &x.p);
    let first = x.p <= nm && crit.as_ref().is_some_and(|c| y.p < *c);
    let second = x.p < nm
        && crit.as_ref().is_some_and(|c| y.p == *c)
        && y.at_zero < &x.at_zero + min(&x.inv_q - &y.inv_q, Q::zero());
    let borderline = x.p == nm;
    let third = borderline
        && y.p.is_infinite()
        && x.at_zero <= &one - &x.inv_q
        && y.at_zero < &x.at_zero - &one + &x.inv_q - &y.inv_q;
    let fourth = (borderline && x.at_zero > &one - &x.inv_q) || x.p > nm;
    vec![entry(ids[0], first), entry(ids[1], second), entry(ids[2], third), entry(ids[3], fourth)]
}

fn any(trace: &[TraceEntry]) -> bool {
    trace.iter().any(|e| e.holds == Some(true))
}

/// Whether the tail supremum vanishes as `a → ∞`, i.e. one of C1–C5 holds.
pub fn ac_near_infinity_lz(x: &LZSpace, y: &LZSpace) -> Result<(bool, Vec<TraceEntry>), VerdictError> {
    if x.domain() != IntervalDomain::HalfLine || y.domain() != IntervalDomain::HalfLine {
        return Err(VerdictError::InvalidQuery("spaces must live on (0,inf)"));
    }
    if !(x.double_log().is_zero() && y.double_log().is_zero()) {
        return Err(VerdictError::InvalidQuery("double-logarithmic spaces are outside the decided scale"));
    }
    let trace = global_conditions(&Side::of(x), &Side::of(y));
    Ok((any(&trace), trace))
}

/// Compactness of the embedding over the whole space.
pub fn decide_entire_lz(query: &EmbeddingQuery) -> Result<Verdict, VerdictError> {
    query.validate()?;
    if query.geometry != Geometry::EntireSpace {
        return Err(VerdictError::InvalidQuery("expected the entire-space geometry"));
    }
    let (m, n) = (query.m, query.n);
    let x = Side::of(&query.source);
    let y = Side::of(&query.target);
    let mut trace = global_conditions(&x, &y);
    let global = any(&trace);
    let branch = Branch::of(m, n);
    let mut notes = Vec::new();
    let compact = match branch {
        Branch::MLessN => {
            let local = local_conditions(m, n, &qn(n), &x, &y, [CondId::C6, CondId::C7, CondId::C8, CondId::C9]);
            let ok = any(&local);
            trace.extend(local);
            global && ok
        }
        Branch::MEqualN => {
            let not_l1 = !x.is_locally_l1();
            let not_linf = !y.is_locally_linf();
            trace.push(entry(CondId::XNotL1, not_l1));
            trace.push(entry(CondId::YNotLinf, not_linf));
            notes.push("equal-order clause read literally: compact locally unless X is locally L1 and Y locally Linf".into());
            global && (not_l1 || not_linf)
        }
        Branch::MGreaterN => global,
    };
    Ok(Verdict { compact: Some(compact), branch, trace, notes, provenance: Provenance::Certified })
}

/// Compactness of the embedding on a ball with the measure `|x|^α dx`; the radius plays no role.
pub fn decide_ball_lz(query: &EmbeddingQuery) -> Result<Verdict, VerdictError> {
    query.validate()?;
    let alpha = match &query.geometry {
        Geometry::Ball { alpha, .. } => alpha.clone(),
        Geometry::EntireSpace => return Err(VerdictError::InvalidQuery("expected the ball geometry")),
    };
    let (m, n) = (query.m, query.n);
    let x = Side::of(&query.source);
    let y = Side::of(&query.target);
    let branch = Branch::of(m, n);
    let mut notes = Vec::new();
    let (compact, trace) = match branch {
        Branch::MLessN => {
            let num = qn(n) + alpha;
            let trace = local_conditions(m, n, &num, &x, &y, [CondId::E1, CondId::E2, CondId::E3, CondId::E4]);
            (any(&trace), trace)
        }
        Branch::MEqualN => {
            let not_l1 = !x.is_locally_l1();
            let not_linf = !y.is_locally_linf();
            notes.push("equivalence to L1 / Linf is recognised by exact parameter match only".into());
            (not_l1 || not_linf, vec![entry(CondId::XNotL1, not_l1), entry(CondId::YNotLinf, not_linf)])
        }
        Branch::MGreaterN => {
            notes.push("always compact when m > n".into());
            (true, Vec::new())
        }
    };
    Ok(Verdict { compact: Some(compact), branch, trace, notes, provenance: Provenance::Certified })
}

/// Dispatches on the query geometry.
pub fn decide(query: &EmbeddingQuery) -> Result<Verdict, VerdictError> {
    match query.geometry {
        Geometry::EntireSpace => decide_entire_lz(query),
        Geometry::Ball { .. } => decide_ball_lz(query),
    }
}

/// Exponents of logarithmic Orlicz spaces: the source Young function behaves like
/// `t^{p₁} ℓ^{γ₁}` near 0 and `t^{p₂} ℓ^{γ₂}` near ∞, the target like `t^{r₁} ℓ^{δ₁}` and
/// `t^{r₂} ℓ^{δ₂}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrliczParams {
    pub p1: Q,
    pub p2: Q,
    pub r1: Q,
    pub r2: Q,
    pub gamma1: Q,
    pub gamma2: Q,
    pub delta1: Q,
    pub delta2: Q,
}

impl OrliczParams {
    fn validate(&self) -> Result<(), VerdictError> {
        let one = Q::one();
        if [&self.p1, &self.p2, &self.r1, &self.r2].iter().any(|e| **e < one) {
            return Err(VerdictError::InvalidQuery("Orlicz powers must be at least 1"));
        }
        if self.p1 == one && self.gamma1.is_positive() || self.r1 == one && self.delta1.is_positive() {
            return Err(VerdictError::InvalidQuery("power 1 near 0 needs a nonpositive log exponent"));
        }
        if self.p2 == one && self.gamma2.is_negative() || self.r2 == one && self.delta2.is_negative() {
            return Err(VerdictError::InvalidQuery("power 1 near infinity needs a nonnegative log exponent"));
        }
        Ok(())
    }
}

/// Compactness over the whole space between logarithmic Orlicz spaces.
pub fn decide_entire_orlicz(m: u32, n: u32, o: &OrliczParams) -> Result<Verdict, VerdictError> {
    if m < 1 || n < 2 {
        return Err(VerdictError::InvalidQuery("need m >= 1 and n >= 2"));
    }
    o.validate()?;
    let d1 = o.p1 < o.r1;
    let d2 = o.p1 == o.r1 && o.delta1 < o.gamma1;
    let mut trace = vec![entry(CondId::D1, d1), entry(CondId::D2, d2)];
    let branch = Branch::of(m, n);
    let global = d1 || d2;
    let compact = if branch == Branch::MLessN {
        let nm = Q::new(n.into(), m.into());
        let sub = o.p2 < nm;
        let denom = qn(n) - qn(m) * &o.p2;
        let (d3, d4) = if sub {
            let crit = qn(n) * &o.p2 / &denom;
            (o.r2 < crit, o.r2 == crit && o.delta2 < qn(n) * &o.gamma2 / &denom)
        } else {
            (false, false)
        };
        let d5 = o.p2 >= nm;
        trace.extend([entry(CondId::D3, d3), entry(CondId::D4, d4), entry(CondId::D5, d5)]);
        global && (d3 || d4 || d5)
    } else {
        global
    };
    Ok(Verdict { compact: Some(compact), branch, trace, notes: Vec::new(), provenance: Provenance::Certified })
}

/// Shape of the optimal target space on a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OptimalSpaceDesc {
    /// `L^{r,s,γ}`.
    Lz { r: ExtRational, s: ExtRational, gamma: Q },
    /// `L^{∞,q,−1/q,−1}`: log exponent `−1/q`, double-log exponent `−1`.
    LzDoubleLog { q: ExtRational },
    Linf,
}

impl OptimalSpaceDesc {
    /// The described space on `(0,1)`.
    pub fn to_space(&self) -> LZSpace {
        let unit = IntervalDomain::UnitInterval;
        let params = match self {
            OptimalSpaceDesc::Lz { r, s, gamma } => {
                LzParams::lorentz(r.clone(), s.clone()).with_log(BrokenLog::uniform(gamma.clone()))
            }
            OptimalSpaceDesc::LzDoubleLog { q } => LzParams::lorentz(ExtRational::Infinite, q.clone())
                .with_log(BrokenLog::uniform(-q.recip_q()))
                .with_double_log(BrokenLog::uniform(-Q::one())),
            OptimalSpaceDesc::Linf => LzParams::lorentz(ExtRational::Infinite, ExtRational::Infinite),
        };
        LZSpace::new(params.on(unit)).expect("optimal target spaces are valid")
    }

    pub fn describe(&self) -> alloc::string::String {
        format!("{}", self.to_space())
    }
}

/// Optimal rearrangement-invariant target on a ball for the source `x` (given on `(0,1)`).
/// When `m ≥ n` the answer is always `L^∞`.
pub fn optimal_target_ball_lz(m: u32, n: u32, alpha: &Q, x: &LZSpace) -> Result<OptimalSpaceDesc, VerdictError> {
    if m < 1 || n < 2 {
        return Err(VerdictError::InvalidQuery("need m >= 1 and n >= 2"));
    }
    if alpha.is_negative() {
        return Err(VerdictError::InvalidQuery("weight exponent must be nonnegative"));
    }
    if x.domain() != IntervalDomain::UnitInterval || !x.double_log().is_zero() {
        return Err(VerdictError::InvalidQuery("source must be a single-log space on (0,1)"));
    }
    if m >= n {
        return Ok(OptimalSpaceDesc::Linf);
    }
    let side = Side::of(x);
    let gamma = side.at_zero.clone();
    let one = Q::one();
    let num = qn(n) + alpha;
    match critical_exponent(&num, m, n, &side.p) {
        Some(ExtRational::Finite(r)) => Ok(OptimalSpaceDesc::Lz { r: ExtRational::Finite(r), s: side.q, gamma }),
        Some(ExtRational::Infinite) => {
            let edge = &one - &side.inv_q;
            if gamma < edge {
                Ok(OptimalSpaceDesc::Lz { r: ExtRational::Infinite, s: side.q, gamma: gamma - one })
            } else if gamma == edge && !side.q.is_one() {
                Ok(OptimalSpaceDesc::LzDoubleLog { q: side.q })
            } else {
                Ok(OptimalSpaceDesc::Linf)
            }
        }
        None => Ok(OptimalSpaceDesc::Linf),
    }
}
