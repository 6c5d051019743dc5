//! Proptest strategies shared by the property suites.

#![allow(dead_code)]

use proptest::prelude::*;
use rsc_core::rational::{q, qi, ExtRational, Q};
use rsc_core::spaces::{BrokenLog, LZSpace, LzParams};
use rsc_core::stepfn::{IntervalDomain, MonotoneStepFn, PiecewiseFn};

/// Up to `max_pieces` pieces; on `(0,∞)` breaks are multiples of 1/8 below 16, values are
/// multiples of 1/4 in `[0,3]`. On `(0,1)` the breaks are rescaled into the interval.
pub fn step_fn(domain: IntervalDomain, max_pieces: usize) -> impl Strategy<Value = PiecewiseFn> {
    prop::collection::vec((1i64..=16, 0i64..=12), 1..=max_pieces).prop_flat_map(move |pieces| {
        (Just(pieces), 1i64..=8).prop_map(move |(pieces, extra)| {
            let mut at = 0;
            let mut ends = Vec::with_capacity(pieces.len());
            for &(len, _) in &pieces {
                at += len;
                ends.push(at);
            }
            let total = at + extra;
            let breaks = ends
                .iter()
                .map(|&e| match domain {
                    IntervalDomain::HalfLine => q(e, 8),
                    IntervalDomain::UnitInterval => q(e, total),
                })
                .collect();
            let values = pieces.iter().map(|&(_, v)| q(v, 4)).collect();
            PiecewiseFn::new(domain, breaks, values, qi(0)).expect("valid step function")
        })
    })
}

pub fn halfline_fn() -> impl Strategy<Value = PiecewiseFn> {
    step_fn(IntervalDomain::HalfLine, 8)
}

pub fn unit_fn() -> impl Strategy<Value = PiecewiseFn> {
    step_fn(IntervalDomain::UnitInterval, 6)
}

pub fn monotone_fn() -> impl Strategy<Value = MonotoneStepFn> {
    halfline_fn().prop_map(|f| f.rearrange().expect("bounded support"))
}

fn exponent() -> impl Strategy<Value = ExtRational> {
    prop_oneof![
        Just(ExtRational::int(1)),
        Just(ExtRational::ratio(3, 2)),
        Just(ExtRational::int(2)),
        Just(ExtRational::int(3)),
        Just(ExtRational::int(5)),
        Just(ExtRational::Infinite),
    ]
}

/// Valid single-log Lorentz–Zygmund spaces, by rejection.
pub fn lz_space(domain: IntervalDomain) -> impl Strategy<Value = LZSpace> {
    (exponent(), exponent(), any::<bool>(), -2i64..=2, -2i64..=2).prop_filter_map(
        "invalid parameters",
        move |(p, qe, same, a0, ainf)| {
            let qe = if same { p.clone() } else { qe };
            let params = LzParams::lorentz(p, qe).with_log(BrokenLog::new(q(a0, 2), q(ainf, 2))).on(domain);
            LZSpace::new(params).ok()
        },
    )
}

pub fn space(s: &str) -> LZSpace {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e:?}"))
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()) || (a.is_infinite() && a == b)
}

pub fn positive_q(max_num: i64, den: i64) -> impl Strategy<Value = Q> {
    (1..=max_num).prop_map(move |k| q(k, den))
}
