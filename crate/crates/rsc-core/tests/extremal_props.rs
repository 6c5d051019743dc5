//! Randomized soundness of the tail-supremum search.

mod common;

use common::*;
use proptest::prelude::*;
use rsc_core::extremal::{monotone_envelope, suptail, SearchOptions};
use rsc_core::rational::{q, qi, to_f64, Q};
use rsc_core::spaces::{fundamental_function, LZSpace};
use rsc_core::stepfn::IntervalDomain;
use rsc_core::transforms::tail_cut_bound;

fn halfline_space() -> impl Strategy<Value = LZSpace> {
    lz_space(IntervalDomain::HalfLine)
}

/// Cut points from 1/16 to 10^6.
fn cut_point() -> impl Strategy<Value = Q> {
    prop_oneof![(1i64..=64).prop_map(|k| q(k, 16)), (1i64..=1_000_000).prop_map(|k| q(k, 1))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn estimate_respects_floor_and_certificate(x in halfline_space(), y in halfline_space(), a in cut_point()) {
        let est = suptail(&x, &y, &a, &SearchOptions::for_space(&x)).unwrap();
        // The flat candidate χ_(0,2a) is always scored, with value φ_Y(a)/φ_X(2a). That is at
        // least φ_Y(a)/(2φ_X(a)) whenever φ_X(2a) ≤ 2φ_X(a), which holds for normed X.
        let (py, px, px2) = (fundamental_function(&y, &a), fundamental_function(&x, &a), fundamental_function(&x, &(&a * qi(2))));
        prop_assert!(est.estimate >= py / px2 - 1e-9, "{x} -> {y} at {a}: {} < {}", est.estimate, py / px2);
        if px2 <= 2.0 * px {
            prop_assert!(est.estimate >= py / (2.0 * px) - 1e-9, "{x} -> {y} at {a}: {} below the floor", est.estimate);
        }
        prop_assert!(est.estimate >= est.floor);
        // Independently of the search's own certificate field, the tail-cut bound is an upper bound.
        let cut = tail_cut_bound(&x, &y, &a).unwrap().total;
        if cut.is_finite() {
            prop_assert!(est.estimate <= cut * (1.0 + 1e-6), "{x} -> {y} at {a}: {} > {cut}", est.estimate);
        }
    }

    #[test]
    fn envelope_is_nonincreasing(x in halfline_space(), y in halfline_space(), ks in prop::collection::vec(0i32..=12, 2..6)) {
        let opts = SearchOptions { certificate: false, ..SearchOptions::for_space(&x) };
        let mut grid: Vec<Q> = ks.into_iter().map(|k| Q::from_integer(10i64.pow(k as u32 / 2).into())).collect();
        grid.sort();
        grid.dedup();
        let mut raw: Vec<_> = grid.iter().map(|a| suptail(&x, &y, a, &opts).unwrap()).collect();
        let before: Vec<f64> = raw.iter().map(|e| e.estimate).collect();
        monotone_envelope(&mut raw);
        for (w, b) in raw.windows(2).zip(&before) {
            prop_assert!(w[1].estimate <= w[0].estimate);
            prop_assert!(w[0].estimate >= *b);
        }
        // Each enveloped value is one of the raw estimates at the same or a larger cut point.
        for (i, e) in raw.iter().enumerate() {
            prop_assert!(before[i..].iter().any(|b| *b == e.estimate));
            prop_assert_eq!(e.a, to_f64(&grid[i]));
        }
    }
}
