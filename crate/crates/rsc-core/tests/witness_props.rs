//! Randomized structural properties of the constructed radial functions.

mod common;

use common::*;
use proptest::prelude::*;
use rsc_core::rational::{q, qi};
use rsc_core::stepfn::MonotoneStepFn;
use rsc_core::transforms::EnvelopeOptions;
use rsc_core::witness::{build_u_fa, build_u_fra, dilation_ratio, verify_construction_bounds, ConstructionFamily};

fn opts() -> EnvelopeOptions {
    EnvelopeOptions { rel_gap: 1e-4, ..EnvelopeOptions::default() }
}

fn lebesgue_pair() -> impl Strategy<Value = (&'static str, &'static str)> {
    prop::sample::select(vec![("L1", "L2"), ("L2", "L4"), ("L2", "L6"), ("L(p=3,q=1)", "L5"), ("L2", "Linf"), ("L3", "L3")])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn entire_profile_vanishes_near_origin(f in monotone_fn(), k in 1i64..=64, m in 1u32..=4, n in 2u32..=5) {
        let a = qi(1) + q(k, 8);
        let u = build_u_fa(&f, &a, m, n).unwrap();
        let edge = &a / qi(8);
        for j in 0..100 {
            let t = &edge * q(j, 100);
            prop_assert_eq!(u.eval_q(&t), 0.0, "t = {}", t);
        }
    }

    #[test]
    fn ball_profile_is_nonincreasing(f in unit_fn(), r in 1i64..=40, n in 2u32..=5, m_seed in 0u32..8) {
        let m = 1 + m_seed % (n - 1);
        let radius = q(r, 4);
        let u = build_u_fra(&f, &radius, &qi(1), m, n).unwrap();
        let rf = r as f64 / 4.0;
        let mut prev = f64::INFINITY;
        for j in 1..=400 {
            let v = u.at_radius(rf * j as f64 / 400.0);
            prop_assert!(v >= 0.0);
            prop_assert!(v <= prev * (1.0 + 1e-9), "rho = {}: {v} > {prev}", rf * j as f64 / 400.0);
            prev = v;
        }
        prop_assert_eq!(u.at_radius(rf), 0.0);
    }

    #[test]
    fn entire_profile_is_nonincreasing_past_cutoff(f in monotone_fn(), k in 0i64..=64, m in 1u32..=4, n in 2u32..=5) {
        // Past t = a/4 the cutoff equals 1 and the profile is the plain iterated integral.
        let a = qi(1) + q(k, 8);
        let u = build_u_fa(&f, &a, m, n).unwrap();
        let start = rsc_core::rational::to_f64(&a) / 4.0;
        let end = rsc_core::rational::to_f64(&u.support_end()).max(start);
        let mut prev = f64::INFINITY;
        for j in 0..=400 {
            let v = u.eval(start + (end - start) * j as f64 / 400.0);
            prop_assert!(v >= 0.0);
            prop_assert!(v <= prev * (1.0 + 1e-9), "{v} > {prev}");
            prev = v;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn construction_ratios_are_homogeneous(f in monotone_fn(), k in 1i64..=16, lam in 1i64..=40, (xs, ys) in lebesgue_pair()) {
        prop_assume!(!f.is_zero());
        let lambda = q(lam, 4);
        let scaled = MonotoneStepFn::new(f.as_fn().scale(&lambda).unwrap()).unwrap();
        let a = qi(1) + q(k, 4);
        let (x, y) = (space(xs), space(ys));
        let base = ConstructionFamily::Entire { m: 1, n: 3, samples: vec![(f, a.clone())] };
        let big = ConstructionFamily::Entire { m: 1, n: 3, samples: vec![(scaled, a)] };
        let r0 = verify_construction_bounds(&base, &x, &y, opts()).unwrap();
        let r1 = verify_construction_bounds(&big, &x, &y, opts()).unwrap();
        for (u, v) in r0.rows.iter().zip(&r1.rows) {
            prop_assert!(rel_close(u.c_x, v.c_x, 1e-6), "{} vs {}", u.c_x, v.c_x);
            prop_assert!(rel_close(u.c_y, v.c_y, 1e-6), "{} vs {}", u.c_y, v.c_y);
        }
    }

    #[test]
    fn dilation_is_bounded_on_profiles(f in monotone_fn(), k in 1i64..=16, s in prop::sample::select(vec![0.1, 0.5, 2.0, 7.5, 100.0])) {
        prop_assume!(!f.is_zero());
        let enc = build_u_fa(&f, &(qi(1) + q(k, 4)), 2, 3).unwrap().enclosure(opts()).unwrap();
        for sp in ["L1", "L2", "L(p=3,q=1)", "L(p=3,q=inf)", "Linf"] {
            let r = dilation_ratio(&enc, &space(sp), s).unwrap();
            prop_assert!(r <= 1.0 + 1e-3, "{sp} s={s}: {r}");
        }
    }
}
