//! Randomized invariants of the Lorentz–Zygmund functional and fundamental functions.

mod common;

use common::*;
use proptest::prelude::*;
use rsc_core::rational::{q, to_f64, ExtRational};
use rsc_core::spaces::{fundamental_function, fundamental_function_f64, holder_pairing, lz_norm, LZSpace};
use rsc_core::stepfn::IntervalDomain;

fn halfline_space() -> impl Strategy<Value = LZSpace> {
    lz_space(IntervalDomain::HalfLine)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_is_homogeneous(f in halfline_fn(), x in halfline_space(), k in 0i64..=40) {
        let lambda = q(k, 4);
        let scaled = lz_norm(&f.scale(&lambda).unwrap(), &x).unwrap();
        let base = lz_norm(&f, &x).unwrap();
        if base.is_finite() {
            prop_assert!(rel_close(scaled, to_f64(&lambda) * base, 1e-10) || (k == 0 && scaled == 0.0), "{scaled} vs {k}/4 * {base}");
        }
    }

    #[test]
    fn norm_is_rearrangement_invariant(f in halfline_fn(), x in halfline_space()) {
        let star = f.rearrange().unwrap();
        prop_assert_eq!(lz_norm(&f, &x).unwrap(), lz_norm(star.as_fn(), &x).unwrap());
    }

    #[test]
    fn unit_interval_norm_is_rearrangement_invariant(f in unit_fn(), x in lz_space(IntervalDomain::UnitInterval)) {
        let star = f.rearrange().unwrap();
        prop_assert_eq!(lz_norm(&f, &x).unwrap(), lz_norm(star.as_fn(), &x).unwrap());
    }

    #[test]
    fn norm_is_monotone(f in halfline_fn(), h in halfline_fn(), x in halfline_space()) {
        let g = f.max(&h).unwrap();
        let (nf, ng) = (lz_norm(&f, &x).unwrap(), lz_norm(&g, &x).unwrap());
        prop_assert!(nf <= ng * (1.0 + 1e-9), "{nf} > {ng}");
    }

    #[test]
    fn norm_increases_along_truncations(f in halfline_fn(), x in halfline_space()) {
        // min(f, k/4) increases to f as k grows; the norms follow and reach the norm of f.
        let mut prev = 0.0;
        for k in 0..=12 {
            let fk = f.truncate_above(&q(k, 4)).unwrap();
            let nk = lz_norm(&fk, &x).unwrap();
            prop_assert!(nk >= prev * (1.0 - 1e-9), "k={k}: {nk} < {prev}");
            prev = nk;
        }
        prop_assert!(rel_close(prev, lz_norm(&f, &x).unwrap(), 1e-12));
    }

    #[test]
    fn norm_increases_along_support_cuts(f in halfline_fn(), x in halfline_space()) {
        let mut prev = 0.0;
        for k in 1..=17 {
            let fk = f.restrict(&q(0, 1), Some(&q(k, 1))).unwrap();
            let nk = lz_norm(&fk, &x).unwrap();
            prop_assert!(nk >= prev * (1.0 - 1e-9));
            prev = nk;
        }
        prop_assert!(rel_close(prev, lz_norm(&f, &x).unwrap(), 1e-12));
    }

    #[test]
    fn lebesgue_conjugate_fundamentals_multiply_to_t(
        p in prop_oneof![(2i64..=12).prop_map(|k| q(k, 2)), Just(q(1, 1))],
        t in (1i64..=4000).prop_map(|k| q(k, 16)),
    ) {
        let conj = if p == q(1, 1) { ExtRational::Infinite } else { ExtRational::Finite(&p / (&p - q(1, 1))) };
        let x = LZSpace::lebesgue(ExtRational::Finite(p.clone()));
        let xc = LZSpace::lebesgue(conj);
        let prod = fundamental_function(&x, &t) * fundamental_function(&xc, &t);
        prop_assert!(rel_close(prod, to_f64(&t), 1e-9), "p={p} t={t}: {prod}");
    }

    #[test]
    fn fundamental_function_is_nondecreasing(x in halfline_space()) {
        let mut prev = 0.0;
        for k in -40..=40 {
            let phi = fundamental_function_f64(&x, 2f64.powi(k));
            prop_assert!(phi >= prev * (1.0 - 1e-9), "{x}: not nondecreasing at 2^{k}");
            prev = phi;
        }
    }

    #[test]
    fn fundamental_function_of_a_norm_is_quasiconcave(x in halfline_space()) {
        prop_assume!(x.is_normed());
        let mut prev = f64::INFINITY;
        for k in -40..=40 {
            let t = 2f64.powi(k);
            let ratio = fundamental_function_f64(&x, t) / t;
            prop_assert!(ratio <= prev * (1.0 + 1e-9), "{x}: phi/t increases at {t}");
            prev = ratio;
        }
    }

    #[test]
    fn triangle_inequality_on_normed_spaces(f in halfline_fn(), g in halfline_fn(), x in halfline_space()) {
        prop_assume!(x.is_normed());
        let lhs = lz_norm(&f.add(&g).unwrap(), &x).unwrap();
        let rhs = lz_norm(&f, &x).unwrap() + lz_norm(&g, &x).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-9), "{x}: {lhs} > {rhs}");
    }

    #[test]
    fn holder_inequality_for_lebesgue_pairs(f in halfline_fn(), g in halfline_fn(), p in (3i64..=12).prop_map(|k| q(k, 2))) {
        let conj = &p / (&p - q(1, 1));
        let x = LZSpace::lebesgue(ExtRational::Finite(p));
        let xc = LZSpace::lebesgue(ExtRational::Finite(conj));
        let pairing = to_f64(&holder_pairing(&f, &g).unwrap());
        let bound = lz_norm(&f, &x).unwrap() * lz_norm(&g, &xc).unwrap();
        prop_assert!(pairing <= bound * (1.0 + 1e-9));
    }
}

#[test]
fn generated_spaces_cover_normed_and_quasi_normed() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    let (mut normed, mut other) = (0, 0);
    for _ in 0..200 {
        let x = halfline_space().new_tree(&mut runner).unwrap().current();
        if x.is_normed() {
            normed += 1;
        } else {
            other += 1;
        }
    }
    assert!(normed > 20 && other > 20, "{normed} {other}");
}

#[test]
fn quasi_normed_fundamental_function_can_fail_quasiconcavity() {
    // φ(t)/t averages the weight t^{−1/3}ℓ(t), which increases on (1, e²), so φ is only
    // equivalent to a quasiconcave function here.
    let x = space("L(p=3/2,q=1,ainf=1)");
    assert!(!x.is_normed());
    let (r2, r4) = (fundamental_function_f64(&x, 2.0) / 2.0, fundamental_function_f64(&x, 4.0) / 4.0);
    assert!(r4 > r2);
    assert!(r4 < 1.1 * r2);
}
