use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::Config;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use painleve_dynamics::cohomology::{alpha, periodic_count, s_product, sigma_star_product};
use painleve_dynamics::params::{rh, KappaParams};
use painleve_dynamics::surface::{f_eval, sigma_apply, word_apply, SurfacePoint};
use painleve_dynamics::word::{canonical_form, classify, loop_to_coxeter, LoopWord};
use painleve_dynamics::CoxeterWord;

fn any_word(max: usize) -> impl Strategy<Value = CoxeterWord> {
    prop::collection::vec(1u8..=3, 0..max).prop_map(|l| CoxeterWord::new(l).unwrap())
}

fn reduced_word(min: usize, max: usize) -> impl Strategy<Value = CoxeterWord> {
    any_word(max)
        .prop_map(|w| w.free_reduce())
        .prop_filter("length", move |w| w.len() >= min)
}

fn stable_even_word() -> impl Strategy<Value = CoxeterWord> {
    (any::<u64>(), 1usize..7).prop_map(|(seed, half)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        CoxeterWord::random_stable(&mut rng, 2 * half)
    })
}

fn loop_word() -> impl Strategy<Value = LoopWord> {
    prop::collection::vec((1u8..=3, prop::bool::ANY), 0..16).prop_map(|v| {
        let pairs: Vec<(u8, i8)> = v.into_iter().map(|(i, s)| (i, if s { 1 } else { -1 })).collect();
        LoopWord::from_pairs(&pairs).unwrap()
    })
}

fn point() -> impl Strategy<Value = SurfacePoint> {
    prop::array::uniform6(-3.0f64..3.0).prop_map(|a| {
        SurfacePoint([
            Complex64::new(a[0], a[1]),
            Complex64::new(a[2], a[3]),
            Complex64::new(a[4], a[5]),
        ])
    })
}

proptest! {
    #![proptest_config(Config { failure_persistence: None, ..Config::default() })]

    #[test]
    fn free_reduce_idempotent(w in any_word(30)) {
        let r = w.free_reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.free_reduce(), r);
    }

    #[test]
    fn free_reduce_respects_products(a in any_word(15), b in any_word(15)) {
        let lhs = a.compose(&b).free_reduce();
        let rhs = a.free_reduce().compose(&b.free_reduce()).free_reduce();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_cancels(w in any_word(30)) {
        prop_assert!(w.compose(&w.invert()).free_reduce().is_empty());
    }

    #[test]
    fn loop_translation_is_a_homomorphism(a in loop_word(), b in loop_word()) {
        let lhs = loop_to_coxeter(&a.concat(&b)).free_reduce();
        let rhs = loop_to_coxeter(&a).compose(&loop_to_coxeter(&b)).free_reduce();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn class_is_conjugacy_invariant(w in reduced_word(1, 20), c in reduced_word(0, 8)) {
        let conj = c.compose(&w).compose(&c.invert()).free_reduce();
        prop_assert_eq!(classify(&w), classify(&conj));
        prop_assert_eq!(canonical_form(&w).0, canonical_form(&conj).0);
    }

    #[test]
    fn alpha_invariant_under_rotation(w in reduced_word(2, 20), k in 0usize..20) {
        prop_assume!(w.is_analytically_stable());
        let r = w.rotate(k % w.len());
        prop_assume!(r.is_analytically_stable());
        prop_assert_eq!(alpha(&w).unwrap(), alpha(&r).unwrap());
    }

    #[test]
    fn alpha_matches_trace(w in reduced_word(2, 20)) {
        prop_assume!(w.is_analytically_stable());
        prop_assert_eq!(alpha(&w).unwrap(), s_product(&w).trace());
    }

    #[test]
    fn counts_grow_with_period(w in stable_even_word()) {
        prop_assume!(!classify(&w).is_elementary());
        let c1 = periodic_count(&w, 1).unwrap().affine;
        let c2 = periodic_count(&w, 2).unwrap().affine;
        prop_assert!(c1 >= BigInt::from(0));
        prop_assert!(c2 > c1);
    }

    #[test]
    fn pullback_is_multiplicative(a in reduced_word(0, 8), b in reduced_word(0, 8)) {
        let ab = CoxeterWord::new([a.letters(), b.letters()].concat()).unwrap();
        prop_assume!(ab.is_reduced());
        prop_assert_eq!(sigma_star_product(&ab), &sigma_star_product(&b) * &sigma_star_product(&a));
    }

    #[test]
    fn sigma_preserves_f(x in point(), i in 1u8..=3) {
        let theta = rh(&KappaParams::generic());
        let y = sigma_apply(i, &x, &theta);
        let scale = 1.0 + x.norm().powi(3);
        prop_assert!((f_eval(&y, &theta) - f_eval(&x, &theta)).norm() < 1e-12 * scale);
    }

    #[test]
    fn word_then_inverse_is_identity(x in point(), w in reduced_word(1, 4)) {
        let theta = rh(&KappaParams::generic());
        let y = word_apply(&w, &x, &theta).unwrap();
        let z = word_apply(&w.invert(), &y, &theta).unwrap();
        let scale = (1.0 + x.norm()).powi(2 * w.len() as i32);
        prop_assert!(z.dist(&x) < 1e-12 * scale);
    }
}
