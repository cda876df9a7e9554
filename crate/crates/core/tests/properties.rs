use std::sync::Arc;

use bcfks::periods::power_constant_terms;
use bcfks::{constant_terms_of_powers, IntPoly, Integer, LaurentPolynomial, VariableTable};
use num_traits::Zero;
use proptest::prelude::*;

fn vars() -> Arc<VariableTable> {
    VariableTable::new(["x", "y", "z"]).unwrap()
}

fn poly_strategy(max_terms: usize, max_exp: i32) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(
        (prop::collection::vec(-max_exp..=max_exp, 3), -5i64..=5),
        0..=max_terms,
    )
    .prop_map(|terms| {
        IntPoly::from_terms(vars(), terms.into_iter().map(|(e, c)| (e, Integer::from(c)))).unwrap()
    })
}

/// `[f^i]` with every power recomputed from scratch by binary powering.
fn naive_constant_terms(f: &IntPoly, order: usize) -> Vec<Integer> {
    (0..=order as u32).map(|i| f.pow_binary(i).constant_term()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(6, 2), b in poly_strategy(6, 2), c in poly_strategy(6, 2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &IntPoly::one(vars()), a.clone());
        prop_assert!(a.terms().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn powers_add(a in poly_strategy(4, 2), i in 0u32..4, j in 0u32..4) {
        prop_assert_eq!(a.pow(i + j), &a.pow(i) * &a.pow(j));
        prop_assert_eq!(a.pow_binary(i + j), a.pow(i + j));
    }

    #[test]
    fn constant_terms_agree_with_naive(f in poly_strategy(5, 2), order in 0usize..6) {
        let fast = constant_terms_of_powers(&f, order).coefficients;
        prop_assert_eq!(fast, naive_constant_terms(&f, order));
    }

    #[test]
    fn machine_and_big_coefficients_agree(
        terms in prop::collection::vec((prop::collection::vec(-2i32..=2, 3), -3i64..=3), 1..5),
        order in 0usize..5,
    ) {
        let small = LaurentPolynomial::<i128>::from_terms(vars(), terms.iter().map(|(e, c)| (e.clone(), i128::from(*c)))).unwrap();
        let big = IntPoly::from_terms(
            vars(),
            terms.into_iter().map(|(e, c)| (e, Integer::from(c))),
        ).unwrap();
        let a: Vec<Integer> = power_constant_terms(&small, order).into_iter().map(Integer::from).collect();
        prop_assert_eq!(a, power_constant_terms(&big, order));
    }

    #[test]
    fn monomial_substitution_is_a_homomorphism(
        a in poly_strategy(4, 2),
        b in poly_strategy(4, 2),
        images in prop::collection::vec(prop::collection::vec(-2i32..=2, 2), 3),
    ) {
        let target = VariableTable::new(["u", "v"]).unwrap();
        let s = |p: &IntPoly| p.substitute_monomial(&target, &images, None).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn scaled_substitution_without_factors_is_monomial(
        a in poly_strategy(5, 2),
        images in prop::collection::vec(prop::collection::vec(-2i32..=2, 2), 3),
    ) {
        let target = VariableTable::new(["u", "v"]).unwrap();
        let factor = IntPoly::from_terms(
            target.clone(),
            [(vec![1, 0], Integer::from(1)), (vec![0, -1], Integer::from(2))],
        ).unwrap();
        let scaled: Vec<bcfks::laurent::ScaledImage> = images
            .iter()
            .map(|m| bcfks::laurent::ScaledImage { monomial: m.clone(), factor_exponents: vec![0] })
            .collect();
        prop_assert_eq!(
            a.substitute_scaled(&target, &scaled, &[factor]).unwrap(),
            a.substitute_monomial(&target, &images, None).unwrap()
        );
    }

    #[test]
    fn integer_evaluation_matches_rational(
        a in poly_strategy(8, 3),
        point in prop::collection::vec((prop::sample::select(vec![-5i64, -3, -2, -1, 1, 2, 4, 7]), 1i64..6), 3),
    ) {
        let point: Vec<bcfks::Rational> = point
            .into_iter()
            .map(|(p, q)| bcfks::Rational::new(p.into(), q.into()))
            .collect();
        prop_assert_eq!(a.evaluate_exact(&point).unwrap(), a.evaluate(&point).unwrap());
    }

    #[test]
    fn json_round_trip(a in poly_strategy(8, 3)) {
        prop_assert_eq!(IntPoly::from_json(&a.to_json()).unwrap(), a);
    }
}
