mod common;

use common::props::*;
use common::{form_strategy, sparse_form_strategy};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold(
        a in form_strategy(small_ring(), 2),
        b in form_strategy(small_ring(), 2),
        c in form_strategy(small_ring(), 2),
    ) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn mixed_degree_products(a in sparse_form_strategy(small_ring(), 1), b in form_strategy(small_ring(), 3)) {
        let ab = a.mul(&b);
        prop_assert!(ab.is_zero() || ab.degree() == 4);
        prop_assert_eq!(common::Poly::from_form(&ab), common::Poly::from_form(&a).mul(&common::Poly::from_form(&b)));
    }

    #[test]
    fn evaluation_is_a_ring_map(
        a in form_strategy(small_ring(), 2),
        b in form_strategy(small_ring(), 2),
        pt in prop::collection::vec(0u32..101, 3),
    ) {
        eval_homomorphism(&a, &b, &pt)?;
    }

    #[test]
    fn determinants_match_cofactor_expansion(m in (1usize..=5).prop_flat_map(square_matrix)) {
        determinant_oracle(&m)?;
    }

    #[test]
    fn maximal_minors_match_cofactor_expansion(m in (1usize..=4).prop_flat_map(wide_matrix)) {
        maximal_minor_oracle(&m)?;
    }

    #[test]
    fn determinant_is_linear_in_a_row(
        (m, x, y) in (1usize..=4).prop_flat_map(|n| (
            square_matrix(n),
            prop::collection::vec(sparse_form_strategy(p3_ring(), 1), n),
            prop::collection::vec(sparse_form_strategy(p3_ring(), 1), n),
        ))
    ) {
        row_multilinearity(&m, &x, &y)?;
    }

    #[test]
    fn pfaffians_match_matchings((n, upper) in (2usize..=6).prop_flat_map(|n| {
        (Just(n), prop::collection::vec(sparse_form_strategy(p3_ring(), 1), n * (n - 1) / 2))
    })) {
        pfaffian_oracle(&skew_from(&upper, n))?;
    }

    #[test]
    fn adding_a_generator_lowers_the_hilbert_function((ideal, extra) in ideal_strategy(3)) {
        hf_monotone(&ideal, &extra)?;
    }

    #[test]
    fn monomial_ideals_match_counting(gens in monomial_gens()) {
        monomial_hf_oracle(&gens)?;
    }

    #[test]
    fn tensor_views_round_trip(m in (1usize..=5).prop_flat_map(linear_matrix)) {
        tensor_round_trip(&m)?;
    }
}

#[test]
fn six_by_six_determinant() {
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(4));
    runner.run(&square_matrix(6), |m| determinant_oracle(&m)).unwrap();
}
