//! Property suites: complexes square to zero, duality, normal forms, the
//! Schouten bracket, diagram enumeration and report serialization.

mod support;

use poisson_cohom::algebra::{RatPoly, Rational};
use poisson_cohom::casimir::{casimir_space, normal_form};
use poisson_cohom::fixtures;
use support::checks;

#[test]
fn every_complex_squares_to_zero_and_preserves_weight() {
    checks::coboundary_squares_to_zero().unwrap();
}

#[test]
fn boundary_squares_to_zero() {
    checks::boundary_squares_to_zero().unwrap();
}

#[test]
fn homology_equals_cohomology() {
    checks::homology_equals_cohomology().unwrap();
}

#[test]
fn constants_split_additively() {
    checks::constants_split_additively().unwrap();
}

#[test]
fn flattening_commutes_with_differentials() {
    checks::flattening_commutes_with_differentials().unwrap();
}

#[test]
fn nabla_matches_brute_force() {
    checks::nabla_matches_brute_force().unwrap();
}

#[test]
fn normal_form_is_idempotent_and_kills_exactly_casimirs() {
    checks::normal_form_properties(64).unwrap();
}

#[test]
fn schouten_graded_jacobi() {
    checks::schouten_graded_jacobi(64).unwrap();
}

#[test]
fn schouten_graded_antisymmetry() {
    checks::schouten_graded_antisymmetry(64).unwrap();
}

#[test]
fn report_text_round_trip() {
    checks::report_text_round_trip(64).unwrap();
}

#[test]
fn zero_polynomial_has_zero_normal_form() {
    let cas = casimir_space(&fixtures::sl2(), 2);
    assert!(normal_form(&cas, &RatPoly::zero(3)).unwrap().is_zero());
    assert!(num::Zero::is_zero(&Rational::from_integer(0.into())));
}
