//! One test per acceptance criterion. Each prints a PASS/FAIL line with the
//! measured quantities before asserting.

use graphene_cp::validation::{run_check, CheckOutcome};

fn check(id: u8) {
    let outcome: CheckOutcome = run_check(id);
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn zero_frequency_representations_agree() {
    check(1);
}

#[test]
fn i_integral_closed_forms_and_expansions() {
    check(2);
}

#[test]
fn abel_plana_residual_is_negligible() {
    check(3);
}

#[test]
fn implicit_correction_follows_quartic_law() {
    check(4);
}

#[test]
fn dominant_explicit_correction_follows_cubic_law() {
    check(5);
}

#[test]
fn zero_frequency_correction_log_coefficient() {
    check(6);
}

#[test]
fn entropy_vanishes_quadratically() {
    check(7);
}

#[test]
fn decomposition_error_is_second_order() {
    check(8);
}

#[test]
fn q_coefficient_ratio() {
    check(9);
}

#[test]
fn tm_correction_prefactor_is_96() {
    check(10);
}

#[test]
fn reflection_coefficients_stay_in_bounds() {
    check(11);
}

#[test]
fn sweep_output_is_deterministic() {
    check(12);
}
