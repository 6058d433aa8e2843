//! Cross-checks of the free-energy pieces against each other and against
//! the zero-temperature energy.

use approx::assert_relative_eq;
use graphene_cp::asymptotics::{delta1_asymptotic, delta2_l0_asymptotic, delta2_lgeq1_asymptotic};
use graphene_cp::lifshitz::{
    delta1_implicit, delta2_l0, delta2_lgeq1, energy_zero_t, entropy, free_energy_breakdown, free_energy_full,
    EvalOptions,
};
use graphene_cp::units::{AtomSpec, GrapheneModel};
use graphene_cp::validation::{geometry_at_tau, reference_atom, REFERENCE_SEPARATION};

const A: f64 = REFERENCE_SEPARATION;

#[test]
fn energy_scales_as_inverse_fourth_power() {
    let opts = EvalOptions::default();
    let atom = AtomSpec::from_atomic_units("x", 80.0, 4.0).unwrap();
    let e1 = energy_zero_t(&atom, &geometry_at_tau(A, 0.0).unwrap(), &opts).unwrap();
    let e2 = energy_zero_t(&atom, &geometry_at_tau(2.0 * A, 0.0).unwrap(), &opts).unwrap();
    assert_relative_eq!(e2 / e1, 1.0 / 16.0, max_relative = 1e-12);
}

#[test]
fn low_temperature_sequence_approaches_zero_temperature_energy() {
    let opts = EvalOptions::default();
    let g = GrapheneModel::default();
    let atom = reference_atom(A);
    let e0 = energy_zero_t(&atom, &geometry_at_tau(A, 0.0).unwrap(), &opts).unwrap();
    let mut last = f64::INFINITY;
    let mut values = Vec::new();
    for tau in [1e-2, 5e-3, 2.5e-3] {
        let tg = geometry_at_tau(A, tau).unwrap();
        let f = free_energy_full(&atom, &tg, &opts).unwrap();
        let gap = (f - e0).abs();
        let bound = delta1_asymptotic(&atom, &tg, &g).abs()
            + delta2_lgeq1_asymptotic(&atom, &tg, &g).abs()
            + delta2_l0_asymptotic(&atom, &tg, &g).abs();
        assert!(gap < last && gap <= bound, "tau {tau}: gap {gap:e}, bound {bound:e}");
        last = gap;
        values.push(f);
    }
    // The thermal part is cubic in τ at leading order: one Richardson step
    // on the two lowest temperatures lands on E0.
    let extrapolated = (8.0 * values[2] - values[1]) / 7.0;
    assert_relative_eq!(extrapolated, e0, max_relative = 1e-4);
}

#[test]
fn electric_atom_is_attracted() {
    let opts = EvalOptions::default();
    let atom = AtomSpec::from_atomic_units("x", 30.0, 0.0).unwrap();
    for tau in [1e-3, 1e-2, 0.1, 1.0] {
        let f = free_energy_full(&atom, &geometry_at_tau(A, tau).unwrap(), &opts).unwrap();
        assert!(f < 0.0, "tau {tau}: {f:e}");
    }
}

#[test]
fn ordering_of_corrections_at_low_temperature() {
    let opts = EvalOptions::default();
    let atom = reference_atom(A);
    let tg = geometry_at_tau(A, 1e-3).unwrap();
    let d1 = delta1_implicit(&atom, &tg, &opts).unwrap().abs();
    let d21 = delta2_lgeq1(&atom, &tg, &opts).unwrap().abs();
    let d20 = delta2_l0(&atom, &tg, &opts).unwrap().abs();
    assert!(d21 > d20 && d20 > d1, "{d21:e} {d20:e} {d1:e}");
}

#[test]
fn decomposition_agrees_with_full_at_low_temperature() {
    let opts = EvalOptions::default();
    let atom = reference_atom(A);
    let tg = geometry_at_tau(A, 5e-3).unwrap();
    let b = free_energy_breakdown(&atom, &tg, &opts).unwrap();
    assert!(b.flags.is_empty());
    let thermal = (b.f_total_numeric - b.e0).abs();
    assert!((b.f_total_decomposed - b.f_total_numeric).abs() < 0.3 * thermal);
    assert_relative_eq!(b.f_total_numeric, free_energy_full(&atom, &tg, &opts).unwrap(), max_relative = 1e-12);
}

#[test]
fn entropy_positive_and_zero_for_empty_atom() {
    let opts = EvalOptions::default();
    let tg = geometry_at_tau(A, 2e-3).unwrap();
    assert!(entropy(&reference_atom(A), &tg, &opts).unwrap() > 0.0);
    assert_eq!(entropy(&AtomSpec::new("none", 0.0, 0.0).unwrap(), &tg, &opts).unwrap(), 0.0);
}

#[test]
fn electric_only_zero_frequency_term() {
    let opts = EvalOptions::default();
    let tg = geometry_at_tau(A, 3e-3).unwrap();
    let e = delta2_l0(&AtomSpec::new("e", A * A * A, 0.0).unwrap(), &tg, &opts).unwrap();
    let m = delta2_l0(&AtomSpec::new("m", 0.0, A * A * A).unwrap(), &tg, &opts).unwrap();
    let both = delta2_l0(&reference_atom(A), &tg, &opts).unwrap();
    assert_relative_eq!(e + m, both, max_relative = 1e-10);
    assert!(e < 0.0);
}
