//! Free energy split into the zero-temperature energy and the three thermal
//! corrections, next to their closed-form low-temperature forms.
//!
//! `cargo run --release --example free_energy_breakdown`

use graphene_cp::asymptotics::{delta1_asymptotic, delta2_l0_asymptotic, delta2_lgeq1_asymptotic};
use graphene_cp::lifshitz::{free_energy_breakdown, EvalOptions};
use graphene_cp::units::{make_thermal_geometry, AtomSpec, CODATA_2018};

pub fn run_example() -> graphene_cp::Result<()> {
    let opts = EvalOptions::default();
    let g = opts.graphene;
    let a = 200e-9;
    let atom = AtomSpec::from_atomic_units("test", 100.0, 20.0)?;

    for t in [300.0, 30.0, 3.0] {
        let tg = make_thermal_geometry(a, t, &g, &CODATA_2018)?;
        let b = free_energy_breakdown(&atom, &tg, &opts)?;
        println!("T = {t} K, tau = {:.4e}", tg.tau);
        println!("  E0           {:>13.5e} J", b.e0);
        println!("  d1           {:>13.5e} J  (closed form {:.5e})", b.d1, delta1_asymptotic(&atom, &tg, &g));
        println!("  d2, l >= 1   {:>13.5e} J  (closed form {:.5e})", b.d2_lgeq1, delta2_lgeq1_asymptotic(&atom, &tg, &g));
        println!("  d2, l = 0    {:>13.5e} J  (closed form {:.5e})", b.d2_l0, delta2_l0_asymptotic(&atom, &tg, &g));
        println!("  F numeric    {:>13.5e} J", b.f_total_numeric);
        println!("  F decomposed {:>13.5e} J", b.f_total_decomposed);
        let d = b.dimensionless(&tg);
        println!("  8F/(k_B T_eff) = {:.8e}", d.f_total_numeric);
        assert!(b.flags.is_empty(), "{:?}", b.flags);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
