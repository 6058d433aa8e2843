//! Zero-temperature Casimir-Polder energy of an atom above graphene.
//!
//! `cargo run --example zero_temperature_energy`

use graphene_cp::lifshitz::{energy_zero_t, phi, EvalOptions};
use graphene_cp::reflection::reflection_zero_t;
use graphene_cp::poltensor::TensorPoint;
use graphene_cp::units::{make_thermal_geometry, AtomSpec, ScaledAtom, CODATA_2018};

pub fn run_example() -> graphene_cp::Result<()> {
    let opts = EvalOptions::default();
    let g = opts.graphene;
    // Roughly hydrogen-like static polarizability, no magnetic response.
    let atom = AtomSpec::from_atomic_units("H-like", 4.5, 0.0)?;

    // Φ(0) reduces to 4[α̂ r_TM(0) + β̂ r_TE(0)].
    let unit = ScaledAtom::new(1.0, 1.0);
    let r0 = reflection_zero_t(&TensorPoint::new(0.0, 1.0, 0.0)?, &g)?;
    let phi0 = phi(0.0, &unit, &g)?;
    println!("Phi(0) = {:.12} (closed form {:.12})", phi0.value, 4.0 * (r0.r_tm + r0.r_te));

    println!("{:>10} {:>14} {:>12}", "a [nm]", "E0 [J]", "E0*a^4");
    let mut last = None;
    for a_nm in [50.0, 100.0, 200.0, 500.0, 1000.0] {
        let a = a_nm * 1e-9;
        let tg = make_thermal_geometry(a, 0.0, &g, &CODATA_2018)?;
        let e0 = energy_zero_t(&atom, &tg, &opts)?;
        // Static responses make E0 an exact a⁻⁴ law.
        println!("{a_nm:>10} {e0:>14.6e} {:>12.6e}", e0 * a.powi(4));
        last = Some(e0);
    }
    assert!(last.unwrap() < 0.0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
