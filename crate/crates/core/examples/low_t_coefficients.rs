//! Low-temperature coefficients and the closed-form free energy pieces.
//!
//! `cargo run --example low_t_coefficients`

use graphene_cp::asymptotics::{
    coefficients, delta1_asymptotic, delta2_l0_asymptotic, delta2_lgeq1_asymptotic, entropy_low_t,
    entropy_next_order_magnitude,
};
use graphene_cp::units::{make_thermal_geometry, AtomSpec, GrapheneModel, ScaledAtom, CODATA_2018};

pub fn run_example() -> graphene_cp::Result<()> {
    let g = GrapheneModel::default();
    for (alpha, beta) in [(1.0, 1.0), (1.0, 0.0), (0.0, 1.0)] {
        let c = coefficients(&ScaledAtom::new(alpha, beta), &g);
        println!("alpha^ = {alpha}, beta^ = {beta}");
        println!("  C_TM {:.6e}  C_TE {:.6e}", c.c_tm, c.c_te);
        println!("  Q1   {:.6e}  Q2   {:.6e}  Q1/Q2 {:.2}", c.q1, c.q2, c.q1 / c.q2);
        println!("  R1   {:.6e}  R2   {:.6e}", c.r1, c.r2);
    }

    let a = 200e-9;
    let atom = AtomSpec::from_atomic_units("test", 100.0, 20.0)?;
    println!("{:>6} {:>13} {:>13} {:>13} {:>13} {:>13}", "T [K]", "d1", "d2 l>=1", "d2 l=0", "S", "next S");
    for t in [1.0, 0.1, 0.01] {
        let tg = make_thermal_geometry(a, t, &g, &CODATA_2018)?;
        println!(
            "{t:>6} {:>13.5e} {:>13.5e} {:>13.5e} {:>13.5e} {:>13.5e}",
            delta1_asymptotic(&atom, &tg, &g),
            delta2_lgeq1_asymptotic(&atom, &tg, &g),
            delta2_l0_asymptotic(&atom, &tg, &g),
            entropy_low_t(&atom, &tg, &g),
            entropy_next_order_magnitude(&atom, &tg, &g)
        );
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
