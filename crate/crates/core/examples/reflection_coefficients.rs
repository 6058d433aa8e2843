//! TM and TE reflection coefficients with and without thermal corrections.
//!
//! `cargo run --example reflection_coefficients`

use graphene_cp::asymptotics::tm_correction_coefficient;
use graphene_cp::poltensor::TensorPoint;
use graphene_cp::reflection::{reflection_full, reflection_thermal_correction, reflection_zero_t};
use graphene_cp::units::{GrapheneModel, CODATA_2018};
use std::f64::consts::PI;

pub fn run_example() -> graphene_cp::Result<()> {
    let g = GrapheneModel::default();
    let r = reflection_zero_t(&TensorPoint::new(0.0, 1.0, 0.0)?, &g)?;
    println!("zero frequency, T = 0: r_TM = {:.6}, r_TE = {:.4e}", r.r_tm, r.r_te);

    let tau = 1e-3;
    println!("{:>5} {:>12} {:>12} {:>12} {:>10}", "y", "r_TM", "dr_TM", "dr_TM full", "dr/96-form");
    for y in [0.5, 1.0, 2.0, 5.0] {
        let p = TensorPoint::matsubara(1, y, tau)?;
        let zero = reflection_zero_t(&p, &g)?;
        let lin = reflection_thermal_correction(&p, &g)?;
        let full = reflection_full(&p, &g)?;
        let form = tm_correction_coefficient(&p, &g, CODATA_2018.zeta3, 96.0) * (tau / (2.0 * PI)).powi(3);
        println!(
            "{y:>5} {:>12.6e} {:>12.4e} {:>12.4e} {:>10.5}",
            zero.r_tm,
            lin.r_tm,
            full.r_tm - zero.r_tm,
            lin.r_tm / form
        );
        assert!(full.within_bounds());
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
