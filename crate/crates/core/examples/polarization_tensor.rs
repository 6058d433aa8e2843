//! Polarization tensor of graphene: zero-temperature parts, thermal
//! corrections, and the two zero-frequency representations.
//!
//! `cargo run --example polarization_tensor`

use graphene_cp::asymptotics::pol_ratio_asymptotics;
use graphene_cp::poltensor::{tensor_values, thermal_ratios, zero_freq_ratios, TensorPoint};
use graphene_cp::units::{GrapheneModel, CODATA_2018};
use std::f64::consts::PI;

pub fn run_example() -> graphene_cp::Result<()> {
    let g = GrapheneModel::default();

    let p = TensorPoint::matsubara(1, 1.0, 1e-2)?;
    let v = tensor_values(&p, &g, 1e-10)?;
    println!("zeta = {}, y = {}, tau = {}", p.zeta, p.y, p.tau);
    println!("  Pi00 = {:.6e} + {:.6e}", v.pi00_zero_t, v.delta_pi00);
    println!("  Pi   = {:.6e} + {:.6e}", v.pi_zero_t, v.delta_pi);

    // Low-temperature ratios against their leading closed forms.
    for tau in [1e-3, 1e-4] {
        let p = TensorPoint::matsubara(1, 1.0, tau)?;
        let r = thermal_ratios(&p, &g, 1e-12)?;
        let (a00, a) = pol_ratio_asymptotics(&p, &g, CODATA_2018.zeta3);
        println!("tau {tau:e}: rho00 {:.6e} (leading {a00:.6e}), rho {:.6e} (leading {a:.6e})", r.ratio00, r.ratio);
    }

    // At ζ = 0 the u-integral and the finite x-integral must agree.
    for b_tilde in [2.0, 10.0, 100.0] {
        let tau = 2.0 * PI * g.v_tilde / b_tilde;
        let u = thermal_ratios(&TensorPoint::new(0.0, 1.0, tau)?, &g, 1e-13)?;
        let x = zero_freq_ratios(1.0, tau, &g, 1e-13)?;
        println!(
            "B~ = {b_tilde:>5}: rho00 {:.12e} vs {:.12e}; rho {:.12e} vs {:.12e}",
            u.ratio00, x.ratio00, u.ratio, x.ratio
        );
        assert!((u.ratio00 / x.ratio00 - 1.0).abs() < 1e-8);
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
