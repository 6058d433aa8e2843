//! The numerical kernel on closed-form references: quadrature, Matsubara and
//! alternating sums, Richardson differentiation and the Abel-Plana identity.
//!
//! `cargo run --example numerics_selftest`

use graphene_cp::numerics::{
    abel_plana_residual, derivative_central, integrate_decaying, integrate_finite, sum_alternating, sum_matsubara,
};
use std::f64::consts::PI;

pub fn run_example() -> graphene_cp::Result<()> {
    let r = integrate_decaying(|t| Ok(t.powi(3) / ((2.0 * PI * t).exp() - 1.0)), 0.0, 1e-12)?;
    println!("int t^3/(e^(2 pi t)-1) = {:.15} (1/240 = {:.15}), {} evaluations", r.value, 1.0 / 240.0, r.evaluations);

    let r = integrate_finite(|x| Ok((x * (1.0 - x)).sqrt()), 0.0, 1.0, 1e-12, true)?;
    println!("int sqrt(x(1-x)) = {:.15} (pi/8 = {:.15})", r.value, PI / 8.0);

    let s = sum_matsubara(|l| Ok((-(l as f64)).exp()), 1e-14, 1000)?;
    println!("sum' e^-l = {:.15} (1/2 + 1/(e-1) = {:.15}), {} terms", s.value, 0.5 + 1.0 / (1f64.exp() - 1.0), s.terms_used);

    // Algebraic decay needs many terms for a modest tolerance.
    let s = sum_matsubara(|l| Ok(1.0 / ((l + 1) as f64).powi(2)), 1e-5, 1 << 24)?;
    let exact = 0.5 + PI * PI / 6.0 - 1.0;
    println!("sum' 1/(l+1)^2 = {:.8} ({exact:.8}), {} terms, tail bound {:.1e}", s.value, s.terms_used, s.tail_bound);

    let s = sum_alternating(|n| if n % 2 == 1 { 1.0 } else { -1.0 } / (n as f64).powi(3), 1e-12)?;
    println!("eta(3) = {:.12} (0.75 zeta(3) = {:.12})", s.value, 0.75 * 1.202_056_903_159_594);

    let d = derivative_central(|x| Ok(x.sin()), 1.0, 0.1)?;
    println!("d/dx sin at 1 = {:.14} (cos 1 = {:.14})", d, 1f64.cos());

    for s in [0.5, 1.0, 5.0, 40.0] {
        println!("Abel-Plana residual at s = {s}: {:.2e}", abel_plana_residual(s)?);
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
