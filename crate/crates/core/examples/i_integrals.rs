//! The integrals ∫₀¹ dx/(b+√(x(1−x)))ⁿ for n = 2, 3: closed forms, direct
//! quadrature, and the small-b expansions.
//!
//! `cargo run --example i_integrals`

use graphene_cp::asymptotics::{i2, i3, i_expansions, i_quadrature};

pub fn run_example() -> graphene_cp::Result<()> {
    println!("{:>8} {:>18} {:>18} {:>18} {:>18}", "b", "I2", "I2 quadrature", "I3", "I3 quadrature");
    for b in [0.05, 0.1, 0.25, 0.4, 0.5, 1.0] {
        println!(
            "{b:>8} {:>18.14} {:>18.14} {:>18.14} {:>18.14}",
            i2(b)?,
            i_quadrature(2, b, 1e-13)?,
            i3(b)?,
            i_quadrature(3, b, 1e-13)?
        );
    }
    println!("{:>8} {:>18} {:>18}", "b", "I2 remainder", "I3 remainder");
    for b in [1e-2, 1e-3, 1e-4] {
        let (e2, e3) = i_expansions(b);
        println!("{b:>8} {:>18.6e} {:>18.6e}", i2(b)? - e2, i3(b)? - e3);
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
