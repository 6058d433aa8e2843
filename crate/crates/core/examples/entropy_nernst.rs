//! Entropy on a falling temperature sequence: positive and vanishing as T².
//!
//! `cargo run --release --example entropy_nernst`

use graphene_cp::asymptotics::entropy_low_t;
use graphene_cp::lifshitz::{entropy, EvalOptions};
use graphene_cp::units::{make_thermal_geometry, AtomSpec, CODATA_2018};

pub fn run_example() -> graphene_cp::Result<()> {
    let opts = EvalOptions::default();
    let g = opts.graphene;
    let a = 200e-9;
    let atom = AtomSpec::new("unit", a * a * a, a * a * a)?;
    let temperatures = [3.0, 1.0, 0.3];
    let mut values = Vec::new();
    println!("{:>8} {:>12} {:>14} {:>14}", "T [K]", "tau", "S [J/K]", "S/T^2");
    for t in temperatures {
        let tg = make_thermal_geometry(a, t, &g, &CODATA_2018)?;
        let s = entropy(&atom, &tg, &opts)?;
        println!("{t:>8} {:>12.4e} {s:>14.6e} {:>14.6e}", tg.tau, s / (t * t));
        values.push(s);
    }
    let slope = (values[2] / values[0]).ln() / (temperatures[2] / temperatures[0]).ln();
    println!("log-log slope {slope:.4}");
    let tg = make_thermal_geometry(a, 0.3, &g, &CODATA_2018)?;
    println!("closed-form S at 0.3 K: {:.6e} J/K", entropy_low_t(&atom, &tg, &g));
    assert!(values.iter().all(|&s| s > 0.0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
