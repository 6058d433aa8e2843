//! Abel–Plana self-test on the exponential family `Φ(t) = e^{-st}`.
//!
//! For this family `i[Φ(it) − Φ(−it)] = 2 sin(st)`, so the formula reads
//! `Σ'_{l≥0} e^{-sl} = 1/s + 2∫₀^∞ sin(st)/(e^{2πt} − 1) dt`.

use super::quadrature::{integrate_panels, Tolerance};
use super::series::sum_matsubara;
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// `|Σ' e^{-sl} − 1/s − 2∫ sin(st)/(e^{2πt}−1) dt|`, all sides computed numerically.
pub fn abel_plana_residual(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("Abel-Plana test needs s > 0, got {s}")));
    }
    let sum = sum_matsubara(|l| Ok((-s * l as f64).exp()), 1e-15, 100_000)?;
    let boundary = 1.0 / s;
    // The Bose factor decays like e^{-2πt}; beyond t = 8 it is below 1e-21.
    let mut edges = vec![0.0];
    let step = (0.5 / s).min(0.5);
    let mut t = step;
    while t < 8.0 {
        edges.push(t);
        t += step;
    }
    edges.push(8.0);
    let oscillatory = integrate_panels(
        |t| {
            if t == 0.0 {
                return Ok(s / (2.0 * PI));
            }
            Ok((s * t).sin() / (2.0 * PI * t).exp_m1())
        },
        &edges,
        Tolerance::l1(1e-14).with_abs(1e-18),
    )?;
    Ok((sum.value - boundary - 2.0 * oscillatory.value).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_holds() {
        for s in [0.5, 1.0, 5.0, 40.0] {
            let r = abel_plana_residual(s).unwrap();
            assert!(r <= 1e-10, "s = {s}: residual {r:e}");
        }
    }

    #[test]
    fn closed_form_value() {
        let s: f64 = 1.0;
        let lhs = 0.5 + 1.0 / (s.exp() - 1.0);
        assert!((lhs - 0.5 / (0.5 * s).tanh()).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(abel_plana_residual(0.0).is_err());
    }
}
