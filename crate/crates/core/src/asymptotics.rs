//! Closed-form low-temperature behaviour.
//!
//! All coefficients take the scaled responses `α̂ = α₀/a³`, `β̂ = β₀/a³`, so
//! they are dimensionless. Energies are written with `t = k_B T a/(ħc) = τ/(4π)`;
//! for example the dominant correction `−48ζ(3)α(k_BT)³(Q₁+Q₂)/(ṽ²(ħc)²a)`
//! becomes `−48ζ(3)α k_BT t² (Q̂₁+Q̂₂)/ṽ²`.

use crate::error::{Error, Result};
use crate::lifshitz::{energy_zero_t, EvalOptions};
use crate::numerics::{integrate_panels, Tolerance};
use crate::poltensor::{g_tilde, TensorPoint};
use crate::units::{AtomSpec, GrapheneModel, ScaledAtom, ThermalGeometry};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LowTCoefficients {
    /// Implicit (T⁴) term, TM and TE parts.
    pub c_tm: f64,
    pub c_te: f64,
    /// Dominant T³ term from l ≥ 1.
    pub q1: f64,
    pub q2: f64,
    /// T⁴ ln T term from l = 0.
    pub r1: f64,
    pub r2: f64,
}

impl LowTCoefficients {
    pub fn c_sum(&self) -> f64 {
        self.c_tm + self.c_te
    }
    pub fn q_sum(&self) -> f64 {
        self.q1 + self.q2
    }
    pub fn r_sum(&self) -> f64 {
        self.r1 + self.r2
    }
}

pub fn coefficients(atom: &ScaledAtom, g: &GrapheneModel) -> LowTCoefficients {
    let (a0, b0) = (atom.alpha, atom.beta);
    let v = g.v_tilde;
    let ap = g.alpha_fs * PI;
    let d = ap + 2.0 * v;
    LowTCoefficients {
        c_tm: 2.0 * ap * a0 / (v * d.powi(3)) + (a0 + 3.0 * b0) / (3.0 * d),
        c_te: ap * v * a0 / 2.0 - ap * b0 / (2.0 * v),
        q1: (3.0 * a0 - b0) / (2.0 * d * d),
        q2: -(a0 - 3.0 * b0) / 4.0,
        r1: a0 / (d * d),
        r2: b0 / 4.0,
    }
}

/// `k_B T a/(ħc)`.
fn reduced_temperature(tg: &ThermalGeometry) -> f64 {
    tg.tau / (4.0 * PI)
}

/// `ln(2a k_B T/(ħṽc)) = ln(T/T_eff^g)`, up to the factor 2π: ln(τ/(2πṽ)).
fn graphene_log(tg: &ThermalGeometry, g: &GrapheneModel) -> f64 {
    (tg.tau / (2.0 * PI * g.v_tilde)).ln()
}

/// `−π³(k_BT)⁴(C_TM+C_TE)/(15(ħc)³)` in joules.
pub fn delta1_asymptotic(atom: &AtomSpec, tg: &ThermalGeometry, g: &GrapheneModel) -> f64 {
    let c = coefficients(&atom.scaled(tg.a), g);
    let t = reduced_temperature(tg);
    -PI.powi(3) * tg.thermal_energy() * t.powi(3) * c.c_sum() / 15.0
}

/// `−48ζ(3)α(k_BT)³(Q₁+Q₂)/(ṽ²(ħc)²a)` in joules.
pub fn delta2_lgeq1_asymptotic(atom: &AtomSpec, tg: &ThermalGeometry, g: &GrapheneModel) -> f64 {
    let c = coefficients(&atom.scaled(tg.a), g);
    let t = reduced_temperature(tg);
    -48.0 * tg.constants.zeta3 * g.alpha_fs * tg.thermal_energy() * t * t * c.q_sum() / (g.v_tilde * g.v_tilde)
}

/// `96αζ(3)(k_BT)⁴(R₁+R₂) ln(T/T_eff^g)/(ṽ²(ħc)³)` in joules; zero at T = 0.
pub fn delta2_l0_asymptotic(atom: &AtomSpec, tg: &ThermalGeometry, g: &GrapheneModel) -> f64 {
    if tg.temperature == 0.0 {
        return 0.0;
    }
    let c = coefficients(&atom.scaled(tg.a), g);
    let t = reduced_temperature(tg);
    96.0 * g.alpha_fs * tg.constants.zeta3 * tg.thermal_energy() * t.powi(3) * c.r_sum() * graphene_log(tg, g)
        / (g.v_tilde * g.v_tilde)
}

/// `E₀ + ` the dominant T³ correction, in joules.
pub fn free_energy_low_t(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<f64> {
    Ok(energy_zero_t(atom, tg, opts)? + delta2_lgeq1_asymptotic(atom, tg, &opts.graphene))
}

/// `144ζ(3)αk_B(k_BT)²(Q₁+Q₂)/(ṽ²(ħc)²a)` in J/K.
pub fn entropy_low_t(atom: &AtomSpec, tg: &ThermalGeometry, g: &GrapheneModel) -> f64 {
    let c = coefficients(&atom.scaled(tg.a), g);
    let t = reduced_temperature(tg);
    144.0 * tg.constants.zeta3 * g.alpha_fs * tg.constants.k_b * t * t * c.q_sum() / (g.v_tilde * g.v_tilde)
}

/// Size of the next entropy term, `k_B R₁ (k_BT a/ħc)³ |ln(T/T_eff^g)|`, in J/K.
pub fn entropy_next_order_magnitude(atom: &AtomSpec, tg: &ThermalGeometry, g: &GrapheneModel) -> f64 {
    if tg.temperature == 0.0 {
        return 0.0;
    }
    let c = coefficients(&atom.scaled(tg.a), g);
    tg.constants.k_b * c.r1 * reduced_temperature(tg).powi(3) * graphene_log(tg, g).abs()
}

fn check_b(b: f64) -> Result<()> {
    if b > 0.0 && b.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("I-integrals need b > 0, got {b}")))
    }
}

/// `∫₀¹ dx/(b+√(x(1−x)))ⁿ` by quadrature, using `x = sin²θ`.
pub fn i_quadrature(n: i32, b: f64, rel_tol: f64) -> Result<f64> {
    check_b(b)?;
    let mut edges = vec![0.0];
    let mut th = b.min(0.25);
    while th < 0.5 {
        edges.push(th);
        th *= 2.0;
    }
    edges.push(0.5);
    let mut full: Vec<f64> = edges.clone();
    full.extend(edges.iter().rev().skip(1).map(|e| FRAC_PI_2 - e));
    let r = integrate_panels(
        |th: f64| {
            let sc = th.sin() * th.cos();
            Ok(2.0 * sc / (b + sc).powi(n))
        },
        &full,
        Tolerance::relative(rel_tol),
    )?;
    Ok(r.value)
}

/// `ln((1−s)/(1+s)) − ln((1+2b−s)/(1+2b+s))` with `s = √(1−4b²)`.
fn log_part(b: f64) -> (f64, f64) {
    let s = (1.0 - 4.0 * b * b).sqrt();
    // 1 − s = 4b²/(1+s) keeps the small-b end accurate.
    let one_minus_s = 4.0 * b * b / (1.0 + s);
    let lg = (one_minus_s / (1.0 + s)).ln() - ((1.0 + 2.0 * b - s) / (1.0 + 2.0 * b + s)).ln();
    (s, lg)
}

/// `∫₀¹ dx/(b+√(x(1−x)))²`; closed form for b < 1/2, quadrature above.
pub fn i2(b: f64) -> Result<f64> {
    check_b(b)?;
    if b >= 0.5 {
        return i_quadrature(2, b, 1e-12);
    }
    let (s, lg) = log_part(b);
    Ok(-4.0 / (1.0 - 4.0 * b * b) * (1.0 + lg / s))
}

/// `∫₀¹ dx/(b+√(x(1−x)))³`; closed form for b < 1/2, quadrature above.
pub fn i3(b: f64) -> Result<f64> {
    check_b(b)?;
    if b >= 0.5 {
        return i_quadrature(3, b, 1e-12);
    }
    let (s, lg) = log_part(b);
    let d = 1.0 - 4.0 * b * b;
    Ok(4.0 / (d * d) * ((1.0 + 8.0 * b * b) / (2.0 * b) + 6.0 * b * lg / s))
}

/// Small-b expansions `(−4 ln b − 4, 2/b + 24 b ln b)`.
pub fn i_expansions(b: f64) -> (f64, f64) {
    (-4.0 * b.ln() - 4.0, 2.0 / b + 24.0 * b * b.ln())
}

/// Leading low-T forms of `ΔΠ̃₀₀/Π̃₀₀⁽⁰⁾` and `ΔΠ̃/Π̃⁽⁰⁾` at a point with ζ > 0.
pub fn pol_ratio_asymptotics(p: &TensorPoint, g: &GrapheneModel, zeta3: f64) -> (f64, f64) {
    let gt = g_tilde(p, g);
    let t3 = (p.tau / (2.0 * PI)).powi(3);
    let base = zeta3 / (PI * gt.powi(3)) * t3;
    let r00 = 48.0 * base;
    let r = 96.0 * base * (1.5 * p.zeta * p.zeta / (gt * gt) - 1.0);
    (r00, r)
}

/// Low-T coefficient of `Δr_TM/(T/T_eff)³`: `n ζ(3) αy/(g̃²(απy+2g̃)²)`.
///
/// `prefactor = 96` is the product of the first-order coefficient correction
/// and the leading tensor ratio; 92 is accepted for comparison.
pub fn tm_correction_coefficient(p: &TensorPoint, g: &GrapheneModel, zeta3: f64, prefactor: f64) -> f64 {
    let gt = g_tilde(p, g);
    let a = g.alpha_fs;
    let d = a * PI * p.y + 2.0 * gt;
    prefactor * zeta3 * a * p.y / (gt * gt * d * d)
}
