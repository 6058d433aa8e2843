//! Polarization tensor of a gapless Dirac sheet at imaginary frequencies.
//!
//! Temperature enters only through the thermal corrections, which are kept
//! as ratios to the zero-temperature components:
//! `ρ₀₀ = ΔΠ̃₀₀/Π̃₀₀⁽⁰⁾` and `ρ = ΔΠ̃/Π̃⁽⁰⁾`. With `k = ṽ²(y²−ζ²)/g̃²` and the
//! Fermi parameter `B = πg̃/τ`,
//!
//! ```text
//! ρ₀₀ = (8/π) ∫₀^∞ q₀₀(u) du/(e^{Bu}+1),   ρ = (8/π) ∫₀^∞ q_TE(u) du/(e^{Bu}+1)
//! ```
//!
//! where `q₀₀` and `q_TE` are written so that neither loses digits at small
//! `u`, at `u ≈ 1`, or when `k → 1`.

use crate::error::{Error, Result};
use crate::numerics::{integrate_panels_vec, Tolerance};
use crate::units::GrapheneModel;
use std::f64::consts::{FRAC_PI_2, PI};

/// Relative accuracy used by the convenience wrappers.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Beyond `Bu = FERMI_CUTOFF` the Fermi factor is below 3e-23.
const FERMI_CUTOFF: f64 = 52.0;

/// Point `(ζ, y)` of the Lifshitz integrand at temperature parameter τ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorPoint {
    pub zeta: f64,
    pub y: f64,
    pub tau: f64,
}

impl TensorPoint {
    pub fn new(zeta: f64, y: f64, tau: f64) -> Result<Self> {
        if !(zeta >= 0.0 && y >= zeta && tau >= 0.0) || !y.is_finite() || !tau.is_finite() {
            return Err(Error::Domain(format!(
                "tensor point needs y ≥ ζ ≥ 0 and τ ≥ 0, got ζ = {zeta}, y = {y}, τ = {tau}"
            )));
        }
        Ok(Self { zeta, y, tau })
    }

    /// Point of the `l`-th Matsubara frequency.
    pub fn matsubara(l: u64, y: f64, tau: f64) -> Result<Self> {
        Self::new(tau * l as f64, y, tau)
    }
}

/// Zero-temperature parts and thermal corrections at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorValues {
    pub pi00_zero_t: f64,
    pub pi_zero_t: f64,
    pub delta_pi00: f64,
    pub delta_pi: f64,
}

/// Thermal corrections relative to the zero-temperature components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThermalRatios {
    /// ΔΠ̃₀₀/Π̃₀₀⁽⁰⁾.
    pub ratio00: f64,
    /// ΔΠ̃/Π̃⁽⁰⁾.
    pub ratio: f64,
    pub abs_error: [f64; 2],
    pub evaluations: usize,
}

/// √(ṽ²y² + (1−ṽ²)ζ²) when the exact form is requested, else √(ṽ²y² + ζ²).
pub fn g_tilde(p: &TensorPoint, g: &GrapheneModel) -> f64 {
    let v = g.v_tilde;
    let z2 = if g.use_exact_gtilde {
        (1.0 - v * v) * p.zeta * p.zeta
    } else {
        p.zeta * p.zeta
    };
    (v * v * p.y * p.y + z2).sqrt()
}

/// `(k, 1 − k)` with `k = ṽ²(y²−ζ²)/g̃²`, each computed without cancellation.
pub fn light_cone_fractions(p: &TensorPoint, g: &GrapheneModel) -> (f64, f64) {
    let v = g.v_tilde;
    let g2 = {
        let gt = g_tilde(p, g);
        gt * gt
    };
    let k = v * v * (p.y - p.zeta) * (p.y + p.zeta) / g2;
    let z2 = p.zeta * p.zeta;
    let one_minus_k = if g.use_exact_gtilde {
        z2 / g2
    } else {
        z2 * (1.0 + v * v) / g2
    };
    (k, one_minus_k)
}

/// Π̃₀₀⁽⁰⁾ = πα(y²−ζ²)/g̃.
pub fn pi00_zero_t(p: &TensorPoint, g: &GrapheneModel) -> Result<f64> {
    if p.y == 0.0 && p.zeta == 0.0 {
        return Err(Error::SingularPoint);
    }
    Ok(PI * g.alpha_fs * (p.y - p.zeta) * (p.y + p.zeta) / g_tilde(p, g))
}

/// Π̃⁽⁰⁾ = πα(y²−ζ²)·g̃.
pub fn pi_zero_t(p: &TensorPoint, g: &GrapheneModel) -> f64 {
    PI * g.alpha_fs * (p.y - p.zeta) * (p.y + p.zeta) * g_tilde(p, g)
}

/// Integrands `[q₀₀, q_TE]` of the thermal ratios at `u`, given `1 − k`.
///
/// `one_minus_u` is passed separately so callers near `u = 1` can supply it
/// exactly. Returns a branch error if the outer root argument
/// `(1+u²)² − 4ku²` is negative.
pub fn ratio_integrands(u: f64, one_minus_u: f64, one_minus_k: f64) -> Result<[f64; 2]> {
    let u2 = u * u;
    let d = one_minus_u * (1.0 + u);
    let arg = d * d + 4.0 * one_minus_k * u2;
    if !(arg >= 0.0) || one_minus_k < 0.0 {
        return Err(Error::BranchViolation { u, arg });
    }
    let x = arg.sqrt();
    let a = 1.0 + u2 + x;
    let w = if d >= 0.0 {
        0.5 * (x + d)
    } else {
        2.0 * u2 * one_minus_k / (x - d)
    };
    let s = w.sqrt();
    let q00 = 2.0 * u2 / (a * (1.0 + s));
    // X − 1, from X² − 1 = u²(u² − 2 + 4(1−k)).
    let x_minus_1 = u2 * (u2 - 2.0 + 4.0 * one_minus_k) / (x + 1.0);
    let qte = (x_minus_1 * s * (2.0 * s + a) - 2.0 * one_minus_k * u2) / (x * a * (1.0 + s));
    Ok([q00, qte])
}

/// Panels for a Fermi-weighted integral on `[0, ∞)` with characteristic
/// scale `1/b`, cut where `b·u` reaches [`FERMI_CUTOFF`].
fn fermi_edges(b: f64, upper_cap: f64) -> Vec<f64> {
    let end = (FERMI_CUTOFF / b).min(upper_cap);
    let mut edges = vec![0.0];
    let mut u = 0.25 / b;
    while u < end {
        edges.push(u);
        u *= 2.0;
    }
    edges.push(end);
    edges
}

/// ρ₀₀ and ρ at a point with τ > 0, by direct quadrature of the u-integrals.
pub fn thermal_ratios(p: &TensorPoint, g: &GrapheneModel, rel_tol: f64) -> Result<ThermalRatios> {
    if !(p.tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "thermal corrections need τ > 0, got {}",
            p.tau
        )));
    }
    if p.y == 0.0 && p.zeta == 0.0 {
        return Err(Error::SingularPoint);
    }
    let (_, omk) = light_cone_fractions(p, g);
    let b = PI * g_tilde(p, g) / p.tau;
    let fermi = |u: f64| {
        let e = (-b * u).exp();
        e / (1.0 + e)
    };
    let tol = Tolerance::l1(rel_tol).with_abs(1e-300);
    let mut edges = fermi_edges(b, f64::INFINITY);
    let end = *edges.last().unwrap();

    let mut total = [0.0; 2];
    let mut err = [0.0; 2];
    let mut evaluations = 0;
    let mut accumulate = |r: ([f64; 2], [f64; 2], usize)| {
        for i in 0..2 {
            total[i] += r.0[i];
            err[i] += r.1[i];
        }
        evaluations += r.2;
    };

    if end > 1.0 {
        // The integrands have a smoothed square-root point at u = 1; the
        // substitution u = 1 ∓ h t² on the adjoining panels makes it regular.
        let below = edges.iter().rposition(|&e| e < 1.0).unwrap();
        let lo = if below > 0 && 1.0 - edges[below] < 0.25 * edges[below] {
            edges[below - 1]
        } else {
            edges[below]
        };
        let hi = edges.iter().copied().find(|&e| e > 1.0).unwrap().max(1.25);
        let hi = hi.min(end);
        let head: Vec<f64> = edges.iter().copied().filter(|&e| e <= lo).collect();
        let tail: Vec<f64> = std::iter::once(hi)
            .chain(edges.iter().copied().filter(|&e| e > hi))
            .collect();
        if head.len() >= 2 {
            accumulate(integrate_panels_vec(
                |u| Ok(scale(ratio_integrands(u, 1.0 - u, omk)?, fermi(u))),
                &head,
                tol,
            )?);
        }
        let h_lo = 1.0 - lo;
        accumulate(integrate_panels_vec(
            |t| {
                let omu = h_lo * t * t;
                let u = 1.0 - omu;
                Ok(scale(ratio_integrands(u, omu, omk)?, fermi(u) * 2.0 * h_lo * t))
            },
            &[0.0, 0.25, 0.5, 1.0],
            tol,
        )?);
        if hi > 1.0 {
            let h_hi = hi - 1.0;
            accumulate(integrate_panels_vec(
                |t| {
                    let omu = -h_hi * t * t;
                    let u = 1.0 - omu;
                    Ok(scale(ratio_integrands(u, omu, omk)?, fermi(u) * 2.0 * h_hi * t))
                },
                &[0.0, 0.25, 0.5, 1.0],
                tol,
            )?);
        }
        if tail.len() >= 2 {
            accumulate(integrate_panels_vec(
                |u| Ok(scale(ratio_integrands(u, 1.0 - u, omk)?, fermi(u))),
                &tail,
                tol,
            )?);
        }
    } else {
        edges.dedup();
        accumulate(integrate_panels_vec(
            |u| Ok(scale(ratio_integrands(u, 1.0 - u, omk)?, fermi(u))),
            &edges,
            tol,
        )?);
    }

    let c = 8.0 / PI;
    Ok(ThermalRatios {
        ratio00: c * total[0],
        ratio: c * total[1],
        abs_error: [c * err[0], c * err[1]],
        evaluations,
    })
}

fn scale(v: [f64; 2], f: f64) -> [f64; 2] {
    [v[0] * f, v[1] * f]
}

/// ρ₀₀ and ρ at zero frequency from the finite-interval representation.
///
/// With `b = B̃y`, `B̃ = 2πṽ/τ`:
/// `ρ₀₀ = 8τ/(π²ṽy)·∫₀¹ ln(1 + e^{−b√(x(1−x))}) dx` and
/// `ρ = −(16/π)·∫₀¹ √(x(1−x)) dx/(e^{b√(x(1−x))} + 1)`.
pub fn zero_freq_ratios(y: f64, tau: f64, g: &GrapheneModel, rel_tol: f64) -> Result<ThermalRatios> {
    if !(y > 0.0) || !(tau > 0.0) {
        return Err(Error::Domain(format!(
            "zero-frequency corrections need y > 0 and τ > 0, got y = {y}, τ = {tau}"
        )));
    }
    let b = 2.0 * PI * g.v_tilde * y / tau;
    let (l, j, err, evaluations) = zero_freq_integrals(b, rel_tol)?;
    let c00 = 8.0 * tau / (PI * PI * g.v_tilde * y);
    let c = -16.0 / PI;
    Ok(ThermalRatios {
        ratio00: c00 * l,
        ratio: c * j,
        abs_error: [c00 * err[0], -c * err[1]],
        evaluations,
    })
}

/// `(∫₀¹ ln(1+e^{−b s}) dx, ∫₀¹ s dx/(e^{b s}+1), errors, evaluations)` with
/// `s = √(x(1−x))`.
///
/// Uses `x = sin²θ`, folded onto `φ = 2θ ∈ [0, π/2]`, where `s = sin φ / 2`
/// and `dx = sin φ dφ` after using the symmetry of the integrand.
pub fn zero_freq_integrals(b: f64, rel_tol: f64) -> Result<(f64, f64, [f64; 2], usize)> {
    if !(b >= 0.0) {
        return Err(Error::Domain(format!("Fermi parameter must be ≥ 0, got {b}")));
    }
    let mut edges = vec![0.0];
    if b > 0.0 {
        let cut = 2.0 * FERMI_CUTOFF / b;
        let end = if cut < 1.0 { cut.asin() } else { FRAC_PI_2 };
        let mut phi = 0.5 / b;
        while phi < end {
            edges.push(phi);
            phi *= 2.0;
        }
        edges.push(end);
    } else {
        edges.push(FRAC_PI_2);
    }
    let (v, e, n) = integrate_panels_vec(
        |phi: f64| {
            let (sin, _) = phi.sin_cos();
            let s = 0.5 * sin;
            let ex = (-b * s).exp();
            Ok([(ex).ln_1p() * sin, s * ex / (1.0 + ex) * sin])
        },
        &edges,
        Tolerance::l1(rel_tol).with_abs(1e-300),
    )?;
    Ok((v[0], v[1], e, n))
}

/// Thermal correction ΔΠ̃₀₀ at a point (τ > 0).
pub fn delta_pi00(p: &TensorPoint, g: &GrapheneModel) -> Result<f64> {
    let r = thermal_ratios(p, g, DEFAULT_REL_TOL)?;
    Ok(pi00_zero_t(p, g)? * r.ratio00)
}

/// Thermal correction ΔΠ̃ at a point (τ > 0).
pub fn delta_pi(p: &TensorPoint, g: &GrapheneModel) -> Result<f64> {
    let r = thermal_ratios(p, g, DEFAULT_REL_TOL)?;
    Ok(pi_zero_t(p, g) * r.ratio)
}

/// ΔΠ̃₀₀ at ζ = 0 from the finite-interval representation; `8ατ/(πṽ²)·∫ln(…)`.
pub fn delta_pi00_zero_freq(y: f64, tau: f64, g: &GrapheneModel) -> Result<f64> {
    let r = zero_freq_ratios(y, tau, g, DEFAULT_REL_TOL)?;
    Ok(PI * g.alpha_fs * y / g.v_tilde * r.ratio00)
}

/// ΔΠ̃ at ζ = 0 from the finite-interval representation; `−16αṽy³·∫…`.
pub fn delta_pi_zero_freq(y: f64, tau: f64, g: &GrapheneModel) -> Result<f64> {
    let r = zero_freq_ratios(y, tau, g, DEFAULT_REL_TOL)?;
    Ok(PI * g.alpha_fs * g.v_tilde * y.powi(3) * r.ratio)
}

/// All four tensor quantities at a point (thermal parts zero at τ = 0).
pub fn tensor_values(p: &TensorPoint, g: &GrapheneModel, rel_tol: f64) -> Result<TensorValues> {
    let pi00 = pi00_zero_t(p, g)?;
    let pi = pi_zero_t(p, g);
    let r = if p.tau > 0.0 {
        if p.zeta == 0.0 {
            zero_freq_ratios(p.y, p.tau, g, rel_tol)?
        } else {
            thermal_ratios(p, g, rel_tol)?
        }
    } else {
        ThermalRatios::default()
    };
    Ok(TensorValues {
        pi00_zero_t: pi00,
        pi_zero_t: pi,
        delta_pi00: pi00 * r.ratio00,
        delta_pi: pi * r.ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::CODATA_2018;
    use approx::assert_relative_eq;

    const ZETA3: f64 = 1.202_056_903_159_594_2;

    fn model() -> GrapheneModel {
        GrapheneModel::default()
    }

    #[test]
    fn g_tilde_forms() {
        let g = model();
        let p = TensorPoint::new(0.0, 2.0, 0.1).unwrap();
        assert_relative_eq!(g_tilde(&p, &g), 2.0 / 300.0, max_relative = 1e-15);
        let exact = GrapheneModel {
            use_exact_gtilde: true,
            ..g
        };
        let p = TensorPoint::new(0.7, 0.7, 0.1).unwrap();
        assert_relative_eq!(g_tilde(&p, &exact), 0.7, max_relative = 1e-15);
        let p = TensorPoint::new(0.3293, 1.0, 0.3293).unwrap();
        assert_relative_eq!(g_tilde(&p, &g), 0.329_317, max_relative = 1e-5);
    }

    #[test]
    fn zero_temperature_components() {
        let g = model();
        let p = TensorPoint::new(0.0, 1.0, 0.0).unwrap();
        assert_relative_eq!(pi00_zero_t(&p, &g).unwrap(), 6.8776, max_relative = 1e-4);
        let p = TensorPoint::new(0.0, 2.0, 0.0).unwrap();
        let expected = PI * CODATA_2018.alpha_fs / 300.0 * 8.0;
        assert_relative_eq!(pi_zero_t(&p, &g), expected, max_relative = 1e-14);
        assert_relative_eq!(expected, 6.114e-4, max_relative = 1e-3);
        let p = TensorPoint::new(0.5, 0.5, 0.0).unwrap();
        assert_eq!(pi00_zero_t(&p, &g).unwrap(), 0.0);
        assert_eq!(pi_zero_t(&p, &g), 0.0);
        let p = TensorPoint::new(0.0, 0.0, 0.0).unwrap();
        assert!(matches!(pi00_zero_t(&p, &g), Err(Error::SingularPoint)));
    }

    #[test]
    fn integrands_at_zero_frequency() {
        for u in [0.1, 0.5, 0.9, 0.999] {
            let [q00, qte] = ratio_integrands(u, 1.0 - u, 0.0).unwrap();
            let r = (1.0 - u * u).sqrt();
            assert_relative_eq!(q00, 1.0 - r, max_relative = 1e-12);
            assert_relative_eq!(qte, -u * u / r, max_relative = 1e-12);
        }
        for u in [1.001, 2.0, 30.0] {
            let [q00, qte] = ratio_integrands(u, 1.0 - u, 0.0).unwrap();
            assert_relative_eq!(q00, 1.0, max_relative = 1e-14);
            assert!(qte.abs() < 1e-14);
        }
    }

    #[test]
    fn integrands_match_defining_bracket() {
        // q₀₀·k must equal 1 − [(√((1+u²)² − 4ku²) + 1 − u²)/2]^{1/2}.
        for &k in &[0.0, 0.3, 0.9, 0.999_999] {
            for &u in &[0.05, 0.7, 1.0, 1.3, 4.0] {
                let [q00, _] = ratio_integrands(u, 1.0 - u, 1.0 - k).unwrap();
                let root = ((1.0 + u * u).powi(2) - 4.0 * k * u * u).sqrt();
                let bracket = 1.0 - (0.5 * (root + 1.0 - u * u)).sqrt();
                assert!((q00 * k - bracket).abs() < 1e-10, "k={k} u={u}");
            }
        }
    }

    #[test]
    fn branch_violation_detected() {
        assert!(matches!(
            ratio_integrands(0.5, 0.5, -0.1),
            Err(Error::BranchViolation { .. })
        ));
    }

    #[test]
    fn generic_and_zero_frequency_paths_agree() {
        let g = model();
        for &y in &[0.5, 1.0, 5.0] {
            for &bt in &[2.0, 10.0, 100.0] {
                let tau = 2.0 * PI * g.v_tilde / bt;
                let p = TensorPoint::new(0.0, y, tau).unwrap();
                let a = thermal_ratios(&p, &g, 1e-12).unwrap();
                let b = zero_freq_ratios(y, tau, &g, 1e-12).unwrap();
                assert_relative_eq!(a.ratio00, b.ratio00, max_relative = 1e-9);
                assert_relative_eq!(a.ratio, b.ratio, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn zero_frequency_limits() {
        let g = model();
        let (l, j, _, _) = zero_freq_integrals(0.0, 1e-12).unwrap();
        assert_relative_eq!(l, 2f64.ln(), max_relative = 1e-12);
        assert_relative_eq!(j, PI / 16.0, max_relative = 1e-12);
        // Large B̃ suppresses both corrections.
        let tiny = delta_pi00_zero_freq(1.0, 1e-6, &g).unwrap();
        let big = delta_pi00_zero_freq(1.0, 1e-2, &g).unwrap();
        assert!(tiny > 0.0 && tiny < 1e-6 * big);
        assert!(delta_pi_zero_freq(1.0, 1e-3, &g).unwrap() < 0.0);
    }

    #[test]
    fn low_temperature_ratios() {
        let g = model();
        let tau = 1e-3;
        let p = TensorPoint::matsubara(1, 1.0, tau).unwrap();
        let gt = g_tilde(&p, &g);
        let r = thermal_ratios(&p, &g, 1e-12).unwrap();
        let t3 = (tau / (2.0 * PI)).powi(3);
        let lead00 = 48.0 * ZETA3 / (PI * gt.powi(3)) * t3;
        let lead = 96.0 * ZETA3 / (PI * gt.powi(3)) * t3 * (1.5 * p.zeta * p.zeta / (gt * gt) - 1.0);
        assert_relative_eq!(r.ratio00, lead00, max_relative = 0.05);
        assert_relative_eq!(r.ratio, lead, max_relative = 0.05);
        assert!(r.ratio00 > 0.0);
    }

    #[test]
    fn corrections_vanish_as_tau_shrinks() {
        let g = model();
        let big = thermal_ratios(&TensorPoint::matsubara(1, 1.0, 1e-2).unwrap(), &g, 1e-10).unwrap();
        let small = thermal_ratios(&TensorPoint::matsubara(1, 1.0, 1e-4).unwrap(), &g, 1e-10).unwrap();
        assert!(small.ratio00.abs() < 1e-4 * big.ratio00.abs());
    }

    #[test]
    fn corrections_small_in_low_temperature_regime() {
        // Below one percent once the Fermi parameter πg̃/τ exceeds 3π; right
        // at the light cone of l = 1 the ratios approach 6ζ(3)/π⁴ ≈ 0.074.
        let g = model();
        for &tau in &[1e-2, 1e-3] {
            for l in [1u64, 3, 30] {
                for &s in &[0.0, 0.01, 1.0, 10.0] {
                    let p = TensorPoint::matsubara(l, tau * l as f64 + s, tau).unwrap();
                    if p.y == p.zeta {
                        continue;
                    }
                    let r = thermal_ratios(&p, &g, 1e-10).unwrap();
                    assert!(r.ratio00 >= 0.0 && r.ratio00 <= 0.08, "{p:?} {r:?}");
                    if PI * g_tilde(&p, &g) / tau >= 3.0 * PI {
                        assert!(r.ratio00 <= 0.01, "{p:?} {r:?}");
                        assert!(r.ratio.abs() <= 0.01, "{p:?} {r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_values_at_zero_temperature_have_no_thermal_part() {
        let p = TensorPoint::new(0.2, 1.0, 0.0).unwrap();
        let v = tensor_values(&p, &model(), 1e-10).unwrap();
        assert_eq!(v.delta_pi00, 0.0);
        assert_eq!(v.delta_pi, 0.0);
    }
}
