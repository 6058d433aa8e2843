//! Lifshitz free energy of the atom-sheet system and its decomposition.
//!
//! With `y = 2qa`, `ζ_l = τl` and scaled responses `α̂ = α₀/a³`, `β̂ = β₀/a³`,
//!
//! ```text
//! F = −(k_B T/8) Σ'_l K(ζ_l),
//! K(ζ) = ∫_ζ^∞ dy e^{−y} {2y²[α̂ r_TM + β̂ r_TE] − ζ²(α̂+β̂)[r_TM + r_TE]}.
//! ```
//!
//! `Φ(ζ)` is `K(ζ)` built from the zero-temperature coefficients, and
//! `E₀ = −(ħc/(32πa)) ∫₀^∞ Φ`. The thermal part splits into the implicit
//! piece `−(k_B T/8)[Σ'Φ(τl) − (1/τ)∫Φ]` and the explicit pieces driven by
//! the thermal corrections of the tensor, separately for `l ≥ 1` and `l = 0`.
//!
//! Large-`l` tails are summed with the Gregory formula, which lets the
//! `(1/τ)∫_{τL}^∞ Φ` pieces of the implicit term cancel analytically.

use crate::error::{Error, Result};
use crate::numerics::{
    derivative_central_with_floor, gregory_correction, integrate_panels_vec, sum_matsubara,
    QuadratureResult, Tolerance,
};
use crate::poltensor::TensorPoint;
use crate::reflection::{ratios_at, Couplings, ReflectionPair};
use crate::units::{AtomSpec, GrapheneModel, ScaledAtom, ThermalGeometry};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Frequencies with ζ above this contribute less than e^{-60} and are dropped.
const ZETA_CUTOFF: f64 = 60.0;
/// Upper end of the y-integration, measured from y = ζ.
const Y_SPAN: f64 = 64.0;
/// Accuracy of the zero-temperature Φ integrals. The implicit correction is
/// a small difference of such integrals, so they are taken to round-off.
const PHI_REL_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Target relative accuracy of the thermal integrals, in [1e-12, 1e-4].
    pub rel_tol: f64,
    /// Hard cap on Matsubara terms for plain summation.
    pub l_max: u64,
    /// Number of Matsubara terms summed one by one before the Gregory tail
    /// takes over; `None` sums term by term until convergence.
    pub direct_terms: Option<u32>,
    /// Use the first-order corrections of the reflection coefficients in the
    /// full free energy as well, instead of the exact coefficients.
    pub first_order_coefficients: bool,
    pub graphene: GrapheneModel,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            l_max: 1_000_000,
            direct_terms: Some(32),
            first_order_coefficients: false,
            graphene: GrapheneModel::default(),
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(1e-12..=1e-4).contains(&self.rel_tol) {
            return Err(Error::InvalidParameter(format!(
                "rel_tol must lie in [1e-12, 1e-4], got {}",
                self.rel_tol
            )));
        }
        if self.l_max < 16 {
            return Err(Error::InvalidParameter(format!(
                "l_max must be at least 16, got {}",
                self.l_max
            )));
        }
        if let Some(0) = self.direct_terms {
            return Err(Error::InvalidParameter("direct_terms must be positive".into()));
        }
        self.graphene.validate()
    }

    /// Index where term-by-term summation hands over to the Gregory tail.
    fn gregory_start(&self, tau: f64) -> Option<u64> {
        let base = self.direct_terms? as u64;
        // For coarse steps the tail must start where the e^{-ζ} decay has
        // already made it negligible.
        let coarse = if tau > 0.05 { (24.0 / tau).ceil() as u64 } else { 0 };
        Some(base.max(coarse))
    }
}

/// Kernel of `K(ζ)` for given coefficients, without the `e^{−y}` weight.
pub fn kernel(atom: &ScaledAtom, zeta: f64, y: f64, r: &ReflectionPair) -> f64 {
    2.0 * y * y * (atom.alpha * r.r_tm + atom.beta * r.r_te)
        - zeta * zeta * (atom.alpha + atom.beta) * (r.r_tm + r.r_te)
}

/// `∫_ζ^∞ e^{−y} f(y) dy` on panels in `s = y − ζ` that start at width
/// `first` and double up to `s = 64`.
fn y_integral<const N: usize, F>(zeta: f64, first: f64, tol: Tolerance, mut f: F) -> Result<([f64; N], [f64; N], usize)>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let mut edges = vec![0.0];
    let mut s = first;
    while s < Y_SPAN {
        edges.push(s);
        s *= 2.0;
    }
    edges.push(Y_SPAN);
    let shift = (-zeta).exp();
    let (mut v, mut e, n) = integrate_panels_vec(
        |s| {
            let w = (-s).exp();
            let mut out = f(zeta + s)?;
            for x in out.iter_mut() {
                *x *= w;
            }
            Ok(out)
        },
        &edges,
        tol,
    )?;
    for i in 0..N {
        v[i] *= shift;
        e[i] *= shift;
    }
    Ok((v, e, n))
}

fn first_panel(scale: f64) -> f64 {
    scale.clamp(2f64.powi(-30), 2f64.powi(-4))
}

/// `Φ(ζ)`, the kernel integral with zero-temperature coefficients.
pub fn phi(zeta: f64, atom: &ScaledAtom, g: &GrapheneModel) -> Result<QuadratureResult> {
    if !(zeta >= 0.0) {
        return Err(Error::Domain(format!("Φ needs ζ ≥ 0, got {zeta}")));
    }
    if atom.is_zero() || zeta > ZETA_CUTOFF {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let first = if zeta > 0.0 { first_panel(0.5 * zeta) } else { first_panel(1.0) };
    let (v, e, n) = y_integral(zeta, first, Tolerance::l1(PHI_REL_TOL), |y| {
        let p = TensorPoint { zeta, y, tau: 0.0 };
        let r = Couplings::at(&p, g)?.zero_t();
        Ok([kernel(atom, zeta, y, &r)])
    })?;
    Ok(QuadratureResult {
        value: v[0],
        abs_error_estimate: e[0],
        evaluations: n,
    })
}

/// `∫_lo^hi Φ(ζ) dζ` (with `hi = ∞` allowed).
pub fn phi_integral(lo: f64, hi: f64, atom: &ScaledAtom, g: &GrapheneModel) -> Result<QuadratureResult> {
    let hi = hi.min(ZETA_CUTOFF);
    if atom.is_zero() || hi <= lo {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
        });
    }
    // Φ changes character where ζ crosses ṽy for the dominant y ~ 1.
    let mut edges = vec![lo];
    let mut z = (g.v_tilde / 8.0).max(lo * 1.5);
    while z < hi {
        edges.push(z);
        z *= 2.0;
    }
    edges.push(hi);
    let (v, e, n) = integrate_panels_vec(
        |z| Ok([phi(z, atom, g)?.value]),
        &edges,
        Tolerance::l1(PHI_REL_TOL),
    )?;
    Ok(QuadratureResult {
        value: v[0],
        abs_error_estimate: e[0],
        evaluations: n,
    })
}

/// Zero-temperature energy `−(ħc/(32πa))∫₀^∞Φ`, in joules.
pub fn energy_zero_t(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<f64> {
    atom.validate()?;
    let s = atom.scaled(tg.a);
    let integral = phi_integral(0.0, f64::INFINITY, &s, &opts.graphene)?;
    Ok(-tg.quantum_energy() / (32.0 * PI) * integral.value)
}

/// Dimensionless implicit correction `Σ'_l Φ(τl) − (1/τ)∫₀^∞Φ`.
pub fn implicit_sum(atom: &ScaledAtom, tau: f64, opts: &EvalOptions) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::ZeroTemperature);
    }
    if atom.is_zero() {
        return Ok(0.0);
    }
    let g = &opts.graphene;
    let last = (ZETA_CUTOFF / tau).ceil() as u64;
    match opts.gregory_start(tau) {
        Some(l_start) if l_start < last => {
            let values: Vec<f64> = (0..l_start + 5)
                .into_par_iter()
                .map(|l| phi(tau * l as f64, atom, g).map(|r| r.value))
                .collect::<Result<_>>()?;
            let head: f64 = 0.5 * values[0] + values[1..l_start as usize].iter().sum::<f64>();
            let tail: [f64; 5] = std::array::from_fn(|i| values[l_start as usize + i]);
            let integral = phi_integral(0.0, tau * l_start as f64, atom, g)?;
            Ok(head + gregory_correction(&tail) - integral.value / tau)
        }
        _ => {
            let sum = match opts.gregory_start(tau) {
                Some(_) => {
                    let values: Vec<f64> = (0..=last)
                        .into_par_iter()
                        .map(|l| phi(tau * l as f64, atom, g).map(|r| r.value))
                        .collect::<Result<_>>()?;
                    0.5 * values[0] + values[1..].iter().sum::<f64>()
                }
                None => {
                    sum_matsubara(
                        |l| phi(tau * l as f64, atom, g).map(|r| r.value),
                        PHI_REL_TOL.max(1e-3 * opts.rel_tol),
                        opts.l_max,
                    )?
                    .value
                }
            };
            let integral = phi_integral(0.0, f64::INFINITY, atom, g)?;
            Ok(sum - integral.value / tau)
        }
    }
}

/// Thermal-correction integral `δK(ζ_l)` for `[first order, exact]` coefficients.
pub fn thermal_kernel(atom: &ScaledAtom, zeta: f64, tau: f64, opts: &EvalOptions) -> Result<[f64; 2]> {
    if atom.is_zero() || zeta > ZETA_CUTOFF {
        return Ok([0.0; 2]);
    }
    let g = &opts.graphene;
    let inner_tol = 0.1 * opts.rel_tol;
    let first = if zeta > 0.0 {
        first_panel(0.5 * zeta)
    } else {
        // At ζ = 0 the correction varies on the scale y ~ τ/(2πṽ).
        first_panel(0.25 * tau / (2.0 * PI * g.v_tilde))
    };
    let (v, _, _) = y_integral(zeta, first, Tolerance::l1(opts.rel_tol), |y| {
        if y == zeta {
            // Light-cone point: the tensor combination y² − ζ² vanishes and
            // both coefficient corrections are zero.
            if zeta > 0.0 {
                return Ok([0.0; 2]);
            }
        }
        let p = TensorPoint { zeta, y, tau };
        let c = Couplings::at(&p, g)?;
        let r = ratios_at(&p, g, inner_tol)?;
        Ok([
            kernel(atom, zeta, y, &c.linear(&r)),
            kernel(atom, zeta, y, &c.exact(&r)),
        ])
    })?;
    Ok(v)
}

/// Dimensionless explicit thermal sums.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThermalSums {
    /// `δK(0)` with first-order and exact coefficients (not yet halved).
    pub zero_freq: [f64; 2],
    /// `Σ_{l≥1} δK(ζ_l)` with first-order and exact coefficients.
    pub nonzero_freq: [f64; 2],
}

pub fn thermal_sums(atom: &ScaledAtom, tau: f64, opts: &EvalOptions) -> Result<ThermalSums> {
    if !(tau > 0.0) {
        return Err(Error::ZeroTemperature);
    }
    if atom.is_zero() {
        return Ok(ThermalSums::default());
    }
    let zero_freq = thermal_kernel(atom, 0.0, tau, opts)?;
    let term = |l: u64| thermal_kernel(atom, tau * l as f64, tau, opts);
    let last = (ZETA_CUTOFF / tau).ceil() as u64;
    let nonzero_freq = match opts.gregory_start(tau) {
        Some(l_start) if l_start < last => {
            let values: Vec<[f64; 2]> = (1..l_start + 5)
                .into_par_iter()
                .map(term)
                .collect::<Result<_>>()?;
            let n_head = (l_start - 1) as usize;
            let tail_start = tau * l_start as f64;
            let mut edges = vec![tail_start];
            let mut z = tail_start * 1.5;
            while z < ZETA_CUTOFF {
                edges.push(z);
                z = (z * 1.5).max(z + 0.5 * tail_start);
            }
            edges.push(ZETA_CUTOFF.max(tail_start * 1.5));
            let (integral, _, _) = integrate_panels_vec(
                |z| thermal_kernel(atom, z, tau, opts),
                &edges,
                Tolerance::l1(opts.rel_tol),
            )?;
            let mut out = [0.0; 2];
            for i in 0..2 {
                let head: f64 = values[..n_head].iter().map(|v| v[i]).sum();
                let tail: [f64; 5] = std::array::from_fn(|k| values[n_head + k][i]);
                out[i] = head + integral[i] / tau + gregory_correction(&tail);
            }
            out
        }
        Some(_) => {
            let values: Vec<[f64; 2]> = (1..=last).into_par_iter().map(term).collect::<Result<_>>()?;
            [values.iter().map(|v| v[0]).sum(), values.iter().map(|v| v[1]).sum()]
        }
        None => {
            let mut exact = Vec::new();
            let lin = sum_matsubara(
                |l| {
                    if l == 0 {
                        return Ok(0.0);
                    }
                    let v = term(l)?;
                    exact.push(v[1]);
                    Ok(v[0])
                },
                opts.rel_tol,
                opts.l_max,
            )?;
            [lin.value, exact.iter().sum()]
        }
    };
    Ok(ThermalSums {
        zero_freq,
        nonzero_freq,
    })
}

/// `−(k_B T/8)` times a dimensionless sum, in joules.
fn to_joules(tg: &ThermalGeometry, dimensionless: f64) -> f64 {
    -tg.thermal_energy() / 8.0 * dimensionless
}

fn require_positive_temperature(tg: &ThermalGeometry) -> Result<()> {
    if tg.temperature > 0.0 {
        Ok(())
    } else {
        Err(Error::ZeroTemperature)
    }
}

/// Implicit thermal correction (zero-temperature coefficients), in joules.
pub fn delta1_implicit(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<f64> {
    require_positive_temperature(tg)?;
    opts.validate()?;
    Ok(to_joules(tg, implicit_sum(&atom.scaled(tg.a), tg.tau, opts)?))
}

/// Explicit thermal correction from `l ≥ 1`, first order in the tensor corrections.
pub fn delta2_lgeq1(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<f64> {
    require_positive_temperature(tg)?;
    opts.validate()?;
    let s = thermal_sums(&atom.scaled(tg.a), tg.tau, opts)?;
    Ok(to_joules(tg, s.nonzero_freq[0]))
}

/// Explicit thermal correction from the zero-frequency term, first order.
pub fn delta2_l0(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<f64> {
    require_positive_temperature(tg)?;
    opts.validate()?;
    let k = thermal_kernel(&atom.scaled(tg.a), 0.0, tg.tau, opts)?;
    Ok(to_joules(tg, 0.5 * k[0]))
}

/// `F − E₀` in joules with full coefficients (or first-order ones if requested).
pub fn thermal_free_energy(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<f64> {
    require_positive_temperature(tg)?;
    opts.validate()?;
    let s = atom.scaled(tg.a);
    let d1 = implicit_sum(&s, tg.tau, opts)?;
    let sums = thermal_sums(&s, tg.tau, opts)?;
    let i = if opts.first_order_coefficients { 0 } else { 1 };
    Ok(to_joules(tg, d1 + 0.5 * sums.zero_freq[i] + sums.nonzero_freq[i]))
}

/// Full free energy at T > 0, in joules.
///
/// Evaluated as `E₀ + (F − E₀)`, where the thermal part is formed from exact
/// differences of the coefficients; algebraically this is the full Matsubara
/// sum with the complete coefficients.
pub fn free_energy_full(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<f64> {
    require_positive_temperature(tg)?;
    Ok(energy_zero_t(atom, tg, opts)? + thermal_free_energy(atom, tg, opts)?)
}

/// Full free energy by brute-force summation of `K(ζ_l)` with the complete
/// coefficients. Independent of the decomposition; practical for τ ≳ 0.05.
pub fn free_energy_direct(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<f64> {
    require_positive_temperature(tg)?;
    opts.validate()?;
    let s = atom.scaled(tg.a);
    if s.is_zero() {
        return Ok(0.0);
    }
    let g = &opts.graphene;
    let tau = tg.tau;
    let term = |l: u64| -> Result<f64> {
        let zeta = tau * l as f64;
        if zeta > ZETA_CUTOFF {
            return Ok(0.0);
        }
        let first = if l == 0 {
            first_panel(0.25 * tau / (2.0 * PI * g.v_tilde))
        } else {
            first_panel(0.5 * zeta)
        };
        let (v, _, _) = y_integral(zeta, first, Tolerance::l1(opts.rel_tol), |y| {
            let p = TensorPoint { zeta, y, tau };
            let c = Couplings::at(&p, g)?;
            let base = c.zero_t();
            let r = if y == zeta {
                ReflectionPair::default()
            } else {
                let ratios = ratios_at(&p, g, 0.1 * opts.rel_tol)?;
                c.exact(&ratios)
            };
            let full = ReflectionPair {
                r_tm: base.r_tm + r.r_tm,
                r_te: base.r_te + r.r_te,
            };
            Ok([kernel(&s, zeta, y, &full)])
        })?;
        Ok(v[0])
    };
    let sum = sum_matsubara(term, opts.rel_tol, opts.l_max)?;
    Ok(to_joules(tg, sum.value))
}

/// Every piece of the free energy at one point, in joules.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergyBreakdown {
    pub e0: f64,
    pub d1: f64,
    pub d2_lgeq1: f64,
    pub d2_l0: f64,
    pub f_total_numeric: f64,
    pub f_total_decomposed: f64,
    /// Components that failed, with the reason; failed fields are NaN.
    pub flags: Vec<String>,
}

impl FreeEnergyBreakdown {
    /// Each field multiplied by `8/(k_B T_eff)`.
    pub fn dimensionless(&self, tg: &ThermalGeometry) -> FreeEnergyBreakdown {
        let f = 8.0 / (tg.constants.k_b * tg.t_eff);
        FreeEnergyBreakdown {
            e0: self.e0 * f,
            d1: self.d1 * f,
            d2_lgeq1: self.d2_lgeq1 * f,
            d2_l0: self.d2_l0 * f,
            f_total_numeric: self.f_total_numeric * f,
            f_total_decomposed: self.f_total_decomposed * f,
            flags: self.flags.clone(),
        }
    }
}

fn or_flag(r: Result<f64>, name: &str, flags: &mut Vec<String>) -> f64 {
    match r {
        Ok(v) => v,
        Err(e) => {
            flags.push(format!("{name}: {e}"));
            f64::NAN
        }
    }
}

/// All components at one point. At T = 0 every thermal field is zero.
pub fn free_energy_breakdown(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<FreeEnergyBreakdown> {
    opts.validate()?;
    atom.validate()?;
    let mut flags = Vec::new();
    let e0 = or_flag(energy_zero_t(atom, tg, opts), "E0", &mut flags);
    if tg.temperature == 0.0 {
        return Ok(FreeEnergyBreakdown {
            e0,
            d1: 0.0,
            d2_lgeq1: 0.0,
            d2_l0: 0.0,
            f_total_numeric: e0,
            f_total_decomposed: e0,
            flags,
        });
    }
    let s = atom.scaled(tg.a);
    let d1 = or_flag(implicit_sum(&s, tg.tau, opts).map(|v| to_joules(tg, v)), "d1", &mut flags);
    let (d2_lgeq1, d2_l0, exact) = match thermal_sums(&s, tg.tau, opts) {
        Ok(t) => {
            let i = if opts.first_order_coefficients { 0 } else { 1 };
            (
                to_joules(tg, t.nonzero_freq[0]),
                to_joules(tg, 0.5 * t.zero_freq[0]),
                to_joules(tg, 0.5 * t.zero_freq[i] + t.nonzero_freq[i]),
            )
        }
        Err(e) => {
            flags.push(format!("d2: {e}"));
            (f64::NAN, f64::NAN, f64::NAN)
        }
    };
    Ok(FreeEnergyBreakdown {
        e0,
        d1,
        d2_lgeq1,
        d2_l0,
        f_total_numeric: e0 + d1 + exact,
        f_total_decomposed: e0 + d1 + d2_lgeq1 + d2_l0,
        flags,
    })
}

/// Entropy `−∂F/∂T` in J/K.
///
/// Only `F − E₀` depends on T, so the derivative is taken of the thermal
/// part alone, which keeps the differenced quantity free of the large
/// temperature-independent energy. Initial step T/50, smallest step 1e-4·T.
pub fn entropy(atom: &AtomSpec, tg: &ThermalGeometry, opts: &EvalOptions) -> Result<f64> {
    require_positive_temperature(tg)?;
    opts.validate()?;
    if atom.scaled(tg.a).is_zero() {
        return Ok(0.0);
    }
    let t = tg.temperature;
    let d = derivative_central_with_floor(
        |temp| {
            let g = tg.at_temperature(temp, &opts.graphene)?;
            thermal_free_energy(atom, &g, opts)
        },
        t,
        t / 50.0,
        1e-4 * t,
    )?;
    Ok(-d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::{make_thermal_geometry, CODATA_2018};
    use approx::assert_relative_eq;

    fn unit_atom() -> ScaledAtom {
        ScaledAtom::new(1.0, 1.0)
    }

    fn geometry_for_tau(tau: f64) -> ThermalGeometry {
        let a = 2e-7;
        let g = GrapheneModel::default();
        let t = tau * CODATA_2018.hbar_c() / (4.0 * PI * a * CODATA_2018.k_b);
        make_thermal_geometry(a, t, &g, &CODATA_2018).unwrap()
    }

    #[test]
    fn phi_at_zero_frequency_closed_form() {
        let g = GrapheneModel::default();
        let p = TensorPoint::new(0.0, 1.0, 0.0).unwrap();
        let r = Couplings::at(&p, &g).unwrap().zero_t();
        let v = phi(0.0, &unit_atom(), &g).unwrap().value;
        assert_relative_eq!(v, 4.0 * (r.r_tm + r.r_te), max_relative = 1e-13);
        assert_relative_eq!(v, 4.0 * (0.774_71 - 3.82e-5), max_relative = 1e-5);
    }

    #[test]
    fn phi_trivial_cases() {
        let g = GrapheneModel::default();
        assert_eq!(phi(0.3, &ScaledAtom::new(0.0, 0.0), &g).unwrap().value, 0.0);
        assert!(phi(80.0, &unit_atom(), &g).unwrap().value.abs() < 1e-30);
        assert!(phi(-1.0, &unit_atom(), &g).is_err());
    }

    #[test]
    fn energy_is_linear_and_negative() {
        let tg = geometry_for_tau(0.0);
        let opts = EvalOptions::default();
        let a1 = AtomSpec::from_atomic_units("a", 100.0, 0.0).unwrap();
        let a2 = AtomSpec::from_atomic_units("b", 200.0, 0.0).unwrap();
        let e1 = energy_zero_t(&a1, &tg, &opts).unwrap();
        let e2 = energy_zero_t(&a2, &tg, &opts).unwrap();
        assert!(e1 < 0.0);
        assert_relative_eq!(e2, 2.0 * e1, max_relative = 1e-12);
        let zero = AtomSpec::new("z", 0.0, 0.0).unwrap();
        assert_eq!(energy_zero_t(&zero, &tg, &opts).unwrap(), 0.0);
    }

    #[test]
    fn implicit_sum_matches_plain_summation() {
        let opts = EvalOptions::default();
        let plain = EvalOptions {
            direct_terms: None,
            ..opts
        };
        for tau in [0.3, 0.05] {
            let a = implicit_sum(&unit_atom(), tau, &opts).unwrap();
            let b = implicit_sum(&unit_atom(), tau, &plain).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-7);
        }
    }

    #[test]
    fn thermal_sums_match_plain_summation() {
        let opts = EvalOptions {
            rel_tol: 1e-8,
            ..Default::default()
        };
        let plain = EvalOptions {
            direct_terms: None,
            ..opts
        };
        let tau = 0.3;
        let a = thermal_sums(&unit_atom(), tau, &opts).unwrap();
        let b = thermal_sums(&unit_atom(), tau, &plain).unwrap();
        assert_relative_eq!(a.nonzero_freq[0], b.nonzero_freq[0], max_relative = 1e-6);
        assert_relative_eq!(a.nonzero_freq[1], b.nonzero_freq[1], max_relative = 1e-6);
    }

    #[test]
    fn full_matches_direct_summation() {
        let tg = geometry_for_tau(0.33);
        let opts = EvalOptions::default();
        let atom = AtomSpec::from_atomic_units("x", 100.0, 20.0).unwrap();
        let full = free_energy_full(&atom, &tg, &opts).unwrap();
        let direct = free_energy_direct(&atom, &tg, &opts).unwrap();
        assert_relative_eq!(full, direct, max_relative = 1e-7);
    }

    #[test]
    fn zero_atom_gives_zero_breakdown() {
        let tg = geometry_for_tau(0.01);
        let atom = AtomSpec::new("z", 0.0, 0.0).unwrap();
        let b = free_energy_breakdown(&atom, &tg, &EvalOptions::default()).unwrap();
        for v in [b.e0, b.d1, b.d2_lgeq1, b.d2_l0, b.f_total_numeric, b.f_total_decomposed] {
            assert_eq!(v, 0.0);
        }
        assert_eq!(entropy(&atom, &tg, &EvalOptions::default()).unwrap(), 0.0);
    }

    #[test]
    fn zero_temperature_breakdown_is_energy() {
        let tg = geometry_for_tau(0.0);
        let atom = AtomSpec::from_atomic_units("x", 100.0, 0.0).unwrap();
        let b = free_energy_breakdown(&atom, &tg, &EvalOptions::default()).unwrap();
        assert_eq!(b.d1, 0.0);
        assert_eq!(b.f_total_numeric, b.e0);
        assert!(matches!(
            free_energy_full(&atom, &tg, &EvalOptions::default()),
            Err(Error::ZeroTemperature)
        ));
    }

    #[test]
    fn options_validation() {
        let bad = EvalOptions {
            rel_tol: 1e-2,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert!(EvalOptions::default().validate().is_ok());
    }
}
