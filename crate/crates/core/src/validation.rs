//! Self-validation suite: twelve numerical checks of the library against its
//! closed forms and internal cross-oracles.
//!
//! Every check returns a [`CheckOutcome`]; the `validate` command and the
//! acceptance tests both run them from here.

use crate::asymptotics::{
    coefficients, delta1_asymptotic, delta2_lgeq1_asymptotic, entropy_low_t, i2, i3, i_expansions, i_quadrature,
    tm_correction_coefficient,
};
use crate::cli::{render, Command, OutputFormat, RunRequest};
use crate::error::{Error, Result};
use crate::lifshitz::{delta1_implicit, delta2_l0, delta2_lgeq1, entropy, free_energy_breakdown, EvalOptions};
use crate::numerics::abel_plana_residual;
use crate::poltensor::{thermal_ratios, zero_freq_ratios, TensorPoint};
use crate::reflection::{reflection_full, reflection_thermal_correction};
use crate::units::{make_thermal_geometry, AtomSpec, GrapheneModel, ScaledAtom, ThermalGeometry, CODATA_2018};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

/// Separation used by the temperature-scaling checks, m.
pub const REFERENCE_SEPARATION: f64 = 2e-7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

pub const CHECK_NAMES: [&str; 12] = [
    "zero-frequency representation equivalence",
    "I-integral closed forms and expansions",
    "Abel-Plana identity",
    "implicit correction T^4 law",
    "dominant explicit correction T^3 law",
    "zero-frequency T^4 ln T coefficient",
    "Nernst theorem",
    "decomposition consistency",
    "Q1/Q2 coefficient ratio",
    "TM correction prefactor 96 vs 92",
    "reflection coefficient bounds",
    "sweep determinism",
];

/// Runs check `id` (1..=12).
pub fn run_check(id: u8) -> CheckOutcome {
    let result = match id {
        1 => representation_equivalence(),
        2 => i_integrals(),
        3 => abel_plana(),
        4 => implicit_correction(),
        5 => explicit_correction(),
        6 => zero_frequency_log(),
        7 => nernst(),
        8 => decomposition_consistency(),
        9 => coefficient_ratio(),
        10 => tm_prefactor(),
        11 => reflection_bounds(),
        12 => determinism(),
        _ => Err(Error::InvalidParameter(format!("no check numbered {id}"))),
    };
    let name = CHECK_NAMES.get(id.wrapping_sub(1) as usize).copied().unwrap_or("unknown");
    match result {
        Ok((passed, detail)) => CheckOutcome { id, name, passed, detail },
        Err(e) => CheckOutcome {
            id,
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

pub fn run_all() -> Vec<CheckOutcome> {
    (1..=12).map(run_check).collect()
}

type Check = Result<(bool, String)>;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Atom with α₀ = β₀ = a³, i.e. unit scaled responses at separation `a`.
pub fn reference_atom(a: f64) -> AtomSpec {
    AtomSpec {
        name: "reference".into(),
        alpha0: a.powi(3),
        beta0: a.powi(3),
    }
}

/// Geometry at separation `a` with the given dimensionless temperature τ.
pub fn geometry_at_tau(a: f64, tau: f64) -> Result<ThermalGeometry> {
    let c = CODATA_2018;
    let t = tau * c.hbar_c() / (4.0 * PI * a * c.k_b);
    make_thermal_geometry(a, t, &GrapheneModel::default(), &c)
}

fn representation_equivalence() -> Check {
    let g = GrapheneModel::default();
    let mut worst = 0.0f64;
    for y in [0.5, 1.0, 5.0] {
        for b_tilde in [2.0, 10.0, 100.0] {
            // B̃ = T_eff^g/T = 2πṽ/τ.
            let tau = 2.0 * PI * g.v_tilde / b_tilde;
            let u_form = thermal_ratios(&TensorPoint::new(0.0, y, tau)?, &g, 1e-13)?;
            let x_form = zero_freq_ratios(y, tau, &g, 1e-13)?;
            worst = worst
                .max(rel(u_form.ratio00, x_form.ratio00))
                .max(rel(u_form.ratio, x_form.ratio));
        }
    }
    Ok((worst <= 1e-8, format!("max relative difference {worst:.2e} (limit 1e-8)")))
}

fn i_integrals() -> Check {
    let mut worst = 0.0f64;
    for b in [0.05, 0.1, 0.25, 0.4] {
        worst = worst
            .max(rel(i2(b)?, i_quadrature(2, b, 1e-13)?))
            .max(rel(i3(b)?, i_quadrature(3, b, 1e-13)?));
    }
    let remainder = |b: f64| -> Result<(f64, f64)> {
        let (e2, e3) = i_expansions(b);
        Ok((i2(b)? - e2, i3(b)? - e3))
    };
    let mut bounded = true;
    let mut largest = 0.0f64;
    for b in [1e-2, 1e-3, 1e-4] {
        let (r2, r3) = remainder(b)?;
        let (s2, s3) = remainder(2.0 * b)?;
        bounded &= r2.abs() <= s2.abs() + 1e-6 && r3.abs() <= s3.abs() + 1e-6;
        largest = largest.max(r2.abs()).max(r3.abs());
    }
    Ok((
        worst <= 1e-9 && bounded,
        format!("closed vs quadrature {worst:.2e} (limit 1e-9); expansion remainders bounded: {bounded} (max {largest:.2e})"),
    ))
}

fn abel_plana() -> Check {
    let mut worst = 0.0f64;
    for s in [0.5, 1.0, 5.0] {
        worst = worst.max(abel_plana_residual(s)?);
    }
    Ok((worst <= 1e-10, format!("max residual {worst:.2e} (limit 1e-10)")))
}

fn implicit_correction() -> Check {
    let a = REFERENCE_SEPARATION;
    let atom = reference_atom(a);
    let opts = EvalOptions::default();
    let mut ratios = Vec::new();
    for tau in [0.02, 0.01, 0.005] {
        let tg = geometry_at_tau(a, tau)?;
        ratios.push(delta1_implicit(&atom, &tg, &opts)? / delta1_asymptotic(&atom, &tg, &opts.graphene));
    }
    let pass = ratios.iter().all(|r| (r - 1.0).abs() <= 0.03);
    Ok((pass, format!("numeric/closed form at tau 0.02, 0.01, 0.005: {} (limit 3%)", list(&ratios))))
}

fn explicit_correction() -> Check {
    let a = REFERENCE_SEPARATION;
    let atom = reference_atom(a);
    let opts = EvalOptions::default();
    let mut ratios = Vec::new();
    for tau in [4e-3, 2e-3, 1e-3] {
        let tg = geometry_at_tau(a, tau)?;
        ratios.push(delta2_lgeq1(&atom, &tg, &opts)? / delta2_lgeq1_asymptotic(&atom, &tg, &opts.graphene));
    }
    let pass = ratios.iter().all(|r| (r - 1.0).abs() <= 0.02);
    Ok((pass, format!("numeric/closed form at tau 4e-3, 2e-3, 1e-3: {} (limit 2%)", list(&ratios))))
}

/// Least-squares fit `v = A x + B`.
pub fn linear_fit(x: &[f64], v: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let mv = v.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|xi| (xi - mx) * (xi - mx)).sum();
    let sxv: f64 = x.iter().zip(v).map(|(xi, vi)| (xi - mx) * (vi - mv)).sum();
    let slope = sxv / sxx;
    (slope, mv - slope * mx)
}

fn zero_frequency_log() -> Check {
    let a = REFERENCE_SEPARATION;
    let atom = reference_atom(a);
    let opts = EvalOptions::default();
    let g = opts.graphene;
    // F_l0 = k_BT t³ (A ln τ + B) with t = τ/(4π); τ spaced geometrically.
    let taus: Vec<f64> = (0..7).map(|k| 1e-3 * 10f64.powf(k as f64 / 6.0)).collect();
    let values = taus
        .par_iter()
        .map(|&tau| {
            let tg = geometry_at_tau(a, tau)?;
            let t = tau / (4.0 * PI);
            Ok(delta2_l0(&atom, &tg, &opts)? / (tg.thermal_energy() * t.powi(3)))
        })
        .collect::<Result<Vec<f64>>>()?;
    let logs: Vec<f64> = taus.iter().map(|t| t.ln()).collect();
    let (fitted, _) = linear_fit(&logs, &values);
    let c = coefficients(&ScaledAtom::new(1.0, 1.0), &g);
    let expected = 96.0 * g.alpha_fs * CODATA_2018.zeta3 * c.r_sum() / (g.v_tilde * g.v_tilde);
    let r = fitted / expected;
    Ok(((r - 1.0).abs() <= 0.1, format!("fitted/closed-form log coefficient {r:.4} (limit 10%)")))
}

/// Temperatures of the entropy sequence, K.
pub const NERNST_TEMPERATURES: [f64; 7] = [10.0, 3.0, 1.0, 0.3, 0.1, 0.03, 0.01];

fn nernst() -> Check {
    let a = REFERENCE_SEPARATION;
    let atom = reference_atom(a);
    let opts = EvalOptions::default();
    let g = opts.graphene;
    let entropies = NERNST_TEMPERATURES
        .par_iter()
        .map(|&t| entropy(&atom, &make_thermal_geometry(a, t, &g, &CODATA_2018)?, &opts))
        .collect::<Result<Vec<f64>>>()?;
    let positive = entropies.iter().all(|&s| s > 0.0);
    let tail = 3; // 0.1, 0.03, 0.01 K: the lowest decade
    let n = entropies.len();
    let logs_t: Vec<f64> = NERNST_TEMPERATURES[n - tail..].iter().map(|t| t.ln()).collect();
    let logs_s: Vec<f64> = entropies[n - tail..].iter().map(|s| s.abs().ln()).collect();
    let (slope, _) = linear_fit(&logs_t, &logs_s);
    let lowest = make_thermal_geometry(a, NERNST_TEMPERATURES[n - 1], &g, &CODATA_2018)?;
    let coefficient_ratio = entropies[n - 1] / entropy_low_t(&atom, &lowest, &g);
    let pass = positive && (slope - 2.0).abs() <= 0.1 && (coefficient_ratio - 1.0).abs() <= 0.05;
    Ok((
        pass,
        format!(
            "S > 0 on all {n} temperatures: {positive}; log-log slope over 0.1-0.01 K {slope:.4} (2 +- 0.1); S/T^2 numeric/closed form at 0.01 K {coefficient_ratio:.4e} (limit 5%)"
        ),
    ))
}

fn decomposition_consistency() -> Check {
    let a = REFERENCE_SEPARATION;
    let atom = reference_atom(a);
    let opts = EvalOptions::default();
    let taus = [1e-2, 5e-3, 2.5e-3, 1.25e-3];
    let eps = taus
        .par_iter()
        .map(|&tau| {
            let b = free_energy_breakdown(&atom, &geometry_at_tau(a, tau)?, &opts)?;
            if !b.flags.is_empty() {
                return Err(Error::InvalidParameter(b.flags.join("; ")));
            }
            Ok((b.f_total_decomposed - b.f_total_numeric).abs() / (b.f_total_numeric - b.e0).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    let factors: Vec<f64> = eps.windows(2).map(|w| w[0] / w[1]).collect();
    let pass = factors.iter().all(|&f| f >= 1.6);
    Ok((
        pass,
        format!("epsilon at tau 1e-2..1.25e-3: {}; halving factors {} (min 1.6)", list(&eps), list(&factors)),
    ))
}

fn coefficient_ratio() -> Check {
    let c = coefficients(&ScaledAtom::new(1.0, 1.0), &GrapheneModel::default());
    let r = c.q1 / c.q2;
    Ok(((r - 2283.9).abs() <= 0.5, format!("Q1/Q2 = {r:.3} (2283.9 +- 0.5)")))
}

fn tm_prefactor() -> Check {
    let g = GrapheneModel::default();
    let tau = 1e-3;
    let t3 = (tau / (2.0 * PI)).powi(3);
    let zeta3 = CODATA_2018.zeta3;
    let mut within = true;
    let (mut dev96, mut dev92) = (0.0, 0.0);
    let mut ratios = Vec::new();
    for y in [0.5, 1.0, 2.0] {
        let p = TensorPoint::matsubara(1, y, tau)?;
        let numeric = reflection_thermal_correction(&p, &g)?.r_tm / t3;
        let f96 = tm_correction_coefficient(&p, &g, zeta3, 96.0);
        let f92 = tm_correction_coefficient(&p, &g, zeta3, 92.0);
        within &= rel(numeric, f96) <= 0.05;
        dev96 += rel(numeric, f96).powi(2);
        dev92 += rel(numeric, f92).powi(2);
        ratios.push(numeric / f96);
    }
    let (rms96, rms92) = ((dev96 / 3.0f64).sqrt(), (dev92 / 3.0f64).sqrt());
    Ok((
        within && rms96 < rms92,
        format!(
            "numeric/96-form at y 0.5, 1, 2: {} (limit 5%); rms deviation from 96-form {rms96:.3e}, from 92-form {rms92:.3e}",
            list(&ratios)
        ),
    ))
}

fn reflection_bounds() -> Check {
    let g = GrapheneModel::default();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for tau in [1e-2, 1e-3] {
        let results: Vec<(usize, Vec<String>)> = (0..=200u64)
            .into_par_iter()
            .map(|l| {
                let zeta = tau * l as f64;
                let mut bad = Vec::new();
                let mut n = 0;
                for k in 0..=16 {
                    // Geometric offsets from just above the light cone up to y = 40.
                    let y = zeta + (40.0 - zeta) * 10f64.powf(-8.0 + 0.5 * k as f64);
                    n += 1;
                    match TensorPoint::new(zeta, y, tau).and_then(|p| reflection_full(&p, &g)) {
                        Ok(r) if r.within_bounds() => {}
                        Ok(r) => bad.push(format!("l={l} y={y:e}: r_tm={:e} r_te={:e}", r.r_tm, r.r_te)),
                        Err(e) => bad.push(format!("l={l} y={y:e}: {e}")),
                    }
                }
                (n, bad)
            })
            .collect();
        for (n, bad) in results {
            checked += n;
            failures.extend(bad);
        }
    }
    let detail = match failures.first() {
        None => format!("{checked} points within bounds, no branch violations"),
        Some(first) => format!("{} of {checked} points failed, first: {first}", failures.len()),
    };
    Ok((failures.is_empty(), detail))
}

fn determinism() -> Check {
    let request = RunRequest {
        command: Command::Sweep,
        atom: AtomSpec::from_atomic_units("determinism", 100.0, 20.0)?,
        grid: vec![(REFERENCE_SEPARATION, 30.0), (REFERENCE_SEPARATION, 300.0), (5e-7, 100.0)],
        opts: EvalOptions::default(),
        format: OutputFormat::Csv,
        out: None,
    };
    let first = render(&request)?;
    let second = render(&request)?;
    let same = first.text == second.text;
    Ok((same, format!("two sweeps of {} points byte-identical: {same}", request.grid.len())))
}

fn list(v: &[f64]) -> String {
    v.iter()
        .map(|x| if (1e-2..1e3).contains(&x.abs()) { format!("{x:.4}") } else { format!("{x:.3e}") })
        .collect::<Vec<_>>().join(", ")
}
