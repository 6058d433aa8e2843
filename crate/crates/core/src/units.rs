//! Physical constants, atom and geometry descriptions, SI ↔ dimensionless.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

/// Fundamental constants (SI), frozen at their CODATA-2018 values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Fine-structure constant e²/(ħc).
    pub alpha_fs: f64,
    /// Riemann ζ(3).
    pub zeta3: f64,
    /// Bohr radius, m.
    pub bohr_radius: f64,
}

pub const CODATA_2018: Constants = Constants {
    hbar: 1.054_571_817e-34,
    c: 299_792_458.0,
    k_b: 1.380_649e-23,
    alpha_fs: 7.297_352_569_3e-3,
    zeta3: 1.202_056_903_159_594_2,
    bohr_radius: 5.291_772_109_03e-11,
};

impl Default for Constants {
    fn default() -> Self {
        CODATA_2018
    }
}

impl Constants {
    /// ħc in J·m.
    pub fn hbar_c(&self) -> f64 {
        self.hbar * self.c
    }
}

/// Dirac-model graphene parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrapheneModel {
    /// Fermi velocity in units of c.
    pub v_tilde: f64,
    /// Keep the `(1 − ṽ²)ζ²` term inside the frequency-momentum root.
    pub use_exact_gtilde: bool,
    /// Coupling of the sheet to the field; the fine-structure constant
    /// unless deliberately switched off in tests.
    pub alpha_fs: f64,
}

impl Default for GrapheneModel {
    fn default() -> Self {
        Self {
            v_tilde: 1.0 / 300.0,
            use_exact_gtilde: false,
            alpha_fs: CODATA_2018.alpha_fs,
        }
    }
}

impl GrapheneModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.v_tilde > 0.0 && self.v_tilde < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "Fermi velocity ratio must lie in (0, 1), got {}",
                self.v_tilde
            )));
        }
        if !(self.alpha_fs >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "coupling must be non-negative, got {}",
                self.alpha_fs
            )));
        }
        Ok(())
    }
}

/// Static atomic response (Gaussian volume convention, m³).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomSpec {
    pub name: String,
    /// Static electric polarizability, m³.
    pub alpha0: f64,
    /// Static magnetic susceptibility, m³.
    pub beta0: f64,
}

impl AtomSpec {
    pub fn new(name: impl Into<String>, alpha0: f64, beta0: f64) -> Result<Self> {
        let atom = Self {
            name: name.into(),
            alpha0,
            beta0,
        };
        atom.validate()?;
        Ok(atom)
    }

    /// Atom given in atomic units of polarizability (a_B³).
    pub fn from_atomic_units(name: impl Into<String>, alpha0_au: f64, beta0_au: f64) -> Result<Self> {
        Self::new(
            name,
            alpha0_from_atomic_units(alpha0_au)?,
            alpha0_from_atomic_units(beta0_au)?,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (label, v) in [("alpha0", self.alpha0), ("beta0", self.beta0)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidAtom(format!(
                    "{label} of '{}' must be finite and non-negative, got {v}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Response divided by `a³`, the form entering the dimensionless kernel.
    pub fn scaled(&self, a: f64) -> ScaledAtom {
        let a3 = a * a * a;
        ScaledAtom {
            alpha: self.alpha0 / a3,
            beta: self.beta0 / a3,
        }
    }
}

/// Dimensionless polarizability and susceptibility, α₀/a³ and β₀/a³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledAtom {
    pub alpha: f64,
    pub beta: f64,
}

impl ScaledAtom {
    pub const fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha == 0.0 && self.beta == 0.0
    }
}

/// Separation and temperature with the derived dimensionless quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalGeometry {
    /// Atom-sheet separation, m.
    pub a: f64,
    /// Temperature, K.
    pub temperature: f64,
    /// 4π a k_B T/(ħc) = 2π T/T_eff.
    pub tau: f64,
    /// k_B T_eff = ħc/(2a), K.
    pub t_eff: f64,
    /// ṽ·T_eff, K.
    pub t_eff_graphene: f64,
    pub constants: Constants,
}

impl ThermalGeometry {
    /// k_B T in joules.
    pub fn thermal_energy(&self) -> f64 {
        self.constants.k_b * self.temperature
    }

    /// Same separation at another temperature.
    pub fn at_temperature(&self, temperature: f64, g: &GrapheneModel) -> Result<Self> {
        make_thermal_geometry(self.a, temperature, g, &self.constants)
    }

    /// ħc/a in joules, the energy scale of the zero-temperature term.
    pub fn quantum_energy(&self) -> f64 {
        self.constants.hbar_c() / self.a
    }
}

pub fn make_thermal_geometry(
    a: f64,
    temperature: f64,
    g: &GrapheneModel,
    c: &Constants,
) -> Result<ThermalGeometry> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidGeometry(a));
    }
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(Error::InvalidTemperature(temperature));
    }
    g.validate()?;
    let t_eff = c.hbar_c() / (2.0 * a * c.k_b);
    Ok(ThermalGeometry {
        a,
        temperature,
        tau: 4.0 * PI * a * c.k_b * temperature / c.hbar_c(),
        t_eff,
        t_eff_graphene: g.v_tilde * t_eff,
        constants: *c,
    })
}

/// ζ_l = τ·l.
pub fn matsubara_zeta(l: u64, tg: &ThermalGeometry) -> f64 {
    tg.tau * l as f64
}

/// Converts atomic units of polarizability (a_B³) to m³.
pub fn alpha0_from_atomic_units(value: f64) -> Result<f64> {
    if !(value >= 0.0) || !value.is_finite() {
        return Err(Error::InvalidAtom(format!(
            "polarizability in atomic units must be finite and non-negative, got {value}"
        )));
    }
    Ok(value * CODATA_2018.bohr_radius.powi(3))
}

/// One row of an atom table file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomRecord {
    pub name: String,
    pub alpha0_au: f64,
    pub beta0_au: f64,
    /// Per-Matsubara-index polarizabilities. Reserved; rejected unless the
    /// caller opts in through [`AtomTableOptions::allow_per_l_table`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_per_l_au: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AtomTableOptions {
    pub allow_per_l_table: bool,
}

/// Parses an atom table from JSON text.
pub fn parse_atom_table(json: &str, opts: AtomTableOptions) -> Result<Vec<AtomSpec>> {
    let records: Vec<AtomRecord> = serde_json::from_str(json)?;
    records
        .into_iter()
        .map(|r| {
            if r.alpha_per_l_au.is_some() && !opts.allow_per_l_table {
                return Err(Error::Experimental(format!(
                    "per-index polarizability table for '{}'",
                    r.name
                )));
            }
            AtomSpec::from_atomic_units(r.name, r.alpha0_au, r.beta0_au)
        })
        .collect()
}

pub fn load_atom_table(path: &Path, opts: AtomTableOptions) -> Result<Vec<AtomSpec>> {
    let text = std::fs::read_to_string(path)?;
    parse_atom_table(&text, opts)
}

/// Exact, case-sensitive lookup.
pub fn find_atom<'a>(table: &'a [AtomSpec], name: &str) -> Option<&'a AtomSpec> {
    table.iter().find(|a| a.name == name)
}
