//! TM and TE reflection coefficients of the sheet.
//!
//! In terms of the tensor ratios ρ₀₀, ρ the full coefficients are
//! `r_TM = p(1+ρ₀₀)/(p(1+ρ₀₀) + q)` with `p = παy`, `q = 2g̃`, and
//! `r_TE = −P(1+ρ)/(P(1+ρ) + Q)` with `P = παg̃`, `Q = 2y`. Thermal
//! corrections are formed directly as differences so that they never come
//! from subtracting two nearly equal coefficients.

use crate::error::{Error, Result};
use crate::poltensor::{g_tilde, thermal_ratios, zero_freq_ratios, TensorPoint, ThermalRatios, DEFAULT_REL_TOL};
use crate::units::GrapheneModel;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReflectionPair {
    pub r_tm: f64,
    pub r_te: f64,
}

impl ReflectionPair {
    /// 0 ≤ r_TM < 1 and −1 < r_TE ≤ 0.
    pub fn within_bounds(&self) -> bool {
        (0.0..1.0).contains(&self.r_tm) && self.r_te > -1.0 && self.r_te <= 0.0
    }
}

/// The four couplings `(p, q, P, Q)` at a point.
#[derive(Debug, Clone, Copy)]
pub struct Couplings {
    pub p_tm: f64,
    pub q_tm: f64,
    pub p_te: f64,
    pub q_te: f64,
}

impl Couplings {
    pub fn at(p: &TensorPoint, g: &GrapheneModel) -> Result<Self> {
        if p.y == 0.0 && p.zeta == 0.0 {
            return Err(Error::SingularPoint);
        }
        let gt = g_tilde(p, g);
        let pa = PI * g.alpha_fs;
        Ok(Self {
            p_tm: pa * p.y,
            q_tm: 2.0 * gt,
            p_te: pa * gt,
            q_te: 2.0 * p.y,
        })
    }

    pub fn zero_t(&self) -> ReflectionPair {
        ReflectionPair {
            r_tm: self.p_tm / (self.p_tm + self.q_tm),
            r_te: -self.p_te / (self.p_te + self.q_te),
        }
    }

    /// First-order corrections in the ratios.
    pub fn linear(&self, r: &ThermalRatios) -> ReflectionPair {
        let (p, q, pp, qq) = (self.p_tm, self.q_tm, self.p_te, self.q_te);
        ReflectionPair {
            r_tm: p * q * r.ratio00 / ((p + q) * (p + q)),
            r_te: -pp * qq * r.ratio / ((pp + qq) * (pp + qq)),
        }
    }

    /// Exact differences `r(ρ) − r(0)`.
    pub fn exact(&self, r: &ThermalRatios) -> ReflectionPair {
        let (p, q, pp, qq) = (self.p_tm, self.q_tm, self.p_te, self.q_te);
        ReflectionPair {
            r_tm: p * q * r.ratio00 / ((p * (1.0 + r.ratio00) + q) * (p + q)),
            r_te: -pp * qq * r.ratio / ((pp * (1.0 + r.ratio) + qq) * (pp + qq)),
        }
    }
}

/// Tensor ratios at a point, taking the finite-interval route at ζ = 0.
pub fn ratios_at(p: &TensorPoint, g: &GrapheneModel, rel_tol: f64) -> Result<ThermalRatios> {
    if p.tau == 0.0 {
        return Ok(ThermalRatios::default());
    }
    if p.zeta == 0.0 {
        zero_freq_ratios(p.y, p.tau, g, rel_tol)
    } else {
        thermal_ratios(p, g, rel_tol)
    }
}

/// Zero-temperature coefficients `απy/(απy + 2g̃)` and `−απg̃/(απg̃ + 2y)`.
pub fn reflection_zero_t(p: &TensorPoint, g: &GrapheneModel) -> Result<ReflectionPair> {
    Ok(Couplings::at(p, g)?.zero_t())
}

/// Full coefficients including the thermal part of the tensor.
pub fn reflection_full(p: &TensorPoint, g: &GrapheneModel) -> Result<ReflectionPair> {
    if p.y == p.zeta {
        return Err(Error::LightCone { zeta: p.zeta });
    }
    let c = Couplings::at(p, g)?;
    let r = ratios_at(p, g, DEFAULT_REL_TOL)?;
    let base = c.zero_t();
    let delta = c.exact(&r);
    Ok(ReflectionPair {
        r_tm: base.r_tm + delta.r_tm,
        r_te: base.r_te + delta.r_te,
    })
}

/// First-order thermal corrections to the coefficients (τ > 0).
pub fn reflection_thermal_correction(p: &TensorPoint, g: &GrapheneModel) -> Result<ReflectionPair> {
    if !(p.tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "thermal correction needs τ > 0, got {}",
            p.tau
        )));
    }
    let c = Couplings::at(p, g)?;
    Ok(c.linear(&ratios_at(p, g, DEFAULT_REL_TOL)?))
}
