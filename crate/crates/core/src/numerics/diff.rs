//! Central differences with Richardson extrapolation.

use crate::error::{Error, Result};

/// Agreement required between successive extrapolated estimates.
const AGREEMENT: f64 = 1e-6;
/// Agreement accepted once the smallest step is reached; noisier functions
/// settle at this level rather than oscillating.
const SETTLED: f64 = 1e-3;

/// First derivative of `f` at `x` starting from step `h0`.
///
/// Steps are halved down to `h0/256`. See [`derivative_central_with_floor`].
pub fn derivative_central<F>(f: F, x: f64, h0: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    derivative_central_with_floor(f, x, h0, h0 / 256.0)
}

/// First derivative with an explicit smallest step.
///
/// Central differences `D(h)` at `h, h/2, h/4, …` are combined by two levels
/// of Richardson extrapolation (removing the `h²` and `h⁴` error terms). The
/// step is halved until two successive extrapolated values agree to `1e-6`
/// relative. If the floor is reached first, the estimate with the smallest
/// gap is returned when that gap is below `1e-3` relative; otherwise the
/// estimates oscillate and the best one is returned inside a
/// [`Error::Derivative`].
pub fn derivative_central_with_floor<F>(mut f: F, x: f64, h0: f64, h_min: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(h0 > 0.0) || !h0.is_finite() {
        return Err(Error::InvalidParameter(format!("step must be positive, got {h0}")));
    }
    let mut central = |h: f64| -> Result<(f64, f64)> {
        let plus = f(x + h)?;
        let minus = f(x - h)?;
        Ok(((plus - minus) / (2.0 * h), (plus.abs() + minus.abs()) / h))
    };

    let mut h = h0;
    let mut d = Vec::with_capacity(12);
    let mut noise = 0.0f64;
    for _ in 0..3 {
        let (v, s) = central(h)?;
        d.push(v);
        noise = noise.max(s);
        h *= 0.5;
    }
    let extrapolate = |d: &[f64]| {
        let n = d.len();
        let r1a = (4.0 * d[n - 2] - d[n - 3]) / 3.0;
        let r1b = (4.0 * d[n - 1] - d[n - 2]) / 3.0;
        (16.0 * r1b - r1a) / 15.0
    };
    let mut prev = extrapolate(&d);
    let mut best = (prev, f64::INFINITY);
    while h >= h_min {
        let (v, s) = central(h)?;
        d.push(v);
        noise = noise.max(s);
        let cur = extrapolate(&d);
        let gap = (cur - prev).abs();
        if gap < best.1 {
            best = (cur, gap);
        }
        if gap <= AGREEMENT * cur.abs() || gap <= 1e-14 * noise {
            return Ok(cur);
        }
        prev = cur;
        h *= 0.5;
    }
    if best.1 <= SETTLED * best.0.abs() {
        return Ok(best.0);
    }
    Err(Error::Derivative { best: best.0 })
}
