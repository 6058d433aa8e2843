//! Matsubara-type and alternating series.

use crate::error::{Error, Result};

/// Outcome of a summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub value: f64,
    pub terms_used: u64,
    pub tail_bound: f64,
}

/// Absolute floor used when the partial sum itself is zero.
const ABS_FLOOR: f64 = 1e-300;

/// Primed sum `½·term(0) + Σ_{l≥1} term(l)`.
///
/// Summation stops once three consecutive terms are each below
/// `rel_tol·|S|` and an extrapolated estimate of the remaining tail is below
/// the same bound. The tail estimate is the larger of a geometric and an
/// algebraic extrapolation from the last three terms, so slowly decaying
/// series are not cut off early.
pub fn sum_matsubara<F>(mut term: F, rel_tol: f64, l_max: u64) -> Result<SumResult>
where
    F: FnMut(u64) -> Result<f64>,
{
    if l_max < 16 {
        return Err(Error::InvalidParameter(format!(
            "l_max must be at least 16, got {l_max}"
        )));
    }
    let mut sum = 0.5 * term(0)?;
    let mut recent = [f64::NAN; 3];
    let mut small_run = 0;
    let mut tail = f64::INFINITY;
    for l in 1..=l_max {
        let t = term(l)?;
        sum += t;
        recent = [recent[1], recent[2], t];
        let bound = rel_tol * sum.abs().max(ABS_FLOOR);
        if t.abs() < bound {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 3 {
            tail = tail_estimate(&recent, l);
            if tail < bound {
                return Ok(SumResult {
                    value: sum,
                    terms_used: l + 1,
                    tail_bound: tail,
                });
            }
        }
    }
    if !tail.is_finite() {
        tail = tail_estimate(&recent, l_max);
    }
    Err(Error::Truncation {
        value: sum,
        tail,
        terms: l_max as usize + 1,
    })
}

fn tail_estimate(last: &[f64; 3], n: u64) -> f64 {
    let (t1, t2) = (last[1].abs(), last[2].abs());
    if t2 == 0.0 {
        return t1;
    }
    let r = t2 / t1;
    if r >= 1.0 {
        return f64::INFINITY;
    }
    let geometric = t2 * r / (1.0 - r);
    let n = n as f64;
    // Local power law t ~ n^-p; for a geometric tail p is huge and this
    // bound is negligible next to the geometric one.
    let p = (t1 / t2).ln() / (n / (n - 1.0)).ln();
    let algebraic = if p > 1.0 { t2 * n / (p - 1.0) } else { f64::INFINITY };
    geometric.max(algebraic)
}

/// Endpoint corrections of the Gregory summation formula.
///
/// For a smooth `h` sampled as `f_l = h(τl)`,
/// `Σ_{l≥L} f_l = (1/τ)∫_{τL}^∞ h + gregory_correction(f_L..f_{L+4})`
/// up to terms of sixth order in the step.
pub fn gregory_correction(f: &[f64; 5]) -> f64 {
    let d1 = f[1] - f[0];
    let d2 = f[2] - 2.0 * f[1] + f[0];
    let d3 = f[3] - 3.0 * f[2] + 3.0 * f[1] - f[0];
    let d4 = f[4] - 4.0 * f[3] + 6.0 * f[2] - 4.0 * f[1] + f[0];
    0.5 * f[0] - d1 / 12.0 + d2 / 24.0 - 19.0 * d3 / 720.0 + 3.0 * d4 / 160.0
}

/// Sum of `Σ_{n≥1} a(n)` for a series whose terms alternate with
/// monotonically decreasing magnitude.
///
/// Returns the midpoint `S_n + a(n+1)/2`, whose error is at most
/// `|a(n+1)|/2` by the alternating-series bound.
pub fn sum_alternating<F>(mut a: F, rel_tol: f64) -> Result<SumResult>
where
    F: FnMut(u64) -> f64,
{
    const MAX_TERMS: u64 = 50_000_000;
    let mut sum = 0.0;
    let mut prev = [f64::INFINITY; 2];
    let mut next = a(1);
    for n in 1..MAX_TERMS {
        let cur = next;
        sum += cur;
        next = a(n + 1);
        if next.abs() <= rel_tol * sum.abs().max(ABS_FLOOR) {
            let mags = [prev[0], prev[1], cur.abs(), next.abs()];
            let monotone = mags.windows(2).all(|w| w[1] <= w[0]);
            if !monotone {
                return Err(Error::NonMonotoneTail(n));
            }
            return Ok(SumResult {
                value: sum + 0.5 * next,
                terms_used: n + 1,
                tail_bound: 0.5 * next.abs(),
            });
        }
        prev = [prev[1], cur.abs()];
    }
    Err(Error::Truncation {
        value: sum,
        tail: next.abs(),
        terms: MAX_TERMS as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sign(n: u64) -> f64 {
        if n % 2 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    #[test]
    fn geometric_primed() {
        let r = sum_matsubara(|l| Ok((-(l as f64)).exp()), 1e-12, 1000).unwrap();
        let exact = 0.5 + 1.0 / (std::f64::consts::E - 1.0);
        assert!((r.value - exact).abs() < 1e-11, "{}", r.value);
        assert!(r.tail_bound < 1e-12 * exact);
    }

    #[test]
    fn only_zero_term() {
        let r = sum_matsubara(|l| Ok(if l == 0 { 2.0 } else { 0.0 }), 1e-10, 100).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn shifted_basel() {
        let r = sum_matsubara(|l| Ok(1.0 / ((l + 1) as f64).powi(2)), 1e-5, 2_000_000).unwrap();
        let exact = 0.5 + PI * PI / 6.0 - 1.0;
        assert!((r.value - exact).abs() <= 2.0 * r.tail_bound + 1e-12);
        assert!((r.value - exact).abs() < 2e-5);
    }

    #[test]
    fn truncation_is_reported() {
        let err = sum_matsubara(|l| Ok(1.0 / ((l + 1) as f64).powi(2)), 1e-10, 100).unwrap_err();
        assert!(matches!(err, Error::Truncation { .. }));
    }

    #[test]
    fn gregory_reproduces_exponential_tail() {
        let tau = 0.05;
        let l0 = 4;
        let f: [f64; 5] = std::array::from_fn(|k| (-tau * (l0 + k) as f64).exp());
        let integral = (-tau * l0 as f64).exp() / tau;
        let direct: f64 = (l0..4000).map(|l| (-tau * l as f64).exp()).sum();
        let approx = integral + gregory_correction(&f);
        assert!((approx - direct).abs() < 1e-9 * direct);
    }

    #[test]
    fn alternating_harmonic() {
        let r = sum_alternating(|n| sign(n) / n as f64, 1e-7).unwrap();
        assert!((r.value - 2f64.ln()).abs() < 1e-7);
    }

    #[test]
    fn alternating_eta3() {
        let r = sum_alternating(|n| sign(n) / (n as f64).powi(3), 1e-13)
            .unwrap();
        assert!((r.value - 0.75 * 1.202_056_903_159_594_2).abs() < 1e-12);
    }

    #[test]
    fn alternating_single_term() {
        let r = sum_alternating(|n| if n == 1 { 0.25 } else { 0.0 }, 1e-12).unwrap();
        assert_eq!(r.value, 0.25);
    }

    #[test]
    fn alternating_rejects_growing_tail() {
        let terms = [1.0, -0.5, 0.6, -0.001];
        let err = sum_alternating(|n| terms.get(n as usize - 1).copied().unwrap_or(0.0), 1e-2)
            .unwrap_err();
        assert!(matches!(err, Error::NonMonotoneTail(3)));
    }
}
