//! Adaptive Gauss-Kronrod (10/21 point) quadrature.
//!
//! The engine is written for vector-valued integrands `[f64; N]` so that
//! several integrals sharing expensive intermediate quantities can be computed
//! from the same abscissae. Scalar entry points wrap the `N = 1` case.

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_643_474_695,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Weights of the embedded 10-point Gauss rule, attached to XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Convergence target for the adaptive driver.
///
/// A component is converged when its error estimate is below
/// `max(abs, rel * |I|)`, or `max(abs, rel * ∫|f|)` when `l1` is set. The L1
/// form is what sign-changing integrands need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub l1: bool,
    pub max_subdivisions: usize,
}

impl Tolerance {
    pub fn relative(rel: f64) -> Self {
        Self {
            rel,
            abs: 1e-300,
            l1: false,
            max_subdivisions: 400,
        }
    }

    pub fn l1(rel: f64) -> Self {
        Self {
            l1: true,
            ..Self::relative(rel)
        }
    }

    pub fn with_abs(mut self, abs: f64) -> Self {
        self.abs = abs;
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
    abs: [f64; N],
}

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

fn gk21<const N: usize, F>(f: &mut F, a: f64, b: f64) -> Result<Panel<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;

    let mut resk = [0.0; N];
    let mut resg = [0.0; N];
    let mut resabs = [0.0; N];
    let mut fv1 = [[0.0; N]; 10];
    let mut fv2 = [[0.0; N]; 10];
    for i in 0..N {
        resk[i] = WGK[10] * fc[i];
        resabs[i] = (WGK[10] * fc[i]).abs();
    }
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        for i in 0..N {
            resk[i] += WGK[j] * (f1[i] + f2[i]);
            resabs[i] += WGK[j] * (f1[i].abs() + f2[i].abs());
            if j % 2 == 1 {
                resg[i] += WG[j / 2] * (f1[i] + f2[i]);
            }
        }
    }

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    let mut abs = [0.0; N];
    for i in 0..N {
        let mean = 0.5 * resk[i];
        let mut resasc = WGK[10] * (fc[i] - mean).abs();
        for j in 0..10 {
            resasc += WGK[j] * ((fv1[j][i] - mean).abs() + (fv2[j][i] - mean).abs());
        }
        let h = half.abs();
        value[i] = resk[i] * half;
        abs[i] = resabs[i] * h;
        error[i] = rescale_error((resk[i] - resg[i]) * half, abs[i], resasc * h);
        if !value[i].is_finite() {
            return Err(Error::Quadrature {
                value: value[i],
                error: f64::INFINITY,
                evaluations: 21,
            });
        }
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        abs,
    })
}

/// Adaptive integration of a vector integrand over consecutive panels.
///
/// `edges` must be sorted; each adjacent pair is an initial panel. Panels are
/// bisected, worst first, until every component meets `tol`.
pub fn integrate_panels_vec<const N: usize, F>(
    mut f: F,
    edges: &[f64],
    tol: Tolerance,
) -> Result<([f64; N], [f64; N], usize)>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    if edges.len() < 2 {
        return Err(Error::InvalidParameter(
            "at least two panel edges are required".into(),
        ));
    }
    let mut panels: Vec<Panel<N>> = Vec::with_capacity(edges.len() + 16);
    for w in edges.windows(2) {
        if w[1] > w[0] {
            panels.push(gk21(&mut f, w[0], w[1])?);
        } else if w[1] < w[0] {
            return Err(Error::InvalidParameter("panel edges must be sorted".into()));
        }
    }
    let mut evaluations = 21 * panels.len();
    let mut splits = 0;

    loop {
        let mut total = [0.0; N];
        let mut err = [0.0; N];
        let mut l1 = [0.0; N];
        for p in &panels {
            for i in 0..N {
                total[i] += p.value[i];
                err[i] += p.error[i];
                l1[i] += p.abs[i];
            }
        }
        let mut target = [0.0; N];
        let mut done = true;
        for i in 0..N {
            let scale = if tol.l1 { l1[i] } else { total[i].abs() };
            target[i] = tol.abs.max(tol.rel * scale);
            // Below the round-off floor further bisection cannot help.
            let floor = 100.0 * f64::EPSILON * l1[i];
            if err[i] > target[i] && err[i] > floor {
                done = false;
            }
        }
        if done {
            return Ok((total, err, evaluations));
        }
        if splits >= tol.max_subdivisions {
            return Err(Error::Quadrature {
                value: total[0],
                error: err[0],
                evaluations,
            });
        }

        // Worst panel relative to its component's target.
        let (worst, _) = panels
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let score = (0..N)
                    .map(|i| p.error[i] / target[i].max(f64::MIN_POSITIVE))
                    .fold(0.0, f64::max);
                (k, score)
            })
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            return Err(Error::Quadrature {
                value: total[0],
                error: err[0],
                evaluations,
            });
        }
        panels.push(gk21(&mut f, p.a, mid)?);
        panels.push(gk21(&mut f, mid, p.b)?);
        evaluations += 42;
        splits += 1;
    }
}

/// Scalar form of [`integrate_panels_vec`].
pub fn integrate_panels<F>(mut f: F, edges: &[f64], tol: Tolerance) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (v, e, n) = integrate_panels_vec(|x| f(x).map(|y| [y]), edges, tol)?;
    Ok(QuadratureResult {
        value: v[0],
        abs_error_estimate: e[0],
        evaluations: n,
    })
}

/// Panels `[lower, lower + first]`, then widths doubling until `lower + span`.
pub fn geometric_edges(lower: f64, first: f64, span: f64) -> Vec<f64> {
    let mut edges = vec![lower];
    let mut w = first;
    while w < span {
        edges.push(lower + w);
        w *= 2.0;
    }
    edges.push(lower + span);
    edges
}

/// Integral over `[lower, ∞)` of a function with at least exponential decay.
///
/// The half line is covered by `[lower, lower + 1]` and then by panels of
/// doubling width. Panels stop being added once two in a row contribute less
/// than `rel_tol` of the running total.
pub fn integrate_decaying<F>(mut f: F, lower: f64, rel_tol: f64) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let tol = Tolerance::l1(rel_tol);
    let mut total = 0.0;
    let mut err = 0.0;
    let mut evaluations = 0;
    let mut small_run = 0;
    let mut start = lower;
    let mut width = 1.0;
    for _ in 0..80 {
        let end = start + width;
        let r = integrate_panels(&mut f, &[start, end], tol)?;
        total += r.value;
        err += r.abs_error_estimate;
        evaluations += r.evaluations;
        if r.value.abs() <= 0.1 * rel_tol * total.abs() || (r.value == 0.0 && total == 0.0) {
            small_run += 1;
            if small_run >= 2 {
                return Ok(QuadratureResult {
                    value: total,
                    abs_error_estimate: err + r.value.abs(),
                    evaluations,
                });
            }
        } else {
            small_run = 0;
        }
        start = end;
        width *= 2.0;
    }
    Err(Error::Quadrature {
        value: total,
        error: err,
        evaluations,
    })
}

/// Integral over `[lo, hi]`.
///
/// With `endpoint_sqrt` the substitution `x = lo + (hi - lo) sin²θ` is applied,
/// which removes square-root endpoint behaviour such as `√(x(1-x))`.
pub fn integrate_finite<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    endpoint_sqrt: bool,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "integration bounds must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let tol = Tolerance::l1(rel_tol);
    if endpoint_sqrt {
        let len = hi - lo;
        let half_pi = std::f64::consts::FRAC_PI_2;
        let edges = [0.0, 0.25 * half_pi, 0.5 * half_pi, 0.75 * half_pi, half_pi];
        integrate_panels(
            |t| {
                let s = t.sin();
                let x = lo + len * s * s;
                Ok(f(x)? * len * (2.0 * t).sin())
            },
            &edges,
            tol,
        )
    } else {
        integrate_panels(f, &[lo, hi], tol)
    }
}
