//! Adaptive Gauss-Kronrod (10/21 point) quadrature over real or complex
//! integrands, with the QUADPACK error heuristic.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// Values the integrator can accumulate.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// One 21-point Kronrod rule on [a, b]: (estimate, error estimate).
pub fn gk21<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = fc * WGK[10];
    let mut resg = T::zero();
    let mut fv = [(T::zero(), T::zero()); 10];
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv[j] = (f1, f2);
        resk = resk + (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).magnitude();
    let mut resabs = WGK[10] * fc.magnitude();
    for j in 0..10 {
        let (f1, f2) = fv[j];
        resasc += WGK[j] * ((f1 - mean).magnitude() + (f2 - mean).magnitude());
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
    }
    let hl = h.abs();
    resasc *= hl;
    resabs *= hl;
    let mut err = (resk - resg).magnitude() * hl;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (resk * h, err)
}

/// Tolerance and budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-11,
            max_intervals: 2000,
        }
    }
}

impl QuadConfig {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

impl QuadResult<f64> {
    /// The value, or a [`Error::Quadrature`] when the tolerance was missed.
    pub fn checked(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::Quadrature {
                value: self.value,
                error: self.error,
            })
        }
    }
}

impl QuadResult<Complex64> {
    pub fn checked(self) -> Result<Complex64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::Quadrature {
                value: self.value.norm(),
                error: self.error,
            })
        }
    }
}

/// Adaptive bisection of the worst interval until the summed error estimate
/// is below `max(abs_tol, rel_tol * |I|)`.
///
/// `breaks` are interior points at which the range is pre-split.
pub fn integrate_with_breaks<T, F>(mut f: F, breaks: &[f64], cfg: &QuadConfig) -> QuadResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let mut ivs: Vec<(f64, f64, T, f64)> = Vec::new();
    for w in breaks.windows(2) {
        let (v, e) = gk21(&mut f, w[0], w[1]);
        ivs.push((w[0], w[1], v, e));
    }
    loop {
        let mut total = T::zero();
        let mut err = 0.0;
        let mut worst = 0;
        for (i, iv) in ivs.iter().enumerate() {
            total = total + iv.2;
            err += iv.3;
            if iv.3 > ivs[worst].3 {
                worst = i;
            }
        }
        let target = cfg.abs_tol.max(cfg.rel_tol * total.magnitude());
        if err <= target || ivs.len() >= cfg.max_intervals || !err.is_finite() {
            return QuadResult {
                value: total,
                error: err,
                intervals: ivs.len(),
                converged: err <= target,
            };
        }
        let (a, b, _, _) = ivs[worst];
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            // interval cannot be split further
            return QuadResult {
                value: total,
                error: err,
                intervals: ivs.len(),
                converged: false,
            };
        }
        let (v1, e1) = gk21(&mut f, a, m);
        let (v2, e2) = gk21(&mut f, m, b);
        ivs[worst] = (a, m, v1, e1);
        ivs.push((m, b, v2, e2));
    }
}

/// Adaptive integral of `f` over [a, b].
pub fn integrate<T, F>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> QuadResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate_with_breaks(f, &[a, b], cfg)
}

/// Integral over [a, b] with 0 < a < b, computed in u = ln x. Suited to
/// integrands spread over many decades.
pub fn integrate_log<T, F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> QuadResult<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let (la, lb) = (a.ln(), b.ln());
    let n = ((lb - la) / 2.0).ceil().max(1.0) as usize;
    let breaks: Vec<f64> = (0..=n)
        .map(|i| la + (lb - la) * i as f64 / n as f64)
        .collect();
    integrate_with_breaks(
        |u| {
            let x = u.exp();
            f(x) * x
        },
        &breaks,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(
            |x: f64| x.powi(7) - 3.0 * x * x,
            0.0,
            2.0,
            &QuadConfig::default(),
        );
        assert!((r.value - (32.0 - 8.0)).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn endpoint_singularity() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &QuadConfig::default());
        assert!((r.value - 2.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn complex_oscillatory() {
        // int_0^1 e^{i 10 x} dx
        let r = integrate(
            |x: f64| Complex64::new(0.0, 10.0 * x).exp(),
            0.0,
            1.0,
            &QuadConfig::default(),
        );
        let exact = (Complex64::new(0.0, 10.0).exp() - 1.0) / Complex64::new(0.0, 10.0);
        assert!((r.value - exact).norm() < 1e-13);
    }

    #[test]
    fn log_substitution() {
        let r = integrate_log(
            |x: f64| 1.0 / (1.0 + x * x),
            1e-8,
            1e8,
            &QuadConfig::default(),
        );
        let exact = 1e8f64.atan() - 1e-8f64.atan();
        assert!((r.value - exact).abs() < 1e-10);
    }
}
