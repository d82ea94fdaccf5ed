//! Products and quotients of independent (inverse) stable subordinators
//! run to the same time t.
//!
//! Both product densities depend on (x, t) only through z = x t^{-k} with
//! k = a1 + a2 (inverse) or 1/a1 + 1/a2 (stable). The series are evaluated
//! with the indices sorted, so swapping a1 and a2 is bit-for-bit neutral.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check, Error, Result};
use crate::quad::{integrate_with_breaks, QuadConfig};
use crate::series::{exp_rel_err, DensityValue, Method, SeriesConfig, SeriesSum};
use crate::specfun::{digamma, ln_gamma_sign, reciprocal_gamma, sin_pi};
use crate::stable::{
    check_x_positive, inv_stable_mellin, inv_stable_pdf_with, stable_mellin, stable_pdf_with,
    StableParams,
};

const HOPELESS_LOG_TERM: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairParams {
    pub alpha1: f64,
    pub alpha2: f64,
    pub t: f64,
}

impl PairParams {
    pub fn new(alpha1: f64, alpha2: f64, t: f64) -> Result<Self> {
        for a in [alpha1, alpha2] {
            check(a > 0.0 && a < 1.0, || {
                format!("alpha must lie in (0, 1), got {a}")
            })?;
        }
        check(t > 0.0 && t.is_finite(), || {
            format!("t must be positive, got {t}")
        })?;
        Ok(Self { alpha1, alpha2, t })
    }

    fn sorted(&self) -> (f64, f64) {
        if self.alpha1 <= self.alpha2 {
            (self.alpha1, self.alpha2)
        } else {
            (self.alpha2, self.alpha1)
        }
    }

    fn first(&self) -> StableParams {
        StableParams {
            alpha: self.alpha1,
            t: self.t,
        }
    }

    fn second(&self) -> StableParams {
        StableParams {
            alpha: self.alpha2,
            t: self.t,
        }
    }
}

/// Small-x structure `log2 * ln(x)^2 + log1 * ln(x) + constant + o(1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLimit {
    pub log2: f64,
    pub log1: f64,
    pub constant: f64,
}

impl LogLimit {
    pub fn eval(&self, x: f64) -> f64 {
        let l = x.ln();
        (self.log2 * l + self.log1) * l + self.constant
    }
}

// Lower cut below which a stable density at unit time is under ~e^{-700}.
fn stable_negligible_below(alpha: f64) -> f64 {
    let c = (1.0 - alpha) * alpha.powf(alpha / (1.0 - alpha));
    (c / 700.0).powf((1.0 - alpha) / alpha)
}

// Upper cut beyond which an inverse stable density at unit time is under ~e^{-700}.
fn inv_stable_negligible_above(alpha: f64) -> f64 {
    let c = (1.0 - alpha) * alpha.powf(alpha / (1.0 - alpha));
    (700.0 / c).powf(1.0 - alpha)
}

/// int g(u) du over [lo, hi] with a fixed split into `n` panels.
fn log_convolution<F: FnMut(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    n: usize,
) -> (f64, f64, usize, bool) {
    if hi <= lo {
        return (0.0, 0.0, 0, true);
    }
    let breaks: Vec<f64> = (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect();
    let q = integrate_with_breaks(f, &breaks, &QuadConfig::with_tol(1e-300, 1e-11));
    (q.value, q.error, q.intervals, q.converged)
}

fn convolution_value(
    value: f64,
    error: f64,
    intervals: usize,
    failure: Option<Error>,
) -> Result<DensityValue> {
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(DensityValue {
        value,
        err_estimate: error,
        terms_used: intervals,
        method: Method::Convolution,
        flagged: true,
    })
}

// ---------------------------------------------------------------------------
// product of inverse stables

/// Density of E_{a1}(t) E_{a2}(t).
pub fn product_inv_pdf(p: PairParams, x: f64) -> Result<DensityValue> {
    product_inv_pdf_with(p, x, &SeriesConfig::default())
}

pub fn product_inv_pdf_with(p: PairParams, x: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    check_x_positive(x)?;
    let (a1, a2) = p.sorted();
    let kappa = a1 + a2;
    let scale = p.t.powf(-kappa);
    let z = x * scale;
    match product_inv_series(a1, a2, z, cfg) {
        Ok(v) if v.is_accurate(cfg.accuracy_tol) => Ok(v.scaled(scale)),
        _ => product_inv_convolution(a1, a2, z, cfg).map(|v| v.scaled(scale)),
    }
}

/// Residue series at t = 1; row k comes from the double pole at s = -k.
fn product_inv_series(a1: f64, a2: f64, z: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    let lz = z.ln();
    let mut acc = SeriesSum::new(cfg);
    let mut k = 0usize;
    loop {
        let j = (k + 1) as f64;
        let (g1, sg1) = ln_gamma_sign(j * a1);
        let (g2, sg2) = ln_gamma_sign(j * a2);
        let l = g1 + g2 - 2.0 * ln_gamma_sign(j).0 + (k as f64) * lz;
        if l > HOPELESS_LOG_TERM {
            return Err(acc.non_convergence());
        }
        let s1 = sin_pi(j * a1);
        let s2 = sin_pi(j * a2);
        let bracket = 2.0 * digamma(j)? - a1 * digamma(j * a1)? - a2 * digamma(j * a2)? - lz;
        let trig = (a1 + a2) * sin_pi(j * (a1 + a2)) - (a1 - a2) * sin_pi(j * (a1 - a2));
        let inner = s1 * s2 * bracket / (PI * PI) - trig / (2.0 * PI);
        let term = sg1 * sg2 * l.exp() * inner;
        let mag = (s1 * s2 * bracket).abs() / (PI * PI) + trig.abs() / (2.0 * PI);
        let rel = if term == 0.0 {
            0.0
        } else {
            exp_rel_err(l)
                + mag * 8.0 * f64::EPSILON * (1.0 + lz.abs()) / inner.abs().max(f64::MIN_POSITIVE)
        };
        if acc.push(term, rel.min(1.0)) {
            return Ok(acc.into_density());
        }
        if acc.exhausted() {
            return Err(acc.non_convergence());
        }
        k += 1;
    }
}

/// h(z) = int h1(z e^{-u}) h2(e^u) du at t = 1.
fn product_inv_convolution(a1: f64, a2: f64, z: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    let unit1 = StableParams { alpha: a1, t: 1.0 };
    let unit2 = StableParams { alpha: a2, t: 1.0 };
    let y1 = inv_stable_negligible_above(a1);
    let y2 = inv_stable_negligible_above(a2);
    let lo = (z / y1).ln();
    let hi = y2.ln();
    let mut failure = None;
    let (v, e, n, _) = log_convolution(
        |u| {
            let y = u.exp();
            let r = inv_stable_pdf_with(unit1, z / y, cfg).and_then(|h1| {
                if h1.value == 0.0 {
                    return Ok(0.0);
                }
                inv_stable_pdf_with(unit2, y, cfg).map(|h2| h1.value * h2.value)
            });
            r.unwrap_or_else(|err| {
                failure = Some(err);
                0.0
            })
        },
        lo,
        hi,
        16,
    );
    convolution_value(v, e, n, failure)
}

/// Small-x structure of the product-of-inverses density: no ln^2 term, the
/// ln x coefficient -t^{-k}/(Gamma(1-a1)Gamma(1-a2)) and the constant from
/// the k = 0 row.
pub fn product_inv_limit0(p: PairParams) -> Result<LogLimit> {
    let (a1, a2) = p.sorted();
    let kappa = a1 + a2;
    let tk = p.t.powf(-kappa);
    let r = reciprocal_gamma(1.0 - a1) * reciprocal_gamma(1.0 - a2);
    let bracket = 2.0 * digamma(1.0)? - a1 * digamma(a1)? - a2 * digamma(a2)? + kappa * p.t.ln();
    let g = (ln_gamma_sign(a1).0 + ln_gamma_sign(a2).0).exp();
    let trig = kappa * sin_pi(kappa) - (a1 - a2) * sin_pi(a1 - a2);
    Ok(LogLimit {
        log2: 0.0,
        log1: -tk * r,
        constant: tk * (r * bracket - g * trig / (2.0 * PI)),
    })
}

pub fn product_inv_mellin(p: PairParams, s: Complex64) -> Result<Complex64> {
    Ok(inv_stable_mellin(p.first(), s)? * inv_stable_mellin(p.second(), s)?)
}

// ---------------------------------------------------------------------------
// product of stables

/// Density of D_{a1}(t) D_{a2}(t).
pub fn product_stable_pdf(p: PairParams, x: f64) -> Result<DensityValue> {
    product_stable_pdf_with(p, x, &SeriesConfig::default())
}

pub fn product_stable_pdf_with(p: PairParams, x: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    check_x_positive(x)?;
    let (a1, a2) = p.sorted();
    let kappa = 1.0 / a1 + 1.0 / a2;
    let scale = p.t.powf(-kappa);
    let z = x * scale;
    match product_stable_series(a1, a2, z, cfg) {
        Ok(v) if v.is_accurate(cfg.accuracy_tol) => Ok(v.scaled(scale)),
        _ => product_stable_convolution(a1, a2, z, cfg).map(|v| v.scaled(scale)),
    }
}

/// Right-pole residue series at t = 1. Poles of Gamma(1-(s-1)/a_i) sit at
/// s = 1 + a_i m; where the two families coincide the pole is double.
fn product_stable_series(a1: f64, a2: f64, z: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    let lz = z.ln();
    let mut acc = SeriesSum::new(cfg);
    let (mut m1, mut m2) = (1usize, 1usize);
    loop {
        let b1 = a1 * m1 as f64;
        let b2 = a2 * m2 as f64;
        let (term, rel) = if (b1 - b2).abs() <= 1e-12 * b1.max(b2) {
            let t = double_pole(a1, a2, m1, m2, b1, lz)?;
            m1 += 1;
            m2 += 1;
            t
        } else if b1 < b2 {
            let t = simple_pole(a1, a2, m1, lz);
            m1 += 1;
            t
        } else {
            let t = simple_pole(a2, a1, m2, lz);
            m2 += 1;
            t
        };
        if term.abs() > HOPELESS_LOG_TERM.exp() || !term.is_finite() {
            return Err(acc.non_convergence());
        }
        if acc.push(term, rel) {
            return Ok(acc.into_density());
        }
        if acc.exhausted() {
            return Err(acc.non_convergence());
        }
    }
}

// a_i (-1)^{m-1}/(m-1)! z^{-1-a_i m} Gamma(1 - a_i m/a_j) / Gamma(1 - a_i m)^2
fn simple_pole(ai: f64, aj: f64, m: usize, lz: f64) -> (f64, f64) {
    let mf = m as f64;
    let beta = ai * mf;
    let (lr, sr) = ln_gamma_sign(1.0 - beta);
    if sr == 0.0 {
        return (0.0, 0.0);
    }
    let (lg, sg) = ln_gamma_sign(1.0 - beta / aj);
    let l = ai.ln() - ln_gamma_sign(mf).0 - (1.0 + beta) * lz + lg - 2.0 * lr;
    let sign = if m % 2 == 1 { sg } else { -sg };
    (sign * l.exp(), exp_rel_err(l))
}

// -C z^{-1-b} r^2 [-ln z + 2 psi(1-b) - psi(m1)/a1 - psi(m2)/a2], r = 1/Gamma(1-b),
// C = a1 a2 (-1)^{m1+m2}/((m1-1)!(m2-1)!)
fn double_pole(a1: f64, a2: f64, m1: usize, m2: usize, beta: f64, lz: f64) -> Result<(f64, f64)> {
    let (lr, sr) = ln_gamma_sign(1.0 - beta);
    if sr == 0.0 {
        return Ok((0.0, 0.0));
    }
    let l = a1.ln() + a2.ln()
        - ln_gamma_sign(m1 as f64).0
        - ln_gamma_sign(m2 as f64).0
        - (1.0 + beta) * lz
        - 2.0 * lr;
    let bracket =
        -lz + 2.0 * digamma(1.0 - beta)? - digamma(m1 as f64)? / a1 - digamma(m2 as f64)? / a2;
    let sign = if (m1 + m2).is_multiple_of(2) { -1.0 } else { 1.0 };
    Ok((sign * l.exp() * bracket, exp_rel_err(l) + 1e-15))
}

/// f(z) = int f1(z e^{-u}) f2(e^u) du at t = 1.
fn product_stable_convolution(
    a1: f64,
    a2: f64,
    z: f64,
    cfg: &SeriesConfig,
) -> Result<DensityValue> {
    let unit1 = StableParams { alpha: a1, t: 1.0 };
    let unit2 = StableParams { alpha: a2, t: 1.0 };
    let lo = stable_negligible_below(a2).ln();
    let hi = (z / stable_negligible_below(a1)).ln();
    // the power-law tails make the integrand decay slowly in u at the top end;
    // cap where f2(e^u) ~ e^{-(1+a2)u} is far below the bulk
    let hi = hi.min(lo.max(0.0) + 60.0 / a2);
    let mut failure = None;
    let (v, e, n, _) = log_convolution(
        |u| {
            let y = u.exp();
            let r = stable_pdf_with(unit1, z / y, cfg).and_then(|f1| {
                if f1.value == 0.0 {
                    return Ok(0.0);
                }
                stable_pdf_with(unit2, y, cfg).map(|f2| f1.value * f2.value)
            });
            r.unwrap_or_else(|err| {
                failure = Some(err);
                0.0
            })
        },
        lo,
        hi,
        24,
    );
    convolution_value(v, e, n, failure)
}

/// The product-of-stables density vanishes faster than any power of x as
/// x -> 0+, so every coefficient is zero.
pub fn product_stable_limit0(_p: PairParams) -> LogLimit {
    LogLimit {
        log2: 0.0,
        log1: 0.0,
        constant: 0.0,
    }
}

pub fn product_stable_mellin(p: PairParams, s: Complex64) -> Result<Complex64> {
    Ok(stable_mellin(p.first(), s)? * stable_mellin(p.second(), s)?)
}

// ---------------------------------------------------------------------------
// quotient of inverse stables

/// Density of E_{a1}(t) / E_{a2}(t).
///
/// The series in x is entire for a1 < a2, has radius 1 for a1 = a2 and is
/// only asymptotic for a1 > a2; outside its domain the reflection
/// q_{a1,a2}(x) = x^{-2} q_{a2,a1}(1/x) or the convolution integral is used.
pub fn quotient_inv_pdf(p: PairParams, x: f64) -> Result<DensityValue> {
    quotient_inv_pdf_with(p, x, &SeriesConfig::default())
}

pub fn quotient_inv_pdf_with(p: PairParams, x: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    check_x_positive(x)?;
    let (a1, a2) = (p.alpha1, p.alpha2);
    let ratio = p.t.powf(a2 - a1);
    let direct = a1 < a2 || (a1 == a2 && x < 1.0);
    let reflected = a1 > a2 || (a1 == a2 && x > 1.0);
    let attempt = if direct {
        quotient_series(a1, a2, x, ratio, cfg)
    } else if reflected {
        quotient_series(a2, a1, 1.0 / x, 1.0 / ratio, cfg).map(|v| v.scaled(1.0 / (x * x)))
    } else {
        Err(Error::Domain("quotient series diverges at x = 1".into()))
    };
    match attempt {
        Ok(v) if v.is_accurate(cfg.accuracy_tol) => Ok(v),
        _ => quotient_convolution(p, x, cfg),
    }
}

/// sum_{k>=1} k (-x)^{k-1} c^k / (Gamma(1 - k b1) Gamma(1 + k b2)), c = t^{b2-b1}.
fn quotient_series(b1: f64, b2: f64, x: f64, c: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    let lx = x.ln();
    let lc = c.ln();
    let mut acc = SeriesSum::new(cfg);
    let mut k = 1usize;
    loop {
        let kf = k as f64;
        let (l1, s1) = ln_gamma_sign(1.0 - kf * b1);
        let (term, rel) = if s1 == 0.0 {
            (0.0, 0.0)
        } else {
            let l = kf.ln() + (kf - 1.0) * lx + kf * lc - l1 - ln_gamma_sign(1.0 + kf * b2).0;
            if l > HOPELESS_LOG_TERM {
                return Err(acc.non_convergence());
            }
            let sign = if k % 2 == 1 { s1 } else { -s1 };
            (sign * l.exp(), exp_rel_err(l))
        };
        if acc.push(term, rel) {
            return Ok(acc.into_density());
        }
        if acc.exhausted() {
            return Err(acc.non_convergence());
        }
        k += 1;
    }
}

/// q(x) = int y h1(x y) h2(y) dy, integrated in u = ln y.
fn quotient_convolution(p: PairParams, x: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    let y1 = inv_stable_negligible_above(p.alpha1) * p.t.powf(p.alpha1);
    let y2 = inv_stable_negligible_above(p.alpha2) * p.t.powf(p.alpha2);
    let hi = y2.min(y1 / x).ln();
    // h2 is bounded at 0 and the weight y^2 kills the lower end
    let lo = hi - 80.0;
    let mut failure = None;
    let (v, e, n, _) = log_convolution(
        |u| {
            let y = u.exp();
            let r = inv_stable_pdf_with(p.first(), x * y, cfg).and_then(|h1| {
                inv_stable_pdf_with(p.second(), y, cfg).map(|h2| y * y * h1.value * h2.value)
            });
            r.unwrap_or_else(|err| {
                failure = Some(err);
                0.0
            })
        },
        lo,
        hi,
        40,
    );
    convolution_value(v, e, n, failure)
}

/// lim_{x->0+} q(x) = t^{a2-a1} / (Gamma(1-a1) Gamma(1+a2)).
pub fn quotient_limit0(p: PairParams) -> f64 {
    p.t.powf(p.alpha2 - p.alpha1)
        * reciprocal_gamma(1.0 - p.alpha1)
        * reciprocal_gamma(1.0 + p.alpha2)
}

pub fn quotient_inv_mellin(p: PairParams, s: Complex64) -> Result<Complex64> {
    Ok(inv_stable_mellin(p.first(), s)? * inv_stable_mellin(p.second(), 2.0 - s)?)
}
