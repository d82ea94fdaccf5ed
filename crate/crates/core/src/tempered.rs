//! Tempered stable subordinator D(t) with Laplace exponent (s+l)^a - l^a,
//! and its inverse E(t).

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::gamma_ur;

use crate::error::{check, Error, Result};
use crate::quad::{integrate_log, integrate_with_breaks, QuadConfig};
use crate::series::{exp_rel_err, DensityValue, Method, SeriesConfig, SeriesSum};
use crate::specfun::{ln_gamma_sign, reciprocal_gamma, sin_pi};
use crate::stable::{
    check_x_nonneg, check_x_positive, inv_stable_pdf_with, stable_pdf_with, StableParams,
};

const HOPELESS_TERM: f64 = 7.2e10; // e^25

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperedParams {
    pub alpha: f64,
    pub lambda: f64,
    pub t: f64,
}

impl TemperedParams {
    pub fn new(alpha: f64, lambda: f64, t: f64) -> Result<Self> {
        check(alpha > 0.0 && alpha < 1.0, || {
            format!("alpha must lie in (0, 1), got {alpha}")
        })?;
        check(lambda >= 0.0 && lambda.is_finite(), || {
            format!("lambda must be non-negative, got {lambda}")
        })?;
        check(t > 0.0 && t.is_finite(), || {
            format!("t must be positive, got {t}")
        })?;
        Ok(Self { alpha, lambda, t })
    }

    pub fn stable(&self) -> StableParams {
        StableParams {
            alpha: self.alpha,
            t: self.t,
        }
    }
}

/// Density of D(t): e^{-l x + l^a t} times the stable density.
pub fn tempered_pdf(p: TemperedParams, x: f64) -> Result<DensityValue> {
    tempered_pdf_with(p, x, &SeriesConfig::default())
}

pub fn tempered_pdf_with(p: TemperedParams, x: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    check_x_positive(x)?;
    let f = stable_pdf_with(p.stable(), x, cfg)?;
    let l = -p.lambda * x + p.lambda.powf(p.alpha) * p.t;
    if f.value == 0.0 {
        return Ok(f);
    }
    Ok(f.scaled(l.exp()))
}

/// E[exp(-s D(t))] = exp(-t((s+l)^a - l^a)).
pub fn tempered_laplace(p: TemperedParams, s: Complex64) -> Complex64 {
    let la = p.lambda.powf(p.alpha);
    (-(p.t) * ((s + p.lambda).powf(p.alpha) - la)).exp()
}

/// Laplace transform in t of h(x, .): (1/u)((u+l)^a - l^a) e^{-x((u+l)^a - l^a)}.
pub fn inv_tempered_laplace_t(p: TemperedParams, x: f64, u: Complex64) -> Complex64 {
    let psi = (u + p.lambda).powf(p.alpha) - p.lambda.powf(p.alpha);
    psi / u * (-x * psi).exp()
}

/// B_k = e^{-lt} sum_m (lt)^m / Gamma(m + 1 - a k), with its absolute error.
fn tempered_row_sum(alpha: f64, lt: f64, k: usize, cfg: &SeriesConfig) -> Result<(f64, f64)> {
    if k == 0 {
        return Ok((1.0, 0.0));
    }
    let llt = lt.ln();
    let shift = alpha * k as f64;
    let mut acc = SeriesSum::new(cfg);
    let mut m = 0usize;
    loop {
        let mf = m as f64;
        let (lg, sg) = ln_gamma_sign(mf + 1.0 - shift);
        let (term, rel) = if sg == 0.0 {
            (0.0, 0.0)
        } else {
            let l = mf * llt - lt - lg;
            (sg * l.exp(), exp_rel_err(l))
        };
        if acc.push(term, rel) {
            return Ok((acc.value(), acc.err_estimate()));
        }
        if acc.exhausted() {
            return Err(acc.non_convergence());
        }
        m += 1;
    }
}

/// Density h(x, t) of the inverse tempered subordinator, x >= 0.
///
/// Row k of the double series is (-x)^k/k! [t^{-a(k+1)} B_{k+1} - l^a t^{-ak} B_k],
/// all multiplied by e^{x l^a}. With lambda = 0 this is the inverse stable density.
pub fn inv_tempered_pdf(p: TemperedParams, x: f64) -> Result<DensityValue> {
    inv_tempered_pdf_with(p, x, &SeriesConfig::default())
}

pub fn inv_tempered_pdf_with(
    p: TemperedParams,
    x: f64,
    cfg: &SeriesConfig,
) -> Result<DensityValue> {
    check_x_nonneg(x)?;
    if p.lambda == 0.0 {
        return inv_stable_pdf_with(p.stable(), x, cfg);
    }
    if x == 0.0 {
        let v = inv_tempered_limit0(p)?;
        return Ok(DensityValue {
            value: v,
            err_estimate: v.abs() * 1e-15,
            terms_used: 1,
            method: Method::Series,
            flagged: false,
        });
    }
    match inv_tempered_series(p, x, cfg) {
        Ok(v) if v.is_accurate(cfg.accuracy_tol) => Ok(v),
        _ => inv_tempered_convolution(p, x, cfg),
    }
}

fn inv_tempered_series(p: TemperedParams, x: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    let a = p.alpha;
    let la = p.lambda.powf(a);
    let lt = p.lambda * p.t;
    let ltt = p.t.ln();
    let mut acc = SeriesSum::new(cfg);
    let (mut b_k, mut e_k) = (1.0, 0.0);
    let mut logx_pow: f64 = 0.0; // ln(x^k / k!)
    let lx = if x > 0.0 { x.ln() } else { f64::NEG_INFINITY };
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let (b_next, e_next) = tempered_row_sum(a, lt, k + 1, cfg)?;
        let c1 = (-a * (kf + 1.0) * ltt).exp();
        let c0 = la * (-a * kf * ltt).exp();
        let row = c1 * b_next - c0 * b_k;
        let row_err = c1 * e_next + c0 * e_k + (c1 * b_next).abs() * f64::EPSILON * 4.0;
        let w = if k == 0 { 1.0 } else { logx_pow.exp() };
        let term = if k.is_multiple_of(2) { w * row } else { -w * row };
        if !term.is_finite() || term.abs() > HOPELESS_TERM {
            return Err(acc.non_convergence());
        }
        let rel = if term == 0.0 {
            0.0
        } else {
            row_err / row.abs() + exp_rel_err(logx_pow)
        };
        if acc.push(term, rel) {
            let v = acc.into_density();
            let pre = x * la;
            return Ok(DensityValue {
                value: v.value * pre.exp(),
                err_estimate: v.err_estimate * pre.exp()
                    + (v.value * pre.exp()).abs() * exp_rel_err(pre),
                ..v
            });
        }
        if acc.exhausted() {
            return Err(acc.non_convergence());
        }
        b_k = b_next;
        e_k = e_next;
        k += 1;
        logx_pow += lx - (k as f64).ln();
    }
}

/// Tail of the Levy measure, nu((s, inf)) = s^{-a} e^{-l s}/Gamma(1-a) - l^a Q(1-a, l s).
pub fn levy_tail(alpha: f64, lambda: f64, s: f64) -> f64 {
    let first = s.powf(-alpha) * (-lambda * s).exp() * reciprocal_gamma(1.0 - alpha);
    if lambda == 0.0 {
        return first;
    }
    let q = if s == 0.0 {
        1.0
    } else {
        gamma_ur(1.0 - alpha, lambda * s)
    };
    first - lambda.powf(alpha) * q
}

/// h(x,t) = int_0^t f(y; time x) nu((t-y, inf)) dy. Near y = 0 the inner
/// density is a spike of width x^{1/a}, so [0, t/2] is integrated in y on
/// log-spaced breaks; the rest uses t - y = w^{1/(1-a)} to absorb the s^{-a}
/// singularity.
fn inv_tempered_convolution(p: TemperedParams, x: f64, cfg: &SeriesConfig) -> Result<DensityValue> {
    let a = p.alpha;
    let r = 1.0 / (1.0 - a);
    let la = p.lambda.powf(a);
    let inner = StableParams { alpha: a, t: x };
    let g2a = reciprocal_gamma(2.0 - a);
    let failure = RefCell::new(None);
    let stable = |y: f64| -> f64 {
        match stable_pdf_with(inner, y, cfg) {
            Ok(v) => v.value * (la * x - p.lambda * y).exp(),
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                0.0
            }
        }
    };
    let quad = QuadConfig::with_tol(1e-300, 1e-12);
    let half = 0.5 * p.t;

    let near = |y: f64| -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let f = stable(y);
        if f == 0.0 {
            0.0
        } else {
            f * levy_tail(a, p.lambda, p.t - y)
        }
    };
    let scale = x.powf(1.0 / a);
    let mut breaks = vec![0.0];
    let mut y = 1e-2 * scale;
    while y < half {
        breaks.push(y);
        y *= 4.0;
    }
    breaks.push(half);
    let q_near = integrate_with_breaks(near, &breaks, &quad);

    let far = |w: f64| -> f64 {
        let s = w.powf(r);
        let y = p.t - s;
        if y <= 0.0 {
            return 0.0;
        }
        let f = stable(y);
        if f == 0.0 {
            return 0.0;
        }
        let q = if s == 0.0 {
            1.0
        } else {
            gamma_ur(1.0 - a, p.lambda * s)
        };
        let kernel = (-p.lambda * s).exp() * g2a - la * q * s.powf(a) * r;
        f * kernel
    };
    let wmax = half.powf(1.0 - a);
    let breaks: Vec<f64> = (0..=8).map(|i| wmax * i as f64 / 8.0).collect();
    let q_far = integrate_with_breaks(far, &breaks, &quad);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(DensityValue {
        value: q_near.value + q_far.value,
        err_estimate: q_near.error + q_far.error,
        terms_used: q_near.intervals + q_far.intervals,
        method: Method::Convolution,
        flagged: true,
    })
}

/// lim_{x->0+} h(x, t): the k = 0 row, t^{-a} B_1 - l^a.
pub fn inv_tempered_limit0(p: TemperedParams) -> Result<f64> {
    if p.lambda == 0.0 {
        return Ok(p.t.powf(-p.alpha) * reciprocal_gamma(1.0 - p.alpha));
    }
    let (b1, _) = tempered_row_sum(p.alpha, p.lambda * p.t, 1, &SeriesConfig::default())?;
    Ok(p.t.powf(-p.alpha) * b1 - p.lambda.powf(p.alpha))
}

/// Tail approximant c e^{-l x} x^{-a} with c = Gamma(1+a) sin(pi a) e^{l^a} / (a pi),
/// at unit time.
pub fn tempered_tail(p: TemperedParams, x: f64) -> f64 {
    let a = p.alpha;
    let c = ln_gamma_sign(1.0 + a).0.exp() * sin_pi(a) * p.lambda.powf(a).exp() / (a * PI);
    c * (-p.lambda * x).exp() * x.powf(-a)
}

/// Leading large-x term of P(D(1) > x) obtained by integrating the leading
/// term of the density: for l > 0 it is e^{l^a} a/(l Gamma(1-a)) x^{-1-a} e^{-l x}.
/// For l = 0 it coincides with [`tempered_tail`].
pub fn tempered_tail_leading(p: TemperedParams, x: f64) -> f64 {
    if p.lambda == 0.0 {
        return tempered_tail(p, x);
    }
    let a = p.alpha;
    p.lambda.powf(a).exp() * a / p.lambda
        * reciprocal_gamma(1.0 - a)
        * x.powf(-1.0 - a)
        * (-p.lambda * x).exp()
}

/// P(D(t) > x) by quadrature of the density in v, with y = x v^{-1/a}; the
/// substitution flattens the power-law tail.
pub fn tempered_survival(p: TemperedParams, x: f64) -> Result<f64> {
    check_x_positive(x)?;
    let a = p.alpha;
    let mut failure = None;
    let q = integrate_log(
        |v: f64| -> f64 {
            let y = x * v.powf(-1.0 / a);
            match tempered_pdf(p, y) {
                Ok(d) => d.value * x / a * v.powf(-1.0 / a - 1.0),
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        1e-12,
        1.0,
        &QuadConfig::with_tol(1e-300, 1e-10),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    q.checked()
}

/// Mean and second moment of D(t).
pub fn tempered_moments(p: TemperedParams) -> Result<(f64, f64)> {
    if p.lambda <= 0.0 {
        return Err(Error::Domain(
            "moments of the untempered subordinator are infinite".into(),
        ));
    }
    let a = p.alpha;
    let mean1 = a * p.lambda.powf(a - 1.0);
    let var1 = a * (1.0 - a) * p.lambda.powf(a - 2.0);
    let mean = mean1 * p.t;
    Ok((mean, var1 * p.t + mean * mean))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable::{inv_stable_pdf, stable_pdf};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn untempered_is_stable() {
        let p = TemperedParams::new(0.6, 0.0, 1.3).unwrap();
        for &x in &[0.2, 1.0, 5.0] {
            assert_eq!(
                tempered_pdf(p, x).unwrap(),
                stable_pdf(p.stable(), x).unwrap()
            );
        }
    }

    #[test]
    fn levy_half_value() {
        let p = TemperedParams::new(0.5, 1.0, 1.0).unwrap();
        let v = tempered_pdf(p, 1.0).unwrap().value;
        assert!(rel(v, 0.219_695_644_733_861_2) < 1e-13);
    }

    #[test]
    fn moments() {
        let p = TemperedParams::new(0.5, 1.0, 1.0).unwrap();
        assert_eq!(tempered_moments(p).unwrap(), (0.5, 0.5));
        let p = TemperedParams::new(0.5, 4.0, 1.0).unwrap();
        assert!((tempered_moments(p).unwrap().0 - 0.25).abs() < 1e-15);
        assert!(tempered_moments(TemperedParams::new(0.5, 0.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn limit_is_levy_tail() {
        for &(a, l, t) in &[(0.5, 1.0, 1.0), (0.3, 2.0, 0.5), (0.8, 0.7, 3.0)] {
            let p = TemperedParams::new(a, l, t).unwrap();
            let lim = inv_tempered_limit0(p).unwrap();
            assert!(rel(lim, levy_tail(a, l, t)) < 1e-12, "{a} {l} {t}");
            assert!(rel(inv_tempered_pdf(p, 0.0).unwrap().value, lim) < 1e-12);
        }
    }

    #[test]
    fn small_lambda_continuity() {
        let p = TemperedParams::new(0.5, 1e-12, 1.0).unwrap();
        let a = inv_tempered_pdf(p, 1.0).unwrap().value;
        let b = inv_stable_pdf(p.stable(), 1.0).unwrap().value;
        assert!(rel(a, b) < 1e-6);
    }

    #[test]
    fn convolution_agrees_with_series() {
        let p = TemperedParams::new(0.6, 1.0, 1.0).unwrap();
        let cfg = SeriesConfig::default();
        for &x in &[0.3, 0.8, 1.5] {
            let s = inv_tempered_series(p, x, &cfg).unwrap();
            let c = inv_tempered_convolution(p, x, &cfg).unwrap();
            assert!(
                rel(s.value, c.value) < 1e-9,
                "x={x} {} {}",
                s.value,
                c.value
            );
        }
    }

    #[test]
    fn survival_at_half_is_erfc() {
        let p = TemperedParams::new(0.5, 0.0, 1.0).unwrap();
        let s = tempered_survival(p, 100.0).unwrap();
        // P(D > x) = erf(1 / (2 sqrt x)) for the Levy law
        let exact = statrs::function::erf::erf(1.0 / 20.0);
        assert!(rel(s, exact) < 1e-8, "{s} {exact}");
    }
}
