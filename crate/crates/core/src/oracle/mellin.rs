//! Numerical Mellin transforms and their inversion along a vertical line.

use num_complex::Complex64;

use crate::composite::LogLimit;
use crate::error::{check, Error, Result};
use crate::quad::{gk21, integrate_log, QuadConfig};

/// A value with an error estimate and the number of integrand evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinEstimate<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

/// Behaviour of a density near zero or infinity, used to add the mass cut
/// off by finite integration limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Asymptote {
    /// f(x) ~ coefficient * x^exponent
    Power { coefficient: f64, exponent: f64 },
    /// f(x) ~ log2 ln^2 x + log1 ln x + constant (near zero only)
    Log(LogLimit),
}

/// Integration range for [`mellin_numeric`].
#[derive(Debug, Clone, Copy)]
pub struct MellinCuts {
    pub lo: f64,
    pub hi: f64,
    pub head: Option<Asymptote>,
    pub tail: Option<Asymptote>,
    pub quad: QuadConfig,
}

impl MellinCuts {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            head: None,
            tail: None,
            quad: QuadConfig::with_tol(1e-300, 1e-11),
        }
    }

    pub fn head(mut self, a: Asymptote) -> Self {
        self.head = Some(a);
        self
    }

    pub fn tail(mut self, a: Asymptote) -> Self {
        self.tail = Some(a);
        self
    }
}

// int_0^a x^{s-1} f(x) dx for the asymptotic form of f
fn head_integral(a: f64, s: Complex64, h: &Asymptote) -> Complex64 {
    match *h {
        Asymptote::Power {
            coefficient,
            exponent,
        } => {
            let e = s + exponent;
            coefficient * (e * a.ln()).exp() / e
        }
        Asymptote::Log(l) => {
            let la = a.ln();
            let a_s = (s * la).exp();
            let i0 = a_s / s;
            let i1 = a_s * (la / s - 1.0 / (s * s));
            let i2 = a_s * (la * la / s - 2.0 * la / (s * s) + 2.0 / (s * s * s));
            l.log2 * i2 + l.log1 * i1 + l.constant * i0
        }
    }
}

// int_b^inf x^{s-1} c x^{-q} dx
fn tail_integral(b: f64, s: Complex64, t: &Asymptote) -> Result<Complex64> {
    match *t {
        Asymptote::Power {
            coefficient,
            exponent,
        } => {
            let e = s + exponent;
            check(e.re < 0.0, || "tail correction outside its strip".into())?;
            Ok(-coefficient * (e * b.ln()).exp() / e)
        }
        Asymptote::Log(_) => Err(Error::InvalidParams(
            "logarithmic tail correction is not supported".into(),
        )),
    }
}

/// int_0^inf x^{s-1} f(x) dx by adaptive quadrature in ln x over
/// [cuts.lo, cuts.hi], plus the asymptotic head and tail corrections.
pub fn mellin_numeric<F>(f: F, s: Complex64, cuts: &MellinCuts) -> Result<MellinEstimate<Complex64>>
where
    F: Fn(f64) -> Result<f64>,
{
    check(0.0 < cuts.lo && cuts.lo < cuts.hi, || {
        "need 0 < lo < hi".into()
    })?;
    let mut failure = None;
    let mut count = 0;
    let r = integrate_log(
        |x| {
            count += 1;
            match f(x) {
                Ok(v) => xpow(x, s - 1.0) * v,
                Err(e) => {
                    failure.get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        cuts.lo,
        cuts.hi,
        &cuts.quad,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let mut value = r.checked()?;
    if let Some(h) = &cuts.head {
        value += head_integral(cuts.lo, s, h);
    }
    if let Some(t) = &cuts.tail {
        value += tail_integral(cuts.hi, s, t)?;
    }
    Ok(MellinEstimate {
        value,
        error: r.error,
        evaluations: count,
    })
}

// x^s for real x > 0
fn xpow(x: f64, s: Complex64) -> Complex64 {
    (s * x.ln()).exp()
}

/// Vertical line Re s = c truncated to |Im s| <= half_height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub c: f64,
    pub half_height: f64,
    pub node_count: usize,
    pub strip: (f64, f64),
    /// Relative change under node doubling that counts as converged.
    pub tol: f64,
}

impl ContourSpec {
    pub fn new(c: f64, half_height: f64, node_count: usize, strip: (f64, f64)) -> Result<Self> {
        check(strip.0 < c && c < strip.1, || {
            format!("abscissa {c} outside strip ({}, {})", strip.0, strip.1)
        })?;
        check(half_height > 0.0, || "half height must be positive".into())?;
        check(node_count >= 64, || "at least 64 nodes".into())?;
        Ok(Self {
            c,
            half_height,
            node_count,
            strip,
            tol: 1e-12,
        })
    }

    /// Chooses the half height where |F| has fallen below 1e-17 of |F(c)|.
    pub fn auto<F>(transform: &F, c: f64, strip: (f64, f64)) -> Result<Self>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let f0 = transform(Complex64::new(c, 0.0))?.norm();
        let mut tau: f64 = 1.0;
        let mut below = 0;
        while tau < 1e5 {
            let v = transform(Complex64::new(c, tau))
                .map(|z| z.norm())
                .unwrap_or(0.0);
            if v < 1e-17 * f0 {
                below += 1;
                if below == 2 {
                    return Self::new(c, tau, 64, strip);
                }
            } else {
                below = 0;
            }
            tau *= 1.25;
        }
        Err(Error::Quadrature {
            value: f0,
            error: f64::INFINITY,
        })
    }
}

/// Real abscissa minimising |F(c)| x^{-c} inside the strip. Inverting along
/// this line keeps the integrand free of large cancelling oscillations.
pub fn saddle_abscissa<F>(transform: &F, strip: (f64, f64), x: f64) -> f64
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let margin = 0.02;
    let lo = if strip.0.is_finite() {
        strip.0 + margin
    } else {
        strip.1.min(200.0) - 200.0
    };
    let hi = if strip.1.is_finite() {
        strip.1 - margin
    } else {
        strip.0.max(-200.0) + 200.0
    };
    let lx = x.ln();
    let cost = |c: f64| match transform(Complex64::new(c, 0.0)) {
        Ok(v) if v.norm() > 0.0 && v.norm().is_finite() => v.norm().ln() - c * lx,
        _ => f64::INFINITY,
    };
    // coarse scan first: the cost is infinite wherever F overflows
    let steps = 400;
    let dc = (hi - lo) / steps as f64;
    let best = (0..=steps)
        .map(|i| lo + dc * i as f64)
        .map(|c| (c, cost(c)))
        .fold((0.5 * (lo + hi), f64::INFINITY), |b, v| {
            if v.1 < b.1 {
                v
            } else {
                b
            }
        });
    if !best.1.is_finite() {
        return best.0;
    }
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = ((best.0 - dc).max(lo), (best.0 + dc).min(hi));
    let mut c1 = b - g * (b - a);
    let mut c2 = a + g * (b - a);
    let (mut f1, mut f2) = (cost(c1), cost(c2));
    for _ in 0..40 {
        if f1 <= f2 {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - g * (b - a);
            f1 = cost(c1);
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + g * (b - a);
            f2 = cost(c2);
        }
    }
    0.5 * (a + b)
}

const MAX_PANELS: usize = 1 << 14;

/// (1/2 pi) int F(c + i tau) x^{-c - i tau} d tau, using F(conj s) = conj F(s)
/// to integrate over tau >= 0 only. Composite 21-point Kronrod panels are
/// doubled from `node_count / 21` until the value changes by less than
/// `spec.tol` relative.
pub fn mellin_invert<F>(transform: &F, spec: &ContourSpec, x: f64) -> Result<MellinEstimate<f64>>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    check(x > 0.0, || "x must be positive".into())?;
    let lx = x.ln();
    let c = spec.c;
    let failure = std::cell::RefCell::new(None);
    let mut integrand = |tau: f64| {
        let s = Complex64::new(c, tau);
        match transform(s) {
            // combined in logs: F and x^{-s} can overflow and underflow separately
            Ok(v) => (v.ln() - s * lx).exp().re,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let mut panels = (spec.node_count / 21).max(4);
    let mut prev: Option<f64> = None;
    let mut evaluations = 0;
    loop {
        let h = spec.half_height / panels as f64;
        let mut sum = 0.0;
        for i in 0..panels {
            let (v, _) = gk21(&mut integrand, h * i as f64, h * (i + 1) as f64);
            sum += v;
        }
        evaluations += panels * 21;
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        let value = sum / std::f64::consts::PI;
        if let Some(p) = prev {
            let err = (value - p).abs();
            if err <= spec.tol * value.abs() || err < 1e-300 {
                return Ok(MellinEstimate {
                    value,
                    error: err,
                    evaluations,
                });
            }
            if panels >= MAX_PANELS {
                return Err(Error::Quadrature { value, error: err });
            }
        }
        prev = Some(value);
        panels *= 2;
    }
}
