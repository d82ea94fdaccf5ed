//! Series bookkeeping shared by every density: termination rule, compensated
//! accumulation, and the value record handed back to callers.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Name of the environment variable that overrides the default term cap.
pub const TERM_CAP_ENV: &str = "SUBORD_TERM_CAP";

const DEFAULT_TERM_CAP: usize = 10_000;

fn env_term_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(TERM_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_TERM_CAP)
    })
}

/// Tolerances for series summation.
///
/// A series stops once two consecutive terms, taken after the terms have
/// started to shrink, are each below `max(rel_tol * |partial sum|, abs_tol)`.
/// A result whose estimated error exceeds `accuracy_tol * |value|` is treated
/// as lost to cancellation and the density falls back to its alternate route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub term_cap: usize,
    pub accuracy_tol: f64,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-14,
            abs_tol: 1e-300,
            term_cap: env_term_cap(),
            accuracy_tol: 1e-11,
        }
    }
}

/// How a density value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// The residue series.
    Series,
    /// An exact elementary expression.
    ClosedForm,
    /// A positive-integrand integral representation.
    Integral,
    /// Multiplicative convolution of the factor densities.
    Convolution,
}

/// A density evaluation together with its error bookkeeping.
///
/// `flagged` is set whenever the residue series could not deliver the value to
/// the configured accuracy and an alternate route was used instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityValue {
    pub value: f64,
    pub err_estimate: f64,
    pub terms_used: usize,
    pub method: Method,
    pub flagged: bool,
}

impl DensityValue {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            err_estimate: value.abs() * f64::EPSILON * 4.0,
            terms_used: 0,
            method: Method::ClosedForm,
            flagged: false,
        }
    }

    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.abs(),
            ..self
        }
    }

    pub(crate) fn with_fallback(self, method: Method) -> Self {
        Self {
            method,
            flagged: true,
            ..self
        }
    }

    /// Whether the estimated error is within `tol` relative to the value.
    pub fn is_accurate(&self, tol: f64) -> bool {
        self.value.is_finite() && self.err_estimate <= tol * self.value.abs()
    }
}

/// Compensated (Neumaier) accumulator with the termination rule and a running
/// rounding-error estimate.
#[derive(Debug, Clone)]
pub(crate) struct SeriesSum {
    sum: f64,
    comp: f64,
    rounding: f64,
    last_nonzero: f64,
    last_term: f64,
    small_run: u8,
    terms: usize,
    rel_tol: f64,
    abs_tol: f64,
    cap: usize,
}

impl SeriesSum {
    pub fn new(cfg: &SeriesConfig) -> Self {
        Self {
            sum: 0.0,
            comp: 0.0,
            rounding: 0.0,
            last_nonzero: f64::INFINITY,
            last_term: 0.0,
            small_run: 0,
            terms: 0,
            rel_tol: cfg.rel_tol,
            abs_tol: cfg.abs_tol,
            cap: cfg.term_cap,
        }
    }

    /// Adds a term whose own relative evaluation error is about `term_rel_err`.
    /// Returns `true` once the series has converged.
    pub fn push(&mut self, term: f64, term_rel_err: f64) -> bool {
        self.terms += 1;
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
        let mag = term.abs();
        self.rounding += mag * (term_rel_err + f64::EPSILON);
        self.last_term = mag;

        // leading zero terms (underflow, pole factors) say nothing about convergence
        let shrinking = if mag == 0.0 {
            self.last_nonzero.is_finite()
        } else {
            mag <= self.last_nonzero
        };
        if mag != 0.0 {
            self.last_nonzero = mag;
        }
        let small = mag <= (self.rel_tol * self.value().abs()).max(self.abs_tol);
        if small && shrinking {
            self.small_run += 1;
        } else {
            self.small_run = 0;
        }
        self.small_run >= 2
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn exhausted(&self) -> bool {
        self.terms >= self.cap
    }

    pub fn err_estimate(&self) -> f64 {
        self.last_term + self.rounding + self.comp.abs() * f64::EPSILON
    }

    pub fn non_convergence(&self) -> Error {
        Error::NonConvergence {
            terms: self.terms,
            last_term: self.last_term,
        }
    }

    pub fn into_density(self) -> DensityValue {
        DensityValue {
            value: self.value(),
            err_estimate: self.err_estimate(),
            terms_used: self.terms,
            method: Method::Series,
            flagged: false,
        }
    }
}

/// Runs `term(k)` for k = 0, 1, ... through a [`SeriesSum`] until convergence.
/// `term` returns `(value, relative evaluation error)`.
pub(crate) fn sum_series<F>(cfg: &SeriesConfig, mut term: F) -> Result<DensityValue>
where
    F: FnMut(usize) -> (f64, f64),
{
    let mut acc = SeriesSum::new(cfg);
    let mut k = 0usize;
    loop {
        let (t, e) = term(k);
        if !t.is_finite() {
            return Err(Error::Overflow(k as f64));
        }
        if acc.push(t, e) {
            return Ok(acc.into_density());
        }
        if acc.exhausted() {
            return Err(acc.non_convergence());
        }
        k += 1;
    }
}

/// Complex counterpart used for transform series.
pub(crate) fn sum_complex_series<F>(cfg: &SeriesConfig, mut term: F) -> Result<(Complex64, usize)>
where
    F: FnMut(usize) -> Complex64,
{
    let mut re = SeriesSum::new(cfg);
    let mut im = SeriesSum::new(cfg);
    let mut small_run = 0u8;
    let mut last = f64::INFINITY;
    for k in 0..cfg.term_cap {
        let t = term(k);
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::Overflow(k as f64));
        }
        re.push(t.re, 0.0);
        im.push(t.im, 0.0);
        let mag = t.norm();
        let total = Complex64::new(re.value(), im.value()).norm();
        let shrinking = if mag == 0.0 {
            last.is_finite()
        } else {
            mag <= last
        };
        if mag != 0.0 {
            last = mag;
        }
        if shrinking && mag <= (cfg.rel_tol * total).max(cfg.abs_tol) {
            small_run += 1;
            if small_run >= 2 {
                return Ok((Complex64::new(re.value(), im.value()), k + 1));
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        terms: cfg.term_cap,
        last_term: last,
    })
}

/// Relative error of `exp(l)` when `l` carries absolute rounding of a few ulps.
#[inline]
pub(crate) fn exp_rel_err(l: f64) -> f64 {
    (l.abs() + 8.0) * f64::EPSILON
}
