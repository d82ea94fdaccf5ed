//! Numerical inverse Laplace transform on a fixed Talbot contour.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check, Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct TalbotConfig {
    pub start_nodes: usize,
    pub step: usize,
    /// Roundoff grows like e^{0.4 M}, so the node count is capped.
    pub max_nodes: usize,
    pub tol: f64,
}

impl Default for TalbotConfig {
    fn default() -> Self {
        Self {
            start_nodes: 16,
            step: 8,
            max_nodes: 48,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceEstimate {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
}

fn talbot<F>(transform: &F, t: f64, m: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mf = m as f64;
    let d0 = 2.0 * mf / 5.0;
    let mut sum = 0.5 * d0.exp() * transform(Complex64::new(d0 / t, 0.0))?.re;
    for k in 1..m {
        let th = k as f64 * PI / mf;
        let cot = th.cos() / th.sin();
        let r = 2.0 * k as f64 * PI / 5.0;
        let delta = Complex64::new(r * cot, r);
        let gamma = Complex64::new(1.0, th * (1.0 + cot * cot) - cot) * delta.exp();
        sum += (gamma * transform(delta / t)?).re;
    }
    Ok(sum * 2.0 / (5.0 * t))
}

/// Inverts F at t > 0, comparing successive node counts until two agree.
pub fn laplace_invert<F>(transform: &F, t: f64) -> Result<LaplaceEstimate>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    laplace_invert_with(transform, t, &TalbotConfig::default())
}

pub fn laplace_invert_with<F>(transform: &F, t: f64, cfg: &TalbotConfig) -> Result<LaplaceEstimate>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    check(t > 0.0, || "inversion point must be positive".into())?;
    let mut m = cfg.start_nodes;
    let mut prev = talbot(transform, t, m)?;
    let mut best = (f64::INFINITY, prev, m);
    while m + cfg.step <= cfg.max_nodes {
        m += cfg.step;
        let v = talbot(transform, t, m)?;
        let err = (v - prev).abs();
        if err < best.0 {
            best = (err, v, m);
        }
        if err <= cfg.tol * v.abs().max(1e-300) {
            return Ok(LaplaceEstimate {
                value: v,
                error: err,
                nodes: m,
            });
        }
        prev = v;
    }
    Err(Error::Quadrature {
        value: best.1,
        error: best.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_pair() {
        let v = laplace_invert(&|s: Complex64| Ok(1.0 / (s + 1.0)), 1.0).unwrap();
        assert!((v.value - (-1f64).exp()).abs() < 1e-10);
    }

    #[test]
    fn levy_density() {
        let v = laplace_invert(&|s: Complex64| Ok((-s.sqrt()).exp()), 1.0).unwrap();
        let want = (-0.25f64).exp() / (2.0 * PI.sqrt());
        assert!((v.value - want).abs() < 1e-8 * want, "{}", v.value);
    }

    #[test]
    fn brownian_first_passage() {
        // e^{-sqrt(2s)} at x = 1: hitting time of level 1
        let v = laplace_invert(&|s: Complex64| Ok((-(2.0 * s).sqrt()).exp()), 1.0).unwrap();
        let want = (-0.5f64).exp() / (2.0 * PI).sqrt();
        assert!((v.value - want).abs() < 1e-8 * want);
    }
}
