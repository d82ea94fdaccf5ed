//! Seeded samplers for every process with a density in this crate.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, InverseGaussian, StandardNormal};
use serde::Serialize;

use super::empirical::ks_two_sample;
use super::rng::{open01, run_blocks};
use crate::composite::PairParams;
use crate::error::{check, Error, Result};
use crate::invgauss::IGParams;
use crate::specfun::gamma;
use crate::stable::StableParams;
use crate::tempered::TemperedParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessTag {
    Stable,
    Tempered,
    InvStable,
    InvTempered,
    Ig,
    IgFirstExit,
    Product,
    Quotient,
}

/// A process together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Process {
    Stable(StableParams),
    Tempered(TemperedParams),
    InvStable(StableParams),
    InvTempered(TemperedParams),
    Ig(IGParams),
    IgFirstExit(IGParams),
    ProductInv(PairParams),
    ProductStable(PairParams),
    QuotientInv(PairParams),
}

impl Process {
    pub fn tag(&self) -> ProcessTag {
        match self {
            Process::Stable(_) => ProcessTag::Stable,
            Process::Tempered(_) => ProcessTag::Tempered,
            Process::InvStable(_) => ProcessTag::InvStable,
            Process::InvTempered(_) => ProcessTag::InvTempered,
            Process::Ig(_) => ProcessTag::Ig,
            Process::IgFirstExit(_) => ProcessTag::IgFirstExit,
            Process::ProductInv(_) | Process::ProductStable(_) => ProcessTag::Product,
            Process::QuotientInv(_) => ProcessTag::Quotient,
        }
    }
}

/// A reproducible batch of draws.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub values: Vec<f64>,
    pub process: Process,
    pub seed: u64,
    pub n: usize,
    pub workers: usize,
    /// Overall acceptance rate of the tempering rejection step, when one ran.
    pub acceptance_rate: Option<f64>,
    /// Number of grid increments per path for the inverse tempered sampler.
    pub grid_level: Option<u32>,
}

/// One draw of D_a(1) by the Kanter / Chambers-Mallows-Stuck transform.
#[inline]
pub fn stable_unit<R: Rng + ?Sized>(rng: &mut R, alpha: f64) -> f64 {
    let u = PI * open01(rng);
    let w = -open01(rng).ln();
    let a = (alpha * u).sin() / u.sin().powf(1.0 / alpha);
    let b = (((1.0 - alpha) * u).sin() / w).powf((1.0 - alpha) / alpha);
    a * b
}

fn check_n(n: usize) -> Result<()> {
    check(n >= 1, || "sample size must be at least 1".into())
}

fn batch(values: Vec<f64>, process: Process, seed: u64, workers: usize) -> SampleBatch {
    SampleBatch {
        n: values.len(),
        values,
        process,
        seed,
        workers,
        acceptance_rate: None,
        grid_level: None,
    }
}

pub fn sample_stable(p: StableParams, n: usize, seed: u64, workers: usize) -> Result<SampleBatch> {
    check_n(n)?;
    let scale = p.t.powf(1.0 / p.alpha);
    let (v, _) = run_blocks(n, seed, workers, |rng, c| {
        Ok((
            (0..c).map(|_| scale * stable_unit(rng, p.alpha)).collect(),
            0,
        ))
    })?;
    Ok(batch(v, Process::Stable(p), seed, workers))
}

/// Number of time slices that keeps per-slice acceptance e^{-l^a t/m} >= 0.1.
fn tempered_slices(p: &TemperedParams) -> Result<usize> {
    let cost = p.lambda.powf(p.alpha) * p.t;
    let m = (cost / std::f64::consts::LN_10).ceil().max(1.0);
    if m > 1e4 {
        return Err(Error::Efficiency(format!(
            "lambda^alpha t = {cost:.3e} needs {m:.0} slices per draw; reduce t or lambda"
        )));
    }
    Ok(m as usize)
}

/// One draw of the tempered subordinator at time `slice * m` built from `m`
/// independent slices. Returns (value, proposals).
#[inline]
fn tempered_draw<R: Rng + ?Sized>(
    rng: &mut R,
    alpha: f64,
    lambda: f64,
    slice_scale: f64,
    m: usize,
) -> (f64, u64) {
    let mut total = 0.0;
    let mut tries = 0u64;
    for _ in 0..m {
        loop {
            tries += 1;
            let d = slice_scale * stable_unit(rng, alpha);
            if open01(rng) < (-lambda * d).exp() {
                total += d;
                break;
            }
        }
    }
    (total, tries)
}

pub fn sample_tempered(
    p: TemperedParams,
    n: usize,
    seed: u64,
    workers: usize,
) -> Result<SampleBatch> {
    check_n(n)?;
    if p.lambda == 0.0 {
        let mut b = sample_stable(p.stable(), n, seed, workers)?;
        b.process = Process::Tempered(p);
        b.acceptance_rate = Some(1.0);
        return Ok(b);
    }
    let m = tempered_slices(&p)?;
    let slice_scale = (p.t / m as f64).powf(1.0 / p.alpha);
    let (v, tries) = run_blocks(n, seed, workers, |rng, c| {
        let mut out = Vec::with_capacity(c);
        let mut tries = 0;
        for _ in 0..c {
            let (d, k) = tempered_draw(rng, p.alpha, p.lambda, slice_scale, m);
            out.push(d);
            tries += k;
        }
        Ok((out, tries))
    })?;
    let per_slice = (n * m) as f64 / tries as f64;
    let mut b = batch(v, Process::Tempered(p), seed, workers);
    b.acceptance_rate = Some(per_slice.powi(m as i32));
    Ok(b)
}

pub fn sample_inverse(p: StableParams, n: usize, seed: u64, workers: usize) -> Result<SampleBatch> {
    check_n(n)?;
    let (v, _) = run_blocks(n, seed, workers, |rng, c| {
        Ok((
            (0..c)
                .map(|_| (p.t / stable_unit(rng, p.alpha)).powf(p.alpha))
                .collect(),
            0,
        ))
    })?;
    Ok(batch(v, Process::InvStable(p), seed, workers))
}

/// Grid settings for the path sampler of the inverse tempered subordinator.
#[derive(Debug, Clone, Copy)]
pub struct PathGrid {
    /// log2 of the starting number of increments on [0, w_max].
    pub start_level: u32,
    pub max_level: u32,
    /// Two-sample KS distance between successive refinements that ends refinement.
    pub ks_tol: f64,
    /// Paths used for the refinement check.
    pub pilot: usize,
}

impl Default for PathGrid {
    fn default() -> Self {
        Self {
            start_level: 10,
            max_level: 16,
            ks_tol: 0.002,
            pilot: 200_000,
        }
    }
}

// horizon long enough that most paths cross t before it; paths that do not
// simply continue past it
fn path_horizon(p: &TemperedParams) -> f64 {
    let mean_rate = p.alpha * p.lambda.powf(p.alpha - 1.0);
    let inv_mean = p.t.powf(p.alpha) / gamma(1.0 + p.alpha).unwrap_or(1.0);
    2.0 * (p.t / mean_rate).max(inv_mean)
}

/// First passage of a simulated tempered path over t on a grid of width dt.
/// With `coarse` the same increments are summed in pairs, giving the path at
/// twice the step from identical randomness.
fn passage_pair<R: Rng + ?Sized>(
    rng: &mut R,
    p: &TemperedParams,
    dt: f64,
    slice_scale: f64,
    m: usize,
) -> (f64, f64) {
    let mut level = 0.0;
    let mut j = 0u64;
    let mut fine = None;
    loop {
        let (d, _) = tempered_draw(rng, p.alpha, p.lambda, slice_scale, m);
        level += d;
        j += 1;
        if fine.is_none() && level > p.t {
            fine = Some(j);
        }
        // coarse path sees the level only at even steps
        if j.is_multiple_of(2) && level > p.t {
            let jf = fine.unwrap();
            let u = open01(rng);
            let fine_x = (jf as f64 - 1.0 + u) * dt;
            let coarse_x = ((j / 2) as f64 - 1.0 + u) * 2.0 * dt;
            return (fine_x, coarse_x);
        }
    }
}

fn passage<R: Rng + ?Sized>(
    rng: &mut R,
    p: &TemperedParams,
    dt: f64,
    slice_scale: f64,
    m: usize,
) -> f64 {
    let mut level = 0.0;
    let mut j = 0u64;
    loop {
        let (d, _) = tempered_draw(rng, p.alpha, p.lambda, slice_scale, m);
        level += d;
        j += 1;
        if level > p.t {
            return (j as f64 - 1.0 + open01(rng)) * dt;
        }
    }
}

fn increment_setup(p: &TemperedParams, dt: f64) -> Result<(f64, usize)> {
    let inc = TemperedParams { t: dt, ..*p };
    let m = tempered_slices(&inc)?;
    Ok(((dt / m as f64).powf(1.0 / p.alpha), m))
}

/// Chooses the grid level: refine until paths at level L and L-1 (sharing
/// increments) give first-passage samples within `ks_tol` in KS distance.
pub fn choose_path_level(
    p: &TemperedParams,
    grid: &PathGrid,
    seed: u64,
    workers: usize,
) -> Result<u32> {
    let horizon = path_horizon(p);
    let mut level = grid.start_level;
    loop {
        let dt = horizon / (1u64 << level) as f64;
        let (scale, m) = increment_setup(p, dt)?;
        // pilot streams live far from the production block streams
        let pilot_seed = seed ^ 0x9e37_79b9_7f4a_7c15 ^ level as u64;
        let (pairs, _) = run_blocks(grid.pilot * 2, pilot_seed, workers, |rng, c| {
            let mut out = Vec::with_capacity(c);
            for _ in 0..c / 2 {
                let (f, g) = passage_pair(rng, p, dt, scale, m);
                out.push(f);
                out.push(g);
            }
            Ok((out, 0))
        })?;
        let mut fine: Vec<f64> = pairs.iter().step_by(2).copied().collect();
        let mut coarse: Vec<f64> = pairs.iter().skip(1).step_by(2).copied().collect();
        let d = ks_two_sample(&mut fine, &mut coarse);
        if d < grid.ks_tol {
            return Ok(level);
        }
        if level >= grid.max_level {
            return Err(Error::Efficiency(format!(
                "path grid did not settle by level {level} (KS shift {d:.4})"
            )));
        }
        level += 1;
    }
}

pub fn sample_inverse_tempered(
    p: TemperedParams,
    n: usize,
    seed: u64,
    workers: usize,
) -> Result<SampleBatch> {
    sample_inverse_tempered_with(p, n, seed, workers, &PathGrid::default())
}

pub fn sample_inverse_tempered_with(
    p: TemperedParams,
    n: usize,
    seed: u64,
    workers: usize,
    grid: &PathGrid,
) -> Result<SampleBatch> {
    check_n(n)?;
    check(p.lambda > 0.0, || {
        "the path sampler needs lambda > 0".into()
    })?;
    let level = choose_path_level(&p, grid, seed, workers)?;
    let dt = path_horizon(&p) / (1u64 << level) as f64;
    let (scale, m) = increment_setup(&p, dt)?;
    let (v, _) = run_blocks(n, seed, workers, |rng, c| {
        Ok(((0..c).map(|_| passage(rng, &p, dt, scale, m)).collect(), 0))
    })?;
    let mut b = batch(v, Process::InvTempered(p), seed, workers);
    b.grid_level = Some(level);
    Ok(b)
}

pub fn sample_ig(p: IGParams, n: usize, seed: u64, workers: usize) -> Result<SampleBatch> {
    check_n(n)?;
    let dt = p.delta * p.t;
    let dist = if p.gamma > 0.0 {
        Some(
            InverseGaussian::new(dt / p.gamma, dt * dt)
                .map_err(|e| Error::InvalidParams(e.to_string()))?,
        )
    } else {
        None
    };
    let (v, _) = run_blocks(n, seed, workers, |rng, c| {
        let out = (0..c)
            .map(|_| match &dist {
                Some(d) => d.sample(rng),
                None => {
                    let z: f64 = StandardNormal.sample(rng);
                    dt * dt / (z * z)
                }
            })
            .collect();
        Ok((out, 0))
    })?;
    Ok(batch(v, Process::Ig(p), seed, workers))
}

/// Q(t) = M/d with M the maximum of B(s) + g s on [0, t], drawn exactly from
/// the endpoint and the Brownian-bridge maximum.
pub fn sample_ig_first_exit(
    p: IGParams,
    n: usize,
    seed: u64,
    workers: usize,
) -> Result<SampleBatch> {
    check_n(n)?;
    let (v, _) = run_blocks(n, seed, workers, |rng, c| {
        let out = (0..c)
            .map(|_| {
                let z: f64 = StandardNormal.sample(rng);
                let x = p.gamma * p.t + p.t.sqrt() * z;
                let m = 0.5 * (x + (x * x - 2.0 * p.t * open01(rng).ln()).sqrt());
                m / p.delta
            })
            .collect();
        Ok((out, 0))
    })?;
    Ok(batch(v, Process::IgFirstExit(p), seed, workers))
}

fn sample_pair<F>(
    n: usize,
    seed: u64,
    workers: usize,
    process: Process,
    f: F,
) -> Result<SampleBatch>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    check_n(n)?;
    let (v, _) = run_blocks(n, seed, workers, |rng, c| {
        Ok(((0..c).map(|_| f(rng)).collect(), 0))
    })?;
    Ok(batch(v, process, seed, workers))
}

pub fn sample_product_inv(
    p: PairParams,
    n: usize,
    seed: u64,
    workers: usize,
) -> Result<SampleBatch> {
    sample_pair(n, seed, workers, Process::ProductInv(p), |rng| {
        let e1 = (p.t / stable_unit(rng, p.alpha1)).powf(p.alpha1);
        let e2 = (p.t / stable_unit(rng, p.alpha2)).powf(p.alpha2);
        e1 * e2
    })
}

pub fn sample_product_stable(
    p: PairParams,
    n: usize,
    seed: u64,
    workers: usize,
) -> Result<SampleBatch> {
    let s1 = p.t.powf(1.0 / p.alpha1);
    let s2 = p.t.powf(1.0 / p.alpha2);
    sample_pair(n, seed, workers, Process::ProductStable(p), |rng| {
        let d1 = s1 * stable_unit(rng, p.alpha1);
        let d2 = s2 * stable_unit(rng, p.alpha2);
        d1 * d2
    })
}

pub fn sample_quotient_inv(
    p: PairParams,
    n: usize,
    seed: u64,
    workers: usize,
) -> Result<SampleBatch> {
    sample_pair(n, seed, workers, Process::QuotientInv(p), |rng| {
        let e1 = (p.t / stable_unit(rng, p.alpha1)).powf(p.alpha1);
        let e2 = (p.t / stable_unit(rng, p.alpha2)).powf(p.alpha2);
        e1 / e2
    })
}

/// Draws a batch for any process.
pub fn sample(process: Process, n: usize, seed: u64, workers: usize) -> Result<SampleBatch> {
    match process {
        Process::Stable(p) => sample_stable(p, n, seed, workers),
        Process::Tempered(p) => sample_tempered(p, n, seed, workers),
        Process::InvStable(p) => sample_inverse(p, n, seed, workers),
        Process::InvTempered(p) if p.lambda == 0.0 => {
            let mut b = sample_inverse(p.stable(), n, seed, workers)?;
            b.process = process;
            Ok(b)
        }
        Process::InvTempered(p) => sample_inverse_tempered(p, n, seed, workers),
        Process::Ig(p) => sample_ig(p, n, seed, workers),
        Process::IgFirstExit(p) => sample_ig_first_exit(p, n, seed, workers),
        Process::ProductInv(p) => sample_product_inv(p, n, seed, workers),
        Process::ProductStable(p) => sample_product_stable(p, n, seed, workers),
        Process::QuotientInv(p) => sample_quotient_inv(p, n, seed, workers),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_laplace_transform() {
        // E[e^{-D}] = e^{-1} at t = 1
        let p = StableParams::new(0.7, 1.0).unwrap();
        let b = sample_stable(p, 200_000, 3, 2).unwrap();
        let vals: Vec<f64> = b.values.iter().map(|d| (-d).exp()).collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vals.len() as f64;
        let se = (var / vals.len() as f64).sqrt();
        assert!((mean - (-1f64).exp()).abs() < 4.0 * se, "{mean}");
    }

    #[test]
    fn untempered_passes_through() {
        let p = TemperedParams::new(0.6, 0.0, 1.5).unwrap();
        let a = sample_tempered(p, 1000, 42, 1).unwrap();
        let b = sample_stable(p.stable(), 1000, 42, 3).unwrap();
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn acceptance_rate_is_tilting_normaliser() {
        let p = TemperedParams::new(0.6, 2.0, 1.0).unwrap();
        let b = sample_tempered(p, 100_000, 5, 2).unwrap();
        let expect = (-(2f64.powf(0.6))).exp();
        let r = b.acceptance_rate.unwrap();
        // binomial SE over the proposals
        let tries = 100_000.0 / expect;
        let se = (expect * (1.0 - expect) / tries).sqrt();
        assert!((r - expect).abs() < 3.0 * se, "{r} {expect}");
    }

    #[test]
    fn first_exit_without_drift_is_half_normal() {
        let p = IGParams::new(1.0, 0.0, 1.0).unwrap();
        let b = sample_ig_first_exit(p, 200_000, 8, 2).unwrap();
        let mean = b.values.iter().sum::<f64>() / b.n as f64;
        let se = ((1.0 - 2.0 / PI) / b.n as f64).sqrt();
        assert!((mean - (2.0 / PI).sqrt()).abs() < 4.0 * se);
    }

    #[test]
    fn slices_guard() {
        let p = TemperedParams::new(0.9, 1e6, 1e3).unwrap();
        assert!(matches!(
            sample_tempered(p, 10, 1, 1),
            Err(Error::Efficiency(_))
        ));
    }
}
