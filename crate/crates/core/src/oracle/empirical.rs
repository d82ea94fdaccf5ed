//! Goodness of fit between a sample batch and a density.

use serde::Serialize;

use super::par_map;
use super::sampler::SampleBatch;
use crate::error::{check, Result};

/// Asymptotic 1% critical value of the one-sample KS statistic times sqrt(n).
pub const KS_CRIT_1PCT: f64 = 1.63;

/// Variable in which the kernel estimate is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum KdeSpace {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy)]
pub struct CompareConfig {
    /// Log-grid intervals used to tabulate the model CDF.
    pub cdf_intervals: usize,
    pub kde_points: usize,
    pub kde_space: KdeSpace,
    pub workers: usize,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self {
            cdf_intervals: 4000,
            kde_points: 50,
            kde_space: KdeSpace::Log,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalReport {
    pub n: usize,
    pub ks_stat: f64,
    pub ks_critical: f64,
    /// Max relative error of the log-space KDE against the density over [q05, q95].
    pub kde_max_rel_err: f64,
    /// Same, but against the density smoothed by the identical kernel, which
    /// removes the kernel bias and leaves only sampling noise.
    pub kde_smoothed_rel_err: f64,
    pub bandwidth: f64,
    pub kde_space: KdeSpace,
    /// Model probability below the smallest draw that was estimated, not integrated.
    pub head_mass: f64,
}

impl EmpiricalReport {
    pub fn ks_pass(&self) -> bool {
        self.ks_stat < self.ks_critical
    }
}

/// Model CDF tabulated on a uniform grid in u = ln x.
pub struct CdfTable {
    u0: f64,
    h: f64,
    cdf: Vec<f64>,
    // dF/du = x f(x)
    slope: Vec<f64>,
    pub head_mass: f64,
}

impl CdfTable {
    /// Tabulates F on [lo, hi] from `intervals` Simpson panels. The mass below
    /// `lo` is estimated from a local power law of the density there.
    pub fn build<F>(f: &F, lo: f64, hi: f64, intervals: usize, workers: usize) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64> + Sync,
    {
        check(lo > 0.0 && hi > lo, || {
            format!("bad CDF range [{lo}, {hi}]")
        })?;
        let u0 = lo.ln();
        let h = (hi.ln() - u0) / intervals as f64;
        let nodes: Vec<f64> = (0..=2 * intervals)
            .map(|i| u0 + 0.5 * h * i as f64)
            .collect();
        let g = par_map(&nodes, workers, |u| {
            let x = u.exp();
            Ok(x * f(x)?)
        })?;

        // mass below lo: with x f(x) ~ c x^k there, the head is g(lo)/k
        let k = (g[2] / g[0]).ln() / h;
        let head_mass = if g[0] == 0.0 {
            0.0
        } else if k.is_finite() && k > 0.05 {
            g[0] / k
        } else {
            // flat or rising toward zero (log singularities): a crude bound
            g[0] * 20.0
        };

        let mut cdf = Vec::with_capacity(intervals + 1);
        let mut slope = Vec::with_capacity(intervals + 1);
        let mut acc = head_mass;
        cdf.push(acc);
        slope.push(g[0]);
        for i in 0..intervals {
            acc += h / 6.0 * (g[2 * i] + 4.0 * g[2 * i + 1] + g[2 * i + 2]);
            cdf.push(acc);
            slope.push(g[2 * i + 2]);
        }
        Ok(Self {
            u0,
            h,
            cdf,
            slope,
            head_mass,
        })
    }

    /// F(x) by cubic Hermite interpolation in ln x.
    pub fn eval(&self, x: f64) -> f64 {
        let last = self.cdf.len() - 1;
        let s = (x.ln() - self.u0) / self.h;
        if s <= 0.0 {
            return self.head_mass * (s * self.h).exp().min(1.0);
        }
        if s >= last as f64 {
            return self.cdf[last];
        }
        let i = s.floor() as usize;
        let t = s - i as f64;
        let (p0, p1) = (self.cdf[i], self.cdf[i + 1]);
        let (m0, m1) = (self.slope[i] * self.h, self.slope[i + 1] * self.h);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * p0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * p1
            + (t3 - t2) * m1
    }

    pub fn total(&self) -> f64 {
        *self.cdf.last().unwrap()
    }
}

/// KS distance between sorted draws and a CDF.
pub fn ks_statistic<C: Fn(f64) -> f64>(sorted: &[f64], cdf: C) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let fx = cdf(x);
            (fx - i as f64 / n)
                .abs()
                .max(((i + 1) as f64 / n - fx).abs())
        })
        .fold(0.0, f64::max)
}

/// Two-sample KS distance. Both slices are sorted in place.
pub fn ks_two_sample(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let t = pos - i as f64;
    if i + 1 < sorted.len() {
        sorted[i] * (1.0 - t) + sorted[i + 1] * t
    } else {
        sorted[i]
    }
}

// Simpson panels over +-8 bandwidths for smoothing the model with the kernel
const SMOOTH_PANELS: usize = 80;

/// Compares a batch against its claimed density: KS against the quadrature
/// CDF and a log-space Gaussian KDE over the interior quantile range.
pub fn empirical_compare<F>(batch: &SampleBatch, f: &F) -> Result<EmpiricalReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    empirical_compare_with(batch, f, &CompareConfig::default())
}

pub fn empirical_compare_with<F>(
    batch: &SampleBatch,
    f: &F,
    cfg: &CompareConfig,
) -> Result<EmpiricalReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    check(batch.values.len() >= 10_000, || {
        "empirical comparison needs n >= 1e4".into()
    })?;
    let mut xs: Vec<f64> = batch.values.iter().copied().filter(|v| *v > 0.0).collect();
    xs.sort_by(f64::total_cmp);
    let n = batch.values.len();
    // draws that are exactly zero sit below every grid point
    let zeros = n - xs.len();

    let lo = xs[0] / 10.0;
    let hi = *xs.last().unwrap();
    let table = CdfTable::build(f, lo, hi, cfg.cdf_intervals, cfg.workers)?;
    let nf = n as f64;
    let mut ks: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let fx = table.eval(x);
        let k = (zeros + i) as f64;
        ks = ks.max((fx - k / nf).abs()).max(((k + 1.0) / nf - fx).abs());
    }

    let log_space = cfg.kde_space == KdeSpace::Log;
    // in log space the estimate is of ln X, whose density is x f(x)
    let ys: Vec<f64> = if log_space {
        xs.iter().map(|x| x.ln()).collect()
    } else {
        xs.clone()
    };
    let to_x = |u: f64| if log_space { u.exp() } else { u };
    let target = |u: f64| -> Result<f64> {
        let x = to_x(u);
        Ok(if log_space { x * f(x)? } else { f(x)? })
    };
    let m = ys.len() as f64;
    let mean = ys.iter().sum::<f64>() / m;
    let sd = (ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (m - 1.0)).sqrt();
    let iqr = quantile(&ys, 0.75) - quantile(&ys, 0.25);
    let bw = 0.9 * sd.min(iqr / 1.34) * m.powf(-0.2);
    let (q05, q95) = (quantile(&ys, 0.05), quantile(&ys, 0.95));
    let pts: Vec<f64> = (0..cfg.kde_points)
        .map(|j| q05 + (q95 - q05) * j as f64 / (cfg.kde_points - 1) as f64)
        .collect();
    let norm = 1.0 / (nf * bw * (2.0 * std::f64::consts::PI).sqrt());
    let rows = par_map(&pts, cfg.workers, |u| {
        // draws beyond 8 bandwidths contribute nothing at double precision
        let a = ys.partition_point(|y| *y < u - 8.0 * bw);
        let b = ys.partition_point(|y| *y <= u + 8.0 * bw);
        let kde: f64 = ys[a..b]
            .iter()
            .map(|y| (-0.5 * ((u - y) / bw).powi(2)).exp())
            .sum::<f64>()
            * norm;
        let model = target(u)?;
        let dz = 16.0 / (2 * SMOOTH_PANELS) as f64;
        let mut smooth = 0.0;
        for k in 0..=2 * SMOOTH_PANELS {
            let z = -8.0 + dz * k as f64;
            let w = if k == 0 || k == 2 * SMOOTH_PANELS {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let v = u + bw * z;
            // the kernel reaches below zero in linear space, where the density vanishes
            if log_space || v > 0.0 {
                smooth += w * (-0.5 * z * z).exp() * target(v)?;
            }
        }
        smooth *= dz / 3.0 / (2.0 * std::f64::consts::PI).sqrt();
        Ok(((kde - model).abs() / model, (kde - smooth).abs() / smooth))
    })?;
    let kde_max_rel_err = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let kde_smoothed_rel_err = rows.iter().map(|r| r.1).fold(0.0, f64::max);

    Ok(EmpiricalReport {
        n,
        ks_stat: ks,
        ks_critical: KS_CRIT_1PCT / nf.sqrt(),
        kde_max_rel_err,
        kde_smoothed_rel_err,
        bandwidth: bw,
        kde_space: if log_space {
            KdeSpace::Log
        } else {
            KdeSpace::Linear
        },
        head_mass: table.head_mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_table_exponential() {
        let f = |x: f64| Ok((-x).exp());
        let t = CdfTable::build(&f, 1e-6, 40.0, 2000, 2).unwrap();
        for x in [1e-3f64, 0.1, 1.0, 3.7, 20.0] {
            let want = -(-x).exp_m1();
            assert!((t.eval(x) - want).abs() < 1e-9, "{x} {} {want}", t.eval(x));
        }
    }

    #[test]
    fn two_sample_identical() {
        let mut a = vec![1.0, 2.0, 3.0];
        let mut b = vec![3.0, 1.0, 2.0];
        assert_eq!(ks_two_sample(&mut a, &mut b), 0.0);
        let mut c = vec![10.0, 11.0, 12.0];
        assert_eq!(ks_two_sample(&mut a, &mut c), 1.0);
    }
}
