//! Independent checks for the density code: samplers, numerical transform
//! inversion and goodness-of-fit statistics.

pub mod empirical;
pub mod laplace;
pub mod mellin;
pub mod rng;
pub mod sampler;

pub use empirical::{
    empirical_compare, empirical_compare_with, ks_two_sample, CompareConfig, EmpiricalReport,
    KdeSpace,
};
pub use laplace::{laplace_invert, laplace_invert_with, LaplaceEstimate, TalbotConfig};
pub use mellin::{
    mellin_invert, mellin_numeric, saddle_abscissa, Asymptote, ContourSpec, MellinCuts,
    MellinEstimate,
};
pub use sampler::{sample, Process, ProcessTag, SampleBatch};

use crate::error::Result;

/// Maps `f` over `xs` on up to `workers` threads, preserving order.
pub fn par_map<T, F>(xs: &[f64], workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync,
{
    let workers = workers.clamp(1, xs.len().max(1));
    if workers == 1 {
        return xs.iter().map(|&x| f(x)).collect();
    }
    let chunk = xs.len().div_ceil(workers);
    let parts: Vec<Result<Vec<T>>> = std::thread::scope(|s| {
        let handles: Vec<_> = xs
            .chunks(chunk)
            .map(|c| {
                let f = &f;
                s.spawn(move || c.iter().map(|&x| f(x)).collect::<Result<Vec<T>>>())
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(xs.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}
