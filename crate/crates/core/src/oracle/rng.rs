//! Block-stream random numbers.
//!
//! Variates are produced in blocks of [`BLOCK`]; block b draws from
//! ChaCha8 seeded with `seed` on stream b. Workers take whole blocks and the
//! results are concatenated in block order, so a batch depends only on
//! (seed, n) and never on how many workers produced it.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

pub const BLOCK: usize = 1 << 16;

pub fn block_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform on the open interval (0, 1).
#[inline]
pub fn open01<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Runs `block(rng, count)` for every block of an n-sample batch across
/// `workers` threads and concatenates the outputs in block order. The second
/// element returned by each block is an auxiliary counter (e.g. proposals),
/// summed over blocks.
pub fn run_blocks<F>(n: usize, seed: u64, workers: usize, block: F) -> Result<(Vec<f64>, u64)>
where
    F: Fn(&mut ChaCha8Rng, usize) -> Result<(Vec<f64>, u64)> + Sync,
{
    let nblocks = n.div_ceil(BLOCK);
    let workers = workers.clamp(1, nblocks.max(1));
    let count = |b: usize| BLOCK.min(n - b * BLOCK);
    let mut parts: Vec<Option<Result<(Vec<f64>, u64)>>> = (0..nblocks).map(|_| None).collect();
    if workers == 1 {
        for (b, slot) in parts.iter_mut().enumerate() {
            let mut rng = block_rng(seed, b as u64);
            *slot = Some(block(&mut rng, count(b)));
        }
    } else {
        let chunks: Vec<&mut [Option<Result<(Vec<f64>, u64)>>]> =
            parts.chunks_mut(nblocks.div_ceil(workers)).collect();
        let per = nblocks.div_ceil(workers);
        std::thread::scope(|s| {
            for (w, chunk) in chunks.into_iter().enumerate() {
                let block = &block;
                s.spawn(move || {
                    for (i, slot) in chunk.iter_mut().enumerate() {
                        let b = w * per + i;
                        let mut rng = block_rng(seed, b as u64);
                        *slot = Some(block(&mut rng, count(b)));
                    }
                });
            }
        });
    }
    let mut out = Vec::with_capacity(n);
    let mut aux = 0u64;
    for p in parts {
        let (v, a) = p.expect("every block is filled")?;
        out.extend_from_slice(&v);
        aux += a;
    }
    Ok((out, aux))
}
