//! Deterministic work splitting.
//!
//! Work is cut into fixed-size batches and batch `b` draws from ChaCha stream
//! `b` of the master seed, so results never depend on how many threads run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random stream for work item `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Run `f` on a dedicated pool of `workers` threads, or on the global pool when `None`.
pub fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match workers {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}
