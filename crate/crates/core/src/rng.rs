use rand::distributions::{Distribution, Open01};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded, platform-independent random stream. One per simulation.
#[derive(Debug, Clone)]
pub struct SeededRandomSource {
    rng: ChaCha8Rng,
}

impl SeededRandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw from the open interval `(lo, hi)`.
    pub fn uniform_open(&mut self, lo: f64, hi: f64) -> f64 {
        let u: f64 = Open01.sample(&mut self.rng);
        lo + u * (hi - lo)
    }

    /// Uniform index in `0..n`. `n` must be non-zero.
    pub fn pick_index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
