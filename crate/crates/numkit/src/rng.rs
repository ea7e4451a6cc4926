//! Seeded RNG with a draw sequence pinned by this crate.
//!
//! ChaCha8 supplies the raw 64-bit stream; the mapping to floats, index
//! sampling, and shuffling live here so that identical seeds give
//! identical sequences on every platform and toolchain.

use crate::{Matrix, Real};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> Real {
        ((self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)) as Real
    }

    /// Uniform in `[lo, hi)`.
    pub fn uniform(&mut self, lo: Real, hi: Real) -> Real {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform index in `[0, n)` via widening multiply.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index: empty range");
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.index(i + 1);
            xs.swap(i, j);
        }
    }

    /// Samples `k` distinct indices from `[0, n)` (order of first draw).
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "sample_indices: k > n");
        let mut idx: Vec<usize> = (0..n).collect();
        self.shuffle(&mut idx);
        idx.truncate(k);
        idx
    }

    /// Matrix with entries uniform in `[-scale, +scale]`; advances the state.
    pub fn draw_matrix(&mut self, rows: usize, cols: usize, scale: Real) -> Matrix {
        debug_assert!(scale >= 0.0);
        let mut m = Matrix::zeros(rows, cols);
        for v in m.data_mut() {
            *v = self.uniform(-scale, scale);
        }
        m
    }

    /// Independent child stream derived from this one.
    pub fn fork(&mut self) -> Rng {
        Rng::new(self.next_u64())
    }
}
