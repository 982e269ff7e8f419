//! Seeded random streams.
//!
//! Every run owns exactly one [`RngStream`]. Streams for experiment cells are
//! derived from a master seed and a stable cell id, so results do not depend
//! on the order in which cells execute.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw in `[0, 1)`.
    pub fn next_uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform index in `0..n` from a single uniform draw, `floor(u * n)`.
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_uniform() * n as f64) as usize).min(n - 1)
    }

    /// Uniform draw in `[lo, hi)`.
    pub fn next_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_uniform()
    }

    pub fn next_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Fisher-Yates shuffle of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.next_index(i + 1);
            p.swap(i, j);
        }
        p
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the stream for `(base_seed, cell_id)`.
pub fn derive_seed(base_seed: u64, cell_id: u64) -> u64 {
    splitmix64(splitmix64(base_seed) ^ cell_id.rotate_left(17) ^ 0xD6E8_FEB8_6659_FD93)
}

pub fn derive_stream(base_seed: u64, cell_id: u64) -> RngStream {
    RngStream::new(derive_seed(base_seed, cell_id))
}

/// Stable 64-bit id for an experiment cell, e.g. `["EBGWO", "F7", "10", "3"]`.
///
/// Platform- and release-independent (unlike `std::hash`).
pub fn cell_id<S: AsRef<str>>(parts: &[S]) -> u64 {
    let mut h = 0x6A09_E667_F3BC_C908u64;
    for part in parts {
        for &b in part.as_ref().as_bytes() {
            h = splitmix64(h ^ u64::from(b));
        }
        // separator so ["ab","c"] != ["a","bc"]
        h = splitmix64(h ^ 0xFF00);
    }
    h
}
