//! Seeded, portable random number generation.
//!
//! Reproducibility across platforms and releases matters more here than raw
//! throughput, so every derived quantity is pinned to an explicit algorithm:
//!
//! * keystream: ChaCha with 8 rounds (`rand_chacha::ChaCha8Rng`), keyed by
//!   expanding a 64-bit seed through four SplitMix64 steps,
//! * uniforms on (0, 1): the top 52 bits of a draw, centered in the cell, so
//!   the result is never exactly 0 or 1,
//! * bounded integers: rejection sampling on the 64-bit draw (unbiased),
//! * permutations: Fisher–Yates driven by the bounded-integer primitive.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One SplitMix64 step (Steele, Lea & Flood 2014).
#[inline]
pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent child seed for a named stream.
///
/// Stages and substreams of a run each get their own tag so that seeds never
/// collide and adding a stream does not shift existing ones.
#[inline]
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut state = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    splitmix64(&mut state)
}

/// Seeded generator used by all sampling operations in this crate.
#[derive(Clone, Debug)]
pub struct SampleRng {
    inner: ChaCha8Rng,
}

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        let mut state = seed;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        Self {
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw strictly inside (0, 1).
    ///
    /// The 52-bit mantissa is centered in its cell: `(m + 0.5) * 2^-52`,
    /// so the smallest value is 2^-53 and the largest 1 - 2^-53. Strict
    /// interiority keeps downstream maps (stratum placement, inverse normal
    /// CDF) away from their singular endpoints.
    #[inline]
    pub fn u01(&mut self) -> f64 {
        ((self.next_u64() >> 12) as f64 + 0.5) * (1.0 / 4_503_599_627_370_496.0)
    }

    /// Unbiased uniform integer in `[0, n)` by rejection.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0) is undefined");
        let n = n as u64;
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % n) as usize;
            }
        }
    }

    /// In-place Fisher–Yates shuffle.
    pub fn shuffle<T>(&mut self, slice: &mut [T]) {
        for i in (1..slice.len()).rev() {
            let j = self.below(i + 1);
            slice.swap(i, j);
        }
    }
}
