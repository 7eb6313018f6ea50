// SPDX-License-Identifier: Apache-2.0

//! Seeded, platform-independent random instances.
//!
//! The generator is SplitMix64 (Steele, Lea and Flood; constants as in
//! Vigna's reference `splitmix64.c`). Each off-diagonal entry draws one
//! 64-bit word `x` and maps it to `1 + floor(x * 1000 / 2^64)`, so every
//! value lies in `[1, 1000]`. Entries are filled row-major. A symmetric
//! instance fills only the upper triangle (`i < j`, row-major) and mirrors it.

use alloc::format;
use alloc::vec;

use crate::tsp::{CostMatrix, MAX_CITIES};
use crate::Error;

/// Largest generated trip cost.
pub const MAX_GENERATED_COST: u64 = 1000;

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    /// Generator whose first output derives from `seed`.
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Next 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[1, upper]` by multiply-shift.
    pub fn next_in_1_to(&mut self, upper: u64) -> u64 {
        1 + ((u128::from(self.next_u64()) * u128::from(upper)) >> 64) as u64
    }
}

/// Deterministic instance of `n` cities with costs in `[1, 1000]`.
pub fn generate_instance(n: usize, seed: u64, symmetric: bool) -> Result<CostMatrix, Error> {
    if !(2..=MAX_CITIES).contains(&n) {
        return Err(Error::InvalidInstance(format!(
            "city count {n} outside 2..={MAX_CITIES}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut costs = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j || (symmetric && j < i) {
                continue;
            }
            let c = rng.next_in_1_to(MAX_GENERATED_COST);
            costs[i * n + j] = c;
            if symmetric {
                costs[j * n + i] = c;
            }
        }
    }
    CostMatrix::from_flat(n, costs)
}
