//! Seeded, portable randomness for sampling and shuffling.
//!
//! The generator is ChaCha8 seeded through `seed_from_u64`, and every
//! consumer in this crate draws indices through [`sample_index`], so the
//! exact sequence of generator outputs consumed per operation is fixed.
//! Together these make seeded runs reproducible across platforms, word
//! sizes, and crate versions; treat any change here as a breaking change.

use alloc::vec::Vec;

use rand_core::{Rng, SeedableRng};

pub use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform index in `0..bound` by rejection sampling: draw a `u64`, reject
/// values at or above the largest multiple of `bound` that fits, reduce
/// modulo `bound`. Consumes one draw per attempt; rejection is rare for the
/// small bounds used here.
///
/// Panics if `bound` is 0.
pub fn sample_index(rng: &mut impl Rng, bound: usize) -> usize {
    assert!(bound > 0, "sample_index needs a positive bound");
    let bound = bound as u64;
    let limit = u64::MAX - u64::MAX % bound;
    loop {
        let draw = rng.next_u64();
        if draw < limit {
            return (draw % bound) as usize;
        }
    }
}

/// In-place Fisher-Yates shuffle, swapping positions `len-1` down to 1.
pub fn shuffle<T>(rng: &mut impl Rng, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = sample_index(rng, i + 1);
        items.swap(i, j);
    }
}

/// Draws `k` distinct indices from `0..n` (partial Fisher-Yates over the
/// index vector) and returns them sorted ascending, so selected items keep
/// their original relative order.
///
/// Panics if `k > n`.
pub fn sample_without_replacement(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    assert!(k <= n, "cannot draw {k} distinct indices from 0..{n}");
    let mut indices: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + sample_index(rng, n - i);
        indices.swap(i, j);
    }
    indices.truncate(k);
    indices.sort_unstable();
    indices
}
