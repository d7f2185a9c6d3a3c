//! Seed handling.
//!
//! Every sampler takes an explicit 64-bit seed. Parallel work is split into
//! tasks whose seeds are derived from the run seed with [`split`], so merged
//! results do not depend on the thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Seed = u64;

pub type LabRng = ChaCha8Rng;

pub fn rng(seed: Seed) -> LabRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the seed of task `index` from a parent seed.
///
/// `split(s, i) = mix64(s + (i + 1) * 0x9e3779b97f4a7c15)`, i.e. the `i+1`-th
/// output of a SplitMix64 stream started at `s`.
#[inline]
pub fn split(parent: Seed, index: u64) -> Seed {
    mix64(parent.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}
