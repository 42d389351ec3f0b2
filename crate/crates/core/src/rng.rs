//! Seeded randomness. Every random choice in the crate draws from
//! [`ChaCha8Rng`] seeded with `seed_from_u64`, which is portable across
//! platforms. Per-instance seeds are derived from the experiment seed with
//! a SplitMix64 mix so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifier written into report headers.
pub const SAMPLER_ID: &str = "chacha8 (rand_chacha 0.3, seed_from_u64); partial Fisher-Yates via rand 0.8 gen_range";

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a base seed with an instance key into an independent seed.
pub fn derive_seed(seed: u64, key: &[u64]) -> u64 {
    key.iter().fold(splitmix64(seed), |acc, &k| splitmix64(acc ^ splitmix64(k)))
}
