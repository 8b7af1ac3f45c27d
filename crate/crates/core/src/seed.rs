//! Seed splitting.
//!
//! One user seed fans out into independent sub-seeds with
//! `derive(seed, stream, index)`: the triple is mixed through SplitMix64
//! finalizers, so changing any component gives an unrelated stream.
//! Streams used across the crate are the constants below.

/// Topology randomness of a generated graph.
pub const TOPOLOGY: u64 = 1;
/// Edge-weight draws.
pub const WEIGHTS: u64 = 2;
/// Within-phase delivery shuffles.
pub const SHUFFLE: u64 = 3;
/// Retry attempts of a filtered generator.
pub const ATTEMPT: u64 = 4;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive(seed: u64, stream: u64, index: u64) -> u64 {
    splitmix(splitmix(splitmix(seed) ^ stream) ^ index)
}
