//! Per-replicate random streams.
//!
//! The 32-byte ChaCha8 seed for replicate `r` of point `k` under master seed
//! `s` is four successive SplitMix64 outputs of the state
//! `s ^ mix(k) ^ mix(mix(r) + 1)`, where `mix` is the SplitMix64 finalizer.
//! Streams therefore depend only on `(s, k, r)`, never on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn replicate_seed(seed: u64, point_id: u64, replicate: u64) -> [u8; 32] {
    let mut state = seed ^ mix(point_id.wrapping_add(GOLDEN)) ^ mix(mix(replicate).wrapping_add(1));
    let mut out = [0u8; 32];
    for chunk in out.chunks_exact_mut(8) {
        state = state.wrapping_add(GOLDEN);
        chunk.copy_from_slice(&mix(state).to_le_bytes());
    }
    out
}

pub fn replicate_rng(seed: u64, point_id: u64, replicate: u64) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(replicate_seed(seed, point_id, replicate))
}
