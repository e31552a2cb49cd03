//! Aggregation of all verification suites into machine-readable reports.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for randomized property checks: the base seed is
/// combined with a per-check label so suites stay independent.
pub fn seeded_rng(seed: u64, label: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}
