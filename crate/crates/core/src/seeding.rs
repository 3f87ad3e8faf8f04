//! Deterministic seed derivation.
//!
//! Every random quantity is a pure function of a master seed plus a small
//! number of integer coordinates (domain tag, trial index, shard index), so
//! results never depend on how work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags keep independently derived streams apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    Codebook = 1,
    AliceCoins = 2,
    TrialSetup = 3,
    MonteCarlo = 4,
    Verify = 5,
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for `(master, domain, index)`.
pub fn derive_seed(master: u64, domain: Domain, index: u64) -> u64 {
    mix64(mix64(master ^ mix64(domain as u64)) ^ index)
}

/// ChaCha stream `stream` of the generator keyed by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
