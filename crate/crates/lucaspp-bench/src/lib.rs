//! Shared inputs for the benchmarks: fixed-seed probable primes and odd
//! composites of a given size.

use lucaspp::generation::{strong_luc_generate, GenConfig};
use lucaspp::Natural;
use num_bigint::RandBigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub const SIZES: [u32; 4] = [64, 256, 1024, 2048];

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// A `bits`-bit probable prime, same value for the same seed.
pub fn prime(bits: u32, seed: u64) -> Natural {
    let cfg = GenConfig::uniform(bits, 2, 5, seed);
    strong_luc_generate(&cfg, &mut cfg.rng())
        .expect("generation succeeds")
        .prime()
        .expect("uniform mode always returns")
        .clone()
}

/// Odd `bits`-bit value, almost surely composite.
pub fn odd(bits: u32, seed: u64) -> Natural {
    let mut n = rng(seed).gen_biguint(bits as u64);
    n.set_bit(bits as u64 - 1, true);
    n.set_bit(0, true);
    n
}
