//! Seeded randomness with a fixed, documented stream.
//!
//! The generator is SplitMix64 (state advanced by `0x9E3779B97F4A7C15`, then
//! the standard xor-shift-multiply finaliser). Uniform reals use the top 53
//! bits: `u = (x >> 11) * 2^-53`, so `u < p` never fires for `p = 0` and
//! always fires for `p = 1`. Reimplementations in other languages reproduce
//! graphs bit for bit from these two rules.

use rand::RngCore;
use rand_xoshiro::rand_core::SeedableRng;
pub use rand_xoshiro::SplitMix64;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

#[inline]
pub fn unit_f64(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
