//! Injected randomness.
//!
//! Every randomized operation in this crate takes an explicit `RngCore`
//! handle. `seeded_rng` derives a ChaCha20 stream from an arbitrary nonempty
//! byte seed, so fixed seeds reproduce every artifact bit for bit. A handle
//! is single-threaded state: share one across threads only with external
//! coordination.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

/// Deterministic RNG from an arbitrary nonempty seed. The seed is expanded to
/// the ChaCha key by SHA-256, so seeds of any length are accepted.
pub fn seeded_rng(seed: &[u8]) -> ChaCha20Rng {
    let key: [u8; 32] = Sha256::digest(seed).into();
    ChaCha20Rng::from_seed(key)
}

/// RNG from the platform entropy source, for callers that did not pin a seed.
pub fn entropy_rng() -> ChaCha20Rng {
    ChaCha20Rng::from_entropy()
}

/// Test double yielding a fixed byte forever. With an all-zero stream,
/// uniform-below sampling returns 0, which lets tests force degenerate
/// exponents such as `t = 0`.
#[derive(Debug, Clone)]
pub struct ConstRng(pub u8);

impl RngCore for ConstRng {
    fn next_u32(&mut self) -> u32 {
        u32::from_le_bytes([self.0; 4])
    }

    fn next_u64(&mut self) -> u64 {
        u64::from_le_bytes([self.0; 8])
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        dest.fill(self.0);
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        dest.fill(self.0);
        Ok(())
    }
}
