//! Pairwise-independent session-key derivation H : G_T → {0,1}^λ.
//!
//! The family is the textbook one: interpret the canonical G_T encoding as
//! a big-endian integer x and output the low λ bits of (a·x + b) mod P. The
//! modulus P is the smallest prime above 2^(8·enc_len + 64); the 64 bits of
//! slack keep the truncated output within ~2^−64 of uniform, far below any
//! tolerance used at desk scale. λ is free configuration up to that slack;
//! note that the session-key uniformity argument only banks on about
//! log p₂ bits of hidden entropy, so a λ far above log p₂ adds length, not
//! hardness, at desk scale.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::groups::{next_prime, GTElem, GroupParams};
use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::RngCore;
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashKey {
    /// Prime modulus P, strictly larger than any encoded G_T value.
    pub modulus: BigUint,
    /// Multiplier a ∈ [1, P).
    pub a: BigUint,
    /// Offset b ∈ [0, P).
    pub b: BigUint,
    /// Output length in bits.
    pub lambda: u32,
}

/// Samples a hash key for the given parameter set. P is a deterministic
/// function of the encoding width; a and b come from the injected rng.
pub fn sample_hash_key<R: RngCore>(
    rng: &mut R,
    params: &GroupParams,
    lambda: u32,
) -> Result<HashKey> {
    if lambda < 8 {
        return Err(Error::InvalidParameter(format!(
            "lambda {lambda} below minimum 8"
        )));
    }
    let enc_bits = 8 * params.gt_encoded_len() as u32 + 64;
    let modulus = modulus_for(enc_bits);
    if u64::from(lambda) > modulus.bits() - 64 {
        return Err(Error::InvalidParameter(format!(
            "lambda {lambda} exceeds the modulus width minus slack"
        )));
    }
    let a = rng.gen_biguint_range(&BigUint::one(), &modulus);
    let b = rng.gen_biguint_below(&modulus);
    Ok(HashKey {
        modulus,
        a,
        b,
        lambda,
    })
}

/// P depends only on the encoding width, so the prime walk runs once per
/// width for the whole process.
fn modulus_for(enc_bits: u32) -> BigUint {
    static CACHE: OnceLock<Mutex<HashMap<u32, BigUint>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(enc_bits)
        .or_insert_with(|| next_prime(&(BigUint::one() << enc_bits)))
        .clone()
}

impl HashKey {
    /// (a·x + b) mod P before truncation.
    pub fn eval_uint(&self, x: &BigUint) -> BigUint {
        (&self.a * x + &self.b) % &self.modulus
    }

    /// Low λ bits of the evaluation on a raw integer.
    pub fn hash_uint(&self, x: &BigUint) -> BitString {
        BitString::from_uint(self.lambda, &self.eval_uint(x))
    }

    /// H(x) for a canonical G_T element.
    pub fn hash_gt(&self, params: &GroupParams, x: &GTElem) -> Result<BitString> {
        let enc = params.encode_gt(x)?;
        Ok(self.hash_uint(&BigUint::from_bytes_be(&enc)))
    }
}
