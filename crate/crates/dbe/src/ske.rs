//! One-time-pad symmetric encryption.
//!
//! The doubled scheme wraps each branch session key exactly once, so the
//! one-time pad gives one-message indistinguishability unconditionally and
//! with zero dependencies. Keys, messages, and ciphertexts are all λ-bit
//! strings and every operation is XOR.

use crate::bits::BitString;
use crate::error::{Error, Result};
use rand::RngCore;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeKey(pub BitString);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeCiphertext(pub BitString);

/// Uniform λ-bit key, λ ≥ 8.
pub fn gen_key<R: RngCore>(rng: &mut R, lambda: u32) -> Result<SkeKey> {
    if lambda < 8 {
        return Err(Error::InvalidParameter(format!(
            "lambda {lambda} below minimum 8"
        )));
    }
    Ok(SkeKey(BitString::random(rng, lambda)))
}

pub fn encrypt(key: &SkeKey, message: &BitString) -> Result<SkeCiphertext> {
    Ok(SkeCiphertext(key.0.xor(message)?))
}

/// Decryption only fails (⊥) on a length mismatch.
pub fn decrypt(key: &SkeKey, ciphertext: &SkeCiphertext) -> Result<BitString> {
    key.0.xor(&ciphertext.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;
    use num_bigint::BigUint;
    use std::collections::HashMap;

    #[test]
    fn xor_toy_vector() {
        // k = 0b1010, m = 0b0110 -> c = 0b1100 (4-bit strings built raw).
        let k = SkeKey(BitString::from_uint(4, &BigUint::from(0b1010u8)));
        let m = BitString::from_uint(4, &BigUint::from(0b0110u8));
        let c = encrypt(&k, &m).unwrap();
        assert_eq!(c.0.as_bytes(), &[0b1100]);
    }

    #[test]
    fn zero_message_reveals_key() {
        let mut rng = seeded_rng(b"zero-msg");
        let k = gen_key(&mut rng, 16).unwrap();
        let m = BitString::zero(16);
        let c = encrypt(&k, &m).unwrap();
        assert_eq!(c.0, k.0);
    }

    #[test]
    fn roundtrip_many() {
        let mut rng = seeded_rng(b"roundtrip");
        for _ in 0..1000 {
            let k = gen_key(&mut rng, 24).unwrap();
            let m = BitString::random(&mut rng, 24);
            let c = encrypt(&k, &m).unwrap();
            assert_eq!(decrypt(&k, &c).unwrap(), m);
        }
    }

    #[test]
    fn key_generation_contracts() {
        let a = gen_key(&mut seeded_rng(b"fixed"), 16).unwrap();
        let b = gen_key(&mut seeded_rng(b"fixed"), 16).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.0.lambda(), 16);
        assert!(gen_key(&mut seeded_rng(b"small"), 4).is_err());

        // Fresh seeds should essentially never collide.
        let mut distinct = 0;
        for i in 0..100u32 {
            let k1 = gen_key(&mut seeded_rng(format!("s{i}a").as_bytes()), 32).unwrap();
            let k2 = gen_key(&mut seeded_rng(format!("s{i}b").as_bytes()), 32).unwrap();
            if k1 != k2 {
                distinct += 1;
            }
        }
        assert_eq!(distinct, 100);
    }

    #[test]
    fn length_mismatch_is_bottom() {
        let k = gen_key(&mut seeded_rng(b"len"), 16).unwrap();
        let m = BitString::zero(8);
        assert!(encrypt(&k, &m).is_err());
        let c = SkeCiphertext(BitString::zero(8));
        assert!(decrypt(&k, &c).is_err());
    }

    #[test]
    fn one_message_indistinguishability_exact() {
        // Over a uniform 8-bit key, the ciphertext distribution of any two
        // fixed messages is identical; enumerate all 256 keys exactly.
        let lambda = 8u32;
        let m0 = BitString::from_uint(lambda, &BigUint::from(0x5au8));
        let m1 = BitString::from_uint(lambda, &BigUint::from(0xc3u8));
        let mut d0: HashMap<Vec<u8>, u32> = HashMap::new();
        let mut d1: HashMap<Vec<u8>, u32> = HashMap::new();
        for key_byte in 0u16..256 {
            let k = SkeKey(BitString::from_uint(lambda, &BigUint::from(key_byte)));
            *d0.entry(encrypt(&k, &m0).unwrap().0.as_bytes().to_vec())
                .or_default() += 1;
            *d1.entry(encrypt(&k, &m1).unwrap().0.as_bytes().to_vec())
                .or_default() += 1;
        }
        assert_eq!(d0, d1);
        assert_eq!(d0.len(), 256);
    }
}
