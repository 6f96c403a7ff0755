//! Fixed-length bit strings.
//!
//! Session keys, SKE keys, SKE ciphertexts, and hash outputs are all strings
//! of exactly `lambda` bits. A `BitString` stores them big-endian in
//! `ceil(lambda / 8)` bytes with the unused high-order bits of the first byte
//! forced to zero, so equality and hex rendering are canonical.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    lambda: u32,
    bytes: Vec<u8>,
}

impl BitString {
    /// Number of bytes used to store `lambda` bits.
    pub fn byte_len(lambda: u32) -> usize {
        (lambda as usize).div_ceil(8)
    }

    pub fn zero(lambda: u32) -> Self {
        BitString {
            lambda,
            bytes: vec![0u8; Self::byte_len(lambda)],
        }
    }

    /// Builds a bit string from raw bytes; the byte count must match and the
    /// unused leading bits must already be clear.
    pub fn from_bytes(lambda: u32, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != Self::byte_len(lambda) {
            return Err(Error::LengthMismatch(format!(
                "expected {} bytes for {} bits, got {}",
                Self::byte_len(lambda),
                lambda,
                bytes.len()
            )));
        }
        let mut out = BitString {
            lambda,
            bytes: bytes.to_vec(),
        };
        out.mask_top();
        if out.bytes != bytes {
            return Err(Error::MalformedEncoding(
                "unused high-order bits must be zero".into(),
            ));
        }
        Ok(out)
    }

    /// The low-order `lambda` bits of `value`, big-endian.
    pub fn from_uint(lambda: u32, value: &BigUint) -> Self {
        let len = Self::byte_len(lambda);
        let reduced = if lambda == 0 {
            BigUint::zero()
        } else {
            value % (BigUint::from(1u8) << lambda)
        };
        let raw = reduced.to_bytes_be();
        let mut bytes = vec![0u8; len];
        bytes[len - raw.len()..].copy_from_slice(&raw);
        BitString { lambda, bytes }
    }

    pub fn random<R: RngCore>(rng: &mut R, lambda: u32) -> Self {
        let mut bytes = vec![0u8; Self::byte_len(lambda)];
        rng.fill_bytes(&mut bytes);
        let mut out = BitString { lambda, bytes };
        out.mask_top();
        out
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.bytes)
    }

    pub fn from_hex(lambda: u32, s: &str) -> Result<Self> {
        let bytes =
            hex::decode(s).map_err(|e| Error::MalformedEncoding(format!("bad hex: {e}")))?;
        Self::from_bytes(lambda, &bytes)
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.lambda != other.lambda {
            return Err(Error::LengthMismatch(format!(
                "xor of {}-bit and {}-bit strings",
                self.lambda, other.lambda
            )));
        }
        let bytes = self
            .bytes
            .iter()
            .zip(&other.bytes)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BitString {
            lambda: self.lambda,
            bytes,
        })
    }

    fn mask_top(&mut self) {
        let extra = (8 - (self.lambda % 8) as usize) % 8;
        if extra > 0 && !self.bytes.is_empty() {
            self.bytes[0] &= 0xffu8 >> extra;
        }
    }
}
