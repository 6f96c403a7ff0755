//! Arithmetic in F_{p²} = F_p[i] with i² = −1, which is a field exactly when
//! p ≡ 3 (mod 4). Elements are written a + b·i.

use super::fp;
use num_bigint::BigUint;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub a: BigUint,
    pub b: BigUint,
}

impl Fp2 {
    pub fn new(a: BigUint, b: BigUint) -> Self {
        Fp2 { a, b }
    }

    pub fn zero() -> Self {
        Fp2 {
            a: BigUint::zero(),
            b: BigUint::zero(),
        }
    }

    pub fn one() -> Self {
        Fp2 {
            a: BigUint::one(),
            b: BigUint::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn mul(&self, other: &Fp2, p: &BigUint) -> Fp2 {
        // (a + bi)(c + di) = (ac − bd) + (ad + bc)i
        let ac = fp::mul_mod(&self.a, &other.a, p);
        let bd = fp::mul_mod(&self.b, &other.b, p);
        let ad = fp::mul_mod(&self.a, &other.b, p);
        let bc = fp::mul_mod(&self.b, &other.a, p);
        Fp2 {
            a: fp::sub_mod(&ac, &bd, p),
            b: fp::add_mod(&ad, &bc, p),
        }
    }

    pub fn square(&self, p: &BigUint) -> Fp2 {
        self.mul(self, p)
    }

    pub fn conjugate(&self, p: &BigUint) -> Fp2 {
        Fp2 {
            a: self.a.clone(),
            b: fp::neg_mod(&self.b, p),
        }
    }

    /// Multiplicative inverse: conj(z) / (a² + b²). Panics on zero.
    pub fn invert(&self, p: &BigUint) -> Fp2 {
        let norm = fp::add_mod(
            &fp::mul_mod(&self.a, &self.a, p),
            &fp::mul_mod(&self.b, &self.b, p),
            p,
        );
        let ninv = fp::inv_mod_prime(&norm, p);
        Fp2 {
            a: fp::mul_mod(&self.a, &ninv, p),
            b: fp::mul_mod(&fp::neg_mod(&self.b, p), &ninv, p),
        }
    }

    pub fn pow(&self, e: &BigUint, p: &BigUint) -> Fp2 {
        let mut acc = Fp2::one();
        for idx in (0..e.bits()).rev() {
            acc = acc.square(p);
            if e.bit(idx) {
                acc = acc.mul(self, p);
            }
        }
        acc
    }
}
