//! Parameter generation: three distinct odd primes, and for the curve
//! backend the smallest cofactor h ≡ 0 (mod 4) making p = h·N − 1 prime,
//! plus a base point of exact order N.

use super::curve::{CurveGroup, CurvePoint};
use super::fp;
use crate::error::{Error, Result};
use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::RngCore;

/// Upper bound on the cofactor search; reached only for adversarially bad N.
const COFACTOR_SEARCH_LIMIT: u64 = 1 << 22;

/// Draws three distinct odd primes from [3, 2^prime_bits). Widths below 3
/// bits cannot supply three distinct odd primes.
pub fn sample_primes<R: RngCore>(rng: &mut R, prime_bits: u32) -> Result<[BigUint; 3]> {
    if prime_bits < 3 {
        return Err(Error::InvalidBits(prime_bits));
    }
    let bound = BigUint::one() << prime_bits;
    let mut found: Vec<BigUint> = Vec::with_capacity(3);
    // The pool for width 3 is exactly {3, 5, 7}; rejection sampling is fine
    // at every width from 3 upward.
    let mut attempts = 0u64;
    while found.len() < 3 {
        attempts += 1;
        if attempts > 200_000 {
            return Err(Error::SearchExhausted(format!(
                "no three distinct primes below 2^{prime_bits}"
            )));
        }
        let cand = rng.gen_biguint_below(&bound);
        if cand < BigUint::from(3u8) || !(&cand % BigUint::from(2u8)).is_one() {
            continue;
        }
        if found.contains(&cand) {
            continue;
        }
        if fp::is_prime(&cand) {
            found.push(cand);
        }
    }
    Ok([found[0].clone(), found[1].clone(), found[2].clone()])
}

/// Smallest h ≡ 0 (mod 4) with p = h·N − 1 prime. Since N is odd,
/// h ≡ 0 (mod 4) forces p ≡ 3 (mod 4).
pub fn find_cofactor(n: &BigUint) -> Result<(BigUint, BigUint)> {
    let mut h = 4u64;
    while h < COFACTOR_SEARCH_LIMIT {
        let hb = BigUint::from(h);
        let p = &hb * n - BigUint::one();
        if fp::is_prime(&p) {
            return Ok((hb, p));
        }
        h += 4;
    }
    Err(Error::SearchExhausted(format!(
        "no cofactor below {COFACTOR_SEARCH_LIMIT} for N = {n}"
    )))
}

/// Deterministically derives a base point of exact order N on
/// y² = x³ + x over F_p: walk x = 1, 2, …, lift to a point, clear the
/// cofactor, and keep the first candidate whose order is exactly N.
pub fn derive_base_point(
    p: &BigUint,
    cofactor: &BigUint,
    n: &BigUint,
    factors: &[BigUint; 3],
) -> Result<CurvePoint> {
    let probe = CurveGroup {
        p: p.clone(),
        cofactor: cofactor.clone(),
        order: n.clone(),
        base: CurvePoint::Infinity,
    };
    let mut x = BigUint::one();
    let limit = p.clone();
    while x < limit {
        let x3 = fp::mul_mod(&fp::mul_mod(&x, &x, p), &x, p);
        let rhs = fp::add_mod(&x3, &x, p);
        if let Some(y) = fp::sqrt_mod_p3(&rhs, p) {
            let lifted = CurvePoint::Affine { x: x.clone(), y };
            let cand = probe.scalar_mul(&lifted, cofactor);
            if !cand.is_infinity() && probe.scalar_mul(&cand, n).is_infinity() {
                let exact = factors
                    .iter()
                    .all(|q| !probe.scalar_mul(&cand, &(n / q)).is_infinity());
                if exact {
                    return Ok(cand);
                }
            }
        }
        x += BigUint::one();
    }
    Err(Error::SearchExhausted(format!(
        "no base point of order {n} on the curve over F_{p}"
    )))
}
