//! The bridge from hybrid randomness to fully random semi-functional
//! exponents: the map r ↦ M·r mod p₂, where column j of M is
//! (a_j, a_j², …, a_j^n), is a bijection iff det M ≠ 0. Since the first row
//! is the a_j themselves (not ones), det M = (∏_j a_j)·∏_{i<j}(a_j − a_i):
//! the tuple must be distinct *and* avoid zero.

use crate::error::{Error, Result};
use std::collections::HashSet;

const MAX_PRIME: u64 = 1 << 20;
const MAX_ENUMERATION: u64 = 1 << 20;

fn check_inputs(p2: u64, a: &[u64]) -> Result<Vec<u64>> {
    if !(2..=MAX_PRIME).contains(&p2) || !is_small_prime(p2) {
        return Err(Error::InvalidParameter(format!(
            "p2 = {p2} must be a prime at most 2^20"
        )));
    }
    if a.is_empty() {
        return Err(Error::InvalidParameter("empty exponent tuple".into()));
    }
    let reduced: Vec<u64> = a.iter().map(|&x| x % p2).collect();
    let mut seen = HashSet::new();
    for &x in &reduced {
        if !seen.insert(x) {
            return Err(Error::NonDistinctInputs);
        }
    }
    Ok(reduced)
}

fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// det M = (∏ a_j)·∏_{i<j}(a_j − a_i) mod p₂ ≠ 0?
pub fn vandermonde_det_nonzero(p2: u64, a: &[u64]) -> Result<bool> {
    let a = check_inputs(p2, a)?;
    let mut det = 1u64;
    for &x in &a {
        det = det * (x % p2) % p2;
    }
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let diff = (a[j] + p2 - a[i]) % p2;
            det = det * diff % p2;
        }
    }
    Ok(det != 0)
}

/// Brute-force verdict: enumerate every r ∈ Z_{p₂}^n and count distinct
/// images of r ↦ (Σ_j a_j^k r_j)_{k=1..n}.
pub fn vandermonde_exhaustive_bijection(p2: u64, a: &[u64]) -> Result<bool> {
    let a = check_inputs(p2, a)?;
    let n = a.len();
    let total = (p2 as u128)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::InvalidParameter("enumeration size overflow".into()))?;
    if total > MAX_ENUMERATION as u128 {
        return Err(Error::InvalidParameter(format!(
            "{p2}^{n} too large to enumerate"
        )));
    }
    // powers[j][k] = a_j^(k+1) mod p2
    let powers: Vec<Vec<u64>> = a
        .iter()
        .map(|&x| {
            let mut row = Vec::with_capacity(n);
            let mut acc = 1u64;
            for _ in 0..n {
                acc = acc * x % p2;
                row.push(acc);
            }
            row
        })
        .collect();
    let mut images = HashSet::with_capacity(total as usize);
    let mut r = vec![0u64; n];
    loop {
        let image: Vec<u64> = (0..n)
            .map(|k| {
                r.iter()
                    .enumerate()
                    .fold(0u64, |s, (j, &rj)| (s + powers[j][k] * rj) % p2)
            })
            .collect();
        images.insert(image);
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(images.len() as u128 == total);
            }
            r[pos] += 1;
            if r[pos] < p2 {
                break;
            }
            r[pos] = 0;
            pos += 1;
        }
    }
}

/// The combined check: determinant verdict, cross-checked against the
/// exhaustive enumeration whenever the instance is small enough to afford
/// one.
pub fn vandermonde_bijection_check(p2: u64, a: &[u64]) -> Result<bool> {
    let det = vandermonde_det_nonzero(p2, a)?;
    let total = (p2 as u128).saturating_pow(a.len() as u32);
    if total <= 4096 {
        let exhaustive = vandermonde_exhaustive_bijection(p2, a)?;
        debug_assert_eq!(det, exhaustive, "determinant disagrees with enumeration");
        return Ok(exhaustive);
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_point_tuple_over_p7() {
        // (1,2,3) mod 7: pairwise differences (1)(2)(1) = 2, product 6;
        // 12 mod 7 = 5 != 0.
        assert!(vandermonde_bijection_check(7, &[1, 2, 3]).unwrap());
        assert!(vandermonde_det_nonzero(7, &[1, 2, 3]).unwrap());
    }

    #[test]
    fn repeats_are_rejected() {
        assert!(matches!(
            vandermonde_bijection_check(7, &[1, 2, 1]),
            Err(Error::NonDistinctInputs)
        ));
        // Distinctness is judged mod p2.
        assert!(matches!(
            vandermonde_bijection_check(5, &[1, 6]),
            Err(Error::NonDistinctInputs)
        ));
    }

    #[test]
    fn full_length_tuple_over_p5() {
        // 5^4 = 625 inputs; the image must exhaust them.
        assert!(vandermonde_exhaustive_bijection(5, &[1, 2, 3, 4]).unwrap());
        assert!(vandermonde_bijection_check(5, &[1, 2, 3, 4]).unwrap());
    }

    #[test]
    fn zero_entry_kills_the_bijection() {
        // A zero column zeroes the matrix column: distinct but singular.
        assert!(!vandermonde_det_nonzero(5, &[0, 1, 2]).unwrap());
        assert!(!vandermonde_exhaustive_bijection(5, &[0, 1, 2]).unwrap());
        assert!(!vandermonde_bijection_check(5, &[0, 1, 2]).unwrap());
    }

    fn check_all_tuples(p2: u64, n: usize) {
        let mut tuple = vec![0u64; n];
        'outer: loop {
            let distinct = {
                let mut seen = std::collections::HashSet::new();
                tuple.iter().all(|&x| seen.insert(x))
            };
            if distinct {
                let det = vandermonde_det_nonzero(p2, &tuple).unwrap();
                let brute = vandermonde_exhaustive_bijection(p2, &tuple).unwrap();
                assert_eq!(det, brute, "p2={p2} tuple={tuple:?}");
            }
            let mut pos = 0;
            loop {
                if pos == n {
                    break 'outer;
                }
                tuple[pos] += 1;
                if tuple[pos] < p2 {
                    break;
                }
                tuple[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn determinant_agrees_with_enumeration_everywhere() {
        for p2 in [5u64, 7] {
            for n in 1..=3usize {
                check_all_tuples(p2, n);
            }
        }
    }

    #[test]
    fn composite_or_huge_modulus_rejected() {
        assert!(vandermonde_det_nonzero(6, &[1, 2]).is_err());
        assert!(vandermonde_det_nonzero((1 << 20) + 7, &[1, 2]).is_err());
    }
}
