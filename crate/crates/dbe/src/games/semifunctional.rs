//! Samplers for the dual-system proof artifacts: semi-functional ciphertext
//! headers, the fully semi-functional blinded chain, and the hybrid chain
//! forms that interpolate between normal and semi-functional.
//!
//! G_{p2} exponents are arithmetic mod p₂ throughout. The hybrid forms use
//! powers a_j^(L+1−i) whose exponent goes negative for i > L + 1; those are
//! computed through Fermat inverses mod p₂, which exist exactly when the
//! base is nonzero mod p₂.

use super::transparent::TransparentSetup;
use crate::dbe_ss::CiphertextHeader;
use crate::error::{Error, Result};
use crate::groups::{GElem, PrimeSubset, Scalar};
use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;
use std::collections::BTreeMap;

/// Semi-functional header: (C₁·g₂^c, C₂·g₂^(c·d)) with fresh c, d.
pub fn sample_ch_sf<R: RngCore>(
    ts: &TransparentSetup,
    rng: &mut R,
    normal: &CiphertextHeader,
) -> Result<CiphertextHeader> {
    let c = ts.group().random_scalar(rng);
    let d = ts.group().random_scalar(rng);
    sample_ch_sf_with(ts, normal, &c, &d)
}

/// Semi-functional header with the masking exponents pinned; c = 0 returns
/// the input unchanged.
pub fn sample_ch_sf_with(
    ts: &TransparentSetup,
    normal: &CiphertextHeader,
    c: &Scalar,
    d: &Scalar,
) -> Result<CiphertextHeader> {
    let group = ts.group();
    let c1 = group.g_mul(&normal.c1, &group.g_exp(&ts.g2, c)?)?;
    let cd = group.scalar_mul(c, d);
    let c2 = group.g_mul(&normal.c2, &group.g_exp(&ts.g2, &cd)?)?;
    Ok(CiphertextHeader { c1, c2 })
}

/// The fixed exponents (r_j, a_j) shared across a hybrid sequence.
#[derive(Debug, Clone)]
pub struct HybridCoeffs {
    pub r: Vec<Scalar>,
    pub a: Vec<Scalar>,
}

pub fn sample_hybrid_coeffs<R: RngCore>(
    ts: &TransparentSetup,
    rng: &mut R,
    count: usize,
) -> HybridCoeffs {
    let group = ts.group();
    let r = (0..count).map(|_| group.random_scalar(rng)).collect();
    let a = (0..count).map(|_| group.random_scalar(rng)).collect();
    HybridCoeffs { r, a }
}

/// The two sub-forms of the η-th hybrid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HybridStage {
    /// g₂ carries Σ_{j<η} r_j·a_j^(L+1−i).
    Zero,
    /// Additionally g₂^(r_η·α^(L+1−i)).
    One,
}

/// Hybrid chain of type (η, stage): each normal U'_i gains a structured
/// G_{p2} component and fresh G_{p3} blinding. Requires every base whose
/// negative power appears to be invertible mod p₂.
pub fn sample_ul_eta<R: RngCore>(
    ts: &TransparentSetup,
    coeffs: &HybridCoeffs,
    rng: &mut R,
    eta: u32,
    stage: HybridStage,
) -> Result<BTreeMap<u32, GElem>> {
    let slots = ts.slots();
    let max_eta = match stage {
        HybridStage::Zero => 2 * slots + 1,
        HybridStage::One => 2 * slots,
    };
    if eta == 0 || eta > max_eta {
        return Err(Error::InvalidParameter(format!(
            "eta {eta} outside [1, {max_eta}]"
        )));
    }
    let needed = match stage {
        HybridStage::Zero => (eta - 1) as usize,
        HybridStage::One => eta as usize,
    };
    if coeffs.r.len() < needed || coeffs.a.len() < (eta - 1) as usize {
        return Err(Error::InvalidParameter(format!(
            "hybrid coefficients shorter than eta {eta}"
        )));
    }
    let group = ts.group();
    let p2 = ts.p2();
    let mut out = BTreeMap::new();
    for i in 1..=2 * slots {
        let power = i64::from(slots) + 1 - i64::from(i);
        let mut g2_exp = BigUint::zero();
        for j in 0..(eta - 1) as usize {
            let term = signed_power(coeffs.a[j].value(), power, p2)?;
            g2_exp = (g2_exp + coeffs.r[j].value() % p2 * term) % p2;
        }
        if stage == HybridStage::One {
            let term = signed_power(ts.alpha.value(), power, p2)?;
            g2_exp = (g2_exp + coeffs.r[(eta - 1) as usize].value() % p2 * term) % p2;
        }
        let masked = group.g_mul(
            &ts.u_full[&i],
            &group.g_exp(&ts.g2, &group.scalar_from_uint(&g2_exp))?,
        )?;
        let blinded = group.g_mul(&masked, &group.random_element(rng, PrimeSubset::P3))?;
        out.insert(i, blinded);
    }
    Ok(out)
}

/// Fully semi-functional chain: U'_i·g₂^(δ_i)·Y'_i with uniform δ_i ∈ Z_N.
pub fn sample_ul_sf<R: RngCore>(
    ts: &TransparentSetup,
    rng: &mut R,
) -> Result<BTreeMap<u32, GElem>> {
    let group = ts.group();
    let deltas: Vec<Scalar> = (0..2 * ts.slots())
        .map(|_| group.random_scalar(rng))
        .collect();
    sample_ul_sf_with_deltas(ts, rng, &deltas)
}

/// Semi-functional chain with the δ vector pinned (all-zero δ reduces to a
/// plain G_{p3} reblinding of the normal chain).
pub fn sample_ul_sf_with_deltas<R: RngCore>(
    ts: &TransparentSetup,
    rng: &mut R,
    deltas: &[Scalar],
) -> Result<BTreeMap<u32, GElem>> {
    if deltas.len() != 2 * ts.slots() as usize {
        return Err(Error::InvalidParameter(format!(
            "need {} deltas, got {}",
            2 * ts.slots(),
            deltas.len()
        )));
    }
    let group = ts.group();
    let mut out = BTreeMap::new();
    for i in 1..=2 * ts.slots() {
        let masked = group.g_mul(
            &ts.u_full[&i],
            &group.g_exp(&ts.g2, &deltas[(i - 1) as usize])?,
        )?;
        let blinded = group.g_mul(&masked, &group.random_element(rng, PrimeSubset::P3))?;
        out.insert(i, blinded);
    }
    Ok(out)
}

/// base^power mod p for a signed power; negative powers go through the
/// Fermat inverse and need the base nonzero mod p.
fn signed_power(base: &BigUint, power: i64, p: &BigUint) -> Result<BigUint> {
    let b = base % p;
    if power >= 0 {
        return Ok(b.modpow(&BigUint::from(power as u64), p));
    }
    if b.is_zero() {
        return Err(Error::InvalidParameter(
            "negative power of a base divisible by p2".into(),
        ));
    }
    let inv = b.modpow(&(p - BigUint::from(2u8)), p);
    Ok(inv.modpow(&BigUint::from((-power) as u64), p))
}

/// G_{p2}-component of a symbolic element: its exponent mod p₂. The other
/// CRT components of u-parts and Y-parts vanish mod p₂, so this reads off
/// exactly the semi-functional mask.
pub fn g2_component(e: &GElem, p2: &BigUint) -> Option<BigUint> {
    e.symbolic_exponent().map(|x| x % p2)
}
