//! Challenge-tuple fixtures for the two subgroup-decision assumptions.
//!
//! These are test vectors, not reductions: they exercise subgroup sampling
//! and order checks on both backends. Each randomized component is drawn as
//! a subgroup *generator* so the stated order facts hold by construction
//! even over toy primes.

use super::transparent::TransparentSetup;
use crate::groups::{GElem, PrimeSubset};
use rand::RngCore;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupCase {
    /// Z₀: the variant without the G_{p2} component.
    Z0,
    /// Z₁: the variant carrying a G_{p2} component.
    Z1,
}

/// Tuple (g₁, g₃; Z) with Z = X₁ ∈ G_{p1} or Z = X₁R₁ ∈ G_{p1p2}.
#[derive(Debug, Clone)]
pub struct SdFixture {
    pub g1: GElem,
    pub g3: GElem,
    pub z: GElem,
    pub case: SubgroupCase,
}

pub fn sd_fixture<R: RngCore>(ts: &TransparentSetup, rng: &mut R, case: SubgroupCase) -> SdFixture {
    let group = ts.group();
    let g1 = group.random_subgroup_generator(rng, PrimeSubset::P1);
    let g3 = group.random_subgroup_generator(rng, PrimeSubset::P3);
    let x1 = group.random_subgroup_generator(rng, PrimeSubset::P1);
    let z = match case {
        SubgroupCase::Z0 => x1,
        SubgroupCase::Z1 => {
            let r1 = group.random_subgroup_generator(rng, PrimeSubset::P2);
            group.g_mul(&x1, &r1).expect("same backend")
        }
    };
    SdFixture { g1, g3, z, case }
}

/// Tuple (g₁, g₃, X₁R₁, R₂Y₁; Z) with Z = X₂Y₂ ∈ G_{p1p3} or
/// Z = X₂R₃Y₂ ∈ G_N.
#[derive(Debug, Clone)]
pub struct GsdFixture {
    pub g1: GElem,
    pub g3: GElem,
    pub x1r1: GElem,
    pub r2y1: GElem,
    pub z: GElem,
    pub case: SubgroupCase,
}

pub fn gsd_fixture<R: RngCore>(
    ts: &TransparentSetup,
    rng: &mut R,
    case: SubgroupCase,
) -> GsdFixture {
    let group = ts.group();
    let g1 = group.random_subgroup_generator(rng, PrimeSubset::P1);
    let g3 = group.random_subgroup_generator(rng, PrimeSubset::P3);
    let mul = |a: &GElem, b: &GElem| group.g_mul(a, b).expect("same backend");
    let x1r1 = mul(
        &group.random_subgroup_generator(rng, PrimeSubset::P1),
        &group.random_subgroup_generator(rng, PrimeSubset::P2),
    );
    let r2y1 = mul(
        &group.random_subgroup_generator(rng, PrimeSubset::P2),
        &group.random_subgroup_generator(rng, PrimeSubset::P3),
    );
    let x2y2 = mul(
        &group.random_subgroup_generator(rng, PrimeSubset::P1),
        &group.random_subgroup_generator(rng, PrimeSubset::P3),
    );
    let z = match case {
        SubgroupCase::Z0 => x2y2,
        SubgroupCase::Z1 => mul(
            &x2y2,
            &group.random_subgroup_generator(rng, PrimeSubset::P2),
        ),
    };
    GsdFixture {
        g1,
        g3,
        x1r1,
        r2y1,
        z,
        case,
    }
}
