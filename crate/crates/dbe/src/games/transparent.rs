//! Setup with the trapdoor kept: everything the proof needs and the scheme
//! must never expose.

use crate::dbe_ss::{self, PublicParams};
use crate::error::Result;
use crate::groups::{GElem, GroupParams, PrimeSubset, Scalar};
use num_bigint::BigUint;
use rand::RngCore;
use std::collections::BTreeMap;

/// A semi-static instance plus its setup ephemera: the chain exponent α,
/// the chain base u, a fixed generator g₂ of G_{p2}, the full blinded chain
/// including the gap element, and the G_{p3} randomizers. Factor knowledge
/// comes with the embedded `GroupParams`.
#[derive(Debug, Clone)]
pub struct TransparentSetup {
    pub pp: PublicParams,
    pub alpha: Scalar,
    pub u_elem: GElem,
    pub g2: GElem,
    /// U_k for every k ∈ [1, 2L], gap included.
    pub u_full: BTreeMap<u32, GElem>,
    /// Y_k for k ∈ [1, 2L].
    pub y_rand: Vec<GElem>,
}

impl TransparentSetup {
    /// Runs the ordinary setup and keeps the trapdoor, then fixes a
    /// generator g₂ of the otherwise unused middle subgroup.
    pub fn new<R: RngCore>(
        rng: &mut R,
        group: GroupParams,
        slots: u32,
        lambda: u32,
    ) -> Result<TransparentSetup> {
        let (pp, trapdoor) = dbe_ss::setup_with_trapdoor(rng, group, slots, lambda)?;
        let g2 = pp.group().random_subgroup_generator(rng, PrimeSubset::P2);
        Ok(TransparentSetup {
            pp,
            alpha: trapdoor.alpha,
            u_elem: trapdoor.u_elem,
            g2,
            u_full: trapdoor.u_full,
            y_rand: trapdoor.y_rand,
        })
    }

    pub fn group(&self) -> &GroupParams {
        self.pp.group()
    }

    pub fn slots(&self) -> u32 {
        self.pp.slots()
    }

    /// p₂, the order of the semi-functional subgroup.
    pub fn p2(&self) -> &BigUint {
        self.group().factor(2)
    }

    /// Rebuilds the published parameters from the retained ephemera and
    /// compares: the trapdoor must reproduce the instance exactly.
    pub fn rederive_check(&self) -> bool {
        let inner = || -> Result<bool> {
            let group = self.group();
            for k in 1..=self.slots() {
                let want = group.g_exp(
                    &self.pp.generator().clone(),
                    &group.scalar_pow(&self.alpha, k),
                )?;
                if &want != self.pp.a(k)? {
                    return Ok(false);
                }
            }
            for k in 1..=2 * self.slots() {
                let bare = group.g_exp(&self.u_elem, &group.scalar_pow(&self.alpha, k))?;
                let want = group.g_mul(&bare, &self.y_rand[(k - 1) as usize])?;
                if want != self.u_full[&k] {
                    return Ok(false);
                }
                if k != self.slots() + 1 && &want != self.pp.u(k)? {
                    return Ok(false);
                }
            }
            let omega = group.pair(self.pp.generator(), &self.u_full[&(self.slots() + 1)])?;
            Ok(&omega == self.pp.omega())
        };
        inner().unwrap_or(false)
    }

    /// A clone of the instance with its blinded chain replaced (gap element
    /// taken from the supplied full list, Ω recomputed accordingly).
    pub fn instance_with_chain(&self, u_full: &BTreeMap<u32, GElem>) -> Result<PublicParams> {
        self.pp.with_u_full(u_full)
    }
}
