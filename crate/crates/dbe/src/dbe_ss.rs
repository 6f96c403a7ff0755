//! The basic semi-statically secure distributed broadcast KEM.
//!
//! Setup publishes two element chains derived from an ephemeral exponent α:
//! the bare chain A_k = g^(α^k) for k ∈ [1, L] and the blinded chain
//! U_k = u^(α^k)·Y_k for k ∈ [1, 2L] with the single gap k = L + 1. The gap
//! element never appears in public; only Ω = e(g, U_{L+1}) survives, and the
//! session key is H(Ω^t). Users self-generate keys from the public chains, so
//! no authority ever holds user secrets; a public key carries enough
//! cross-terms for anyone to verify it against the chains with pairings
//! alone.
//!
//! All G_{p3} blinding factors are invisible to every pairing check by
//! orthogonality, which is what the validation equations and the
//! decapsulation identity rely on.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::groups::{Backend, GElem, GTElem, GroupParams, PrimeSubset, Scalar};
use crate::hashing::{self, HashKey};
use crate::serial::{ArtifactKind, Reader, Writer};
use num_bigint::BigUint;
use rand::RngCore;
use std::collections::{BTreeMap, BTreeSet};

/// Public parameters of the basic scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct PublicParams {
    pub(crate) group: GroupParams,
    pub(crate) slots: u32,
    pub(crate) g: GElem,
    pub(crate) blinder: GElem,
    pub(crate) a_chain: Vec<GElem>,
    pub(crate) u_chain: BTreeMap<u32, GElem>,
    pub(crate) omega: GTElem,
    pub(crate) hash_key: HashKey,
}

/// Setup ephemera. Dropped by `setup`; retained only by the transparent
/// setup in the games module, which needs the trapdoor to build
/// semi-functional artifacts.
#[derive(Debug, Clone)]
pub(crate) struct SetupTrapdoor {
    pub alpha: Scalar,
    pub u_elem: GElem,
    /// U_k for every k ∈ [1, 2L], including the gap element U_{L+1}.
    pub u_full: BTreeMap<u32, GElem>,
    /// The G_{p3} randomizers Y_k, k ∈ [1, 2L].
    pub y_rand: Vec<GElem>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UserSecretKey {
    pub index: u32,
    pub key: GElem,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UserPublicKey {
    pub index: u32,
    /// V_i = g^γ.
    pub commitment: GElem,
    /// V_{i,k} = U_k^γ·Ỹ_k for k ∈ [1, L] \ {L+1−i}.
    pub cross_terms: BTreeMap<u32, GElem>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CiphertextHeader {
    pub c1: GElem,
    pub c2: GElem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionKey(pub BitString);

impl SessionKey {
    pub fn to_hex(&self) -> String {
        self.0.to_hex()
    }
}

/// Runs setup and erases the trapdoor (α, u, the Y_k randomizers, and the
/// gap element U_{L+1} itself).
pub fn setup<R: RngCore>(
    rng: &mut R,
    group: GroupParams,
    slots: u32,
    lambda: u32,
) -> Result<PublicParams> {
    let (pp, _trapdoor) = setup_with_trapdoor(rng, group, slots, lambda)?;
    Ok(pp)
}

/// Draw order (part of the determinism contract): g, Y, α, u, Y_1..Y_{2L},
/// then the hash key.
pub(crate) fn setup_with_trapdoor<R: RngCore>(
    rng: &mut R,
    group: GroupParams,
    slots: u32,
    lambda: u32,
) -> Result<(PublicParams, SetupTrapdoor)> {
    if slots == 0 || slots > (1 << 24) {
        return Err(Error::InvalidParameter(format!(
            "slot count {slots} outside [1, 2^24]"
        )));
    }
    let g = group.random_subgroup_generator(rng, PrimeSubset::P1);
    let blinder = group.random_subgroup_generator(rng, PrimeSubset::P3);
    let alpha = group.random_scalar(rng);
    let u_elem = group.random_element(rng, PrimeSubset::P1);

    let mut y_rand = Vec::with_capacity(2 * slots as usize);
    for _ in 0..2 * slots {
        y_rand.push(group.random_element(rng, PrimeSubset::P3));
    }

    let mut a_chain = Vec::with_capacity(slots as usize);
    for k in 1..=slots {
        a_chain.push(group.g_exp(&g, &group.scalar_pow(&alpha, k))?);
    }

    let mut u_full = BTreeMap::new();
    for k in 1..=2 * slots {
        let bare = group.g_exp(&u_elem, &group.scalar_pow(&alpha, k))?;
        let blinded = group.g_mul(&bare, &y_rand[(k - 1) as usize])?;
        u_full.insert(k, blinded);
    }

    let omega = group.pair(&g, &u_full[&(slots + 1)])?;
    let hash_key = hashing::sample_hash_key(rng, &group, lambda)?;

    let mut u_chain = u_full.clone();
    u_chain.remove(&(slots + 1));

    let pp = PublicParams {
        group,
        slots,
        g,
        blinder,
        a_chain,
        u_chain,
        omega,
        hash_key,
    };
    debug_assert!(pp.check_consistency());
    let trapdoor = SetupTrapdoor {
        alpha,
        u_elem,
        u_full,
        y_rand,
    };
    Ok((pp, trapdoor))
}

impl PublicParams {
    pub fn group(&self) -> &GroupParams {
        &self.group
    }

    /// Number of key slots L.
    pub fn slots(&self) -> u32 {
        self.slots
    }

    pub fn lambda(&self) -> u32 {
        self.hash_key.lambda
    }

    pub fn generator(&self) -> &GElem {
        &self.g
    }

    pub fn blinder(&self) -> &GElem {
        &self.blinder
    }

    pub fn omega(&self) -> &GTElem {
        &self.omega
    }

    pub fn hash_key(&self) -> &HashKey {
        &self.hash_key
    }

    /// A_k with the convention A_0 = g.
    pub fn a(&self, k: u32) -> Result<&GElem> {
        if k == 0 {
            return Ok(&self.g);
        }
        self.a_chain
            .get((k - 1) as usize)
            .ok_or(Error::IndexOutOfRange {
                index: k,
                max: self.slots,
            })
    }

    /// U_k; defined exactly on [1, 2L] \ {L+1}.
    pub fn u(&self, k: u32) -> Result<&GElem> {
        self.u_chain.get(&k).ok_or(Error::IndexOutOfRange {
            index: k,
            max: 2 * self.slots,
        })
    }

    pub fn u_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.u_chain.keys().copied()
    }

    /// (G, G_T) element counts: (3L + 1, 1).
    pub fn element_count(&self) -> (usize, usize) {
        (2 + self.a_chain.len() + self.u_chain.len(), 1)
    }

    /// Pairing-checkable consistency of the published chains: the A-chain is
    /// a geometric progression over the same pairing ratio, the U-chain
    /// steps by that ratio across the gap-free range, and Ω matches
    /// e(U_L, A_1).
    pub fn check_consistency(&self) -> bool {
        let check = || -> Result<bool> {
            let pairing_ratio = |k: u32| -> Result<GTElem> { self.group.pair(self.a(k)?, &self.g) };
            for k in 1..=self.slots {
                let lhs = pairing_ratio(k)?;
                let rhs = self.group.pair(self.a(k - 1)?, self.a(1)?)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
            for k in 1..2 * self.slots {
                if k == self.slots || k == self.slots + 1 {
                    continue;
                }
                let lhs = self.group.pair(self.u(k)?, self.a(1)?)?;
                let rhs = self.group.pair(self.u(k + 1)?, &self.g)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
            let omega_check = self.group.pair(self.u(self.slots)?, self.a(1)?)?;
            Ok(omega_check == self.omega)
        };
        check().unwrap_or(false)
    }

    /// Replaces the U-chain (and the Ω that depends on its gap element).
    /// Used by the games module to install semi-functional chains.
    pub(crate) fn with_u_full(&self, u_full: &BTreeMap<u32, GElem>) -> Result<PublicParams> {
        let mut u_chain = u_full.clone();
        u_chain.remove(&(self.slots + 1));
        let omega = self.group.pair(&self.g, &u_full[&(self.slots + 1)])?;
        Ok(PublicParams {
            group: self.group.clone(),
            slots: self.slots,
            g: self.g.clone(),
            blinder: self.blinder.clone(),
            a_chain: self.a_chain.clone(),
            u_chain,
            omega,
            hash_key: self.hash_key.clone(),
        })
    }
}

/// Per-user key generation at slot `index`. Draw order: γ, then the L
/// fresh G_{p3} blinders (as exponents of the published Y).
pub fn gen_key<R: RngCore>(
    rng: &mut R,
    index: u32,
    pp: &PublicParams,
) -> Result<(UserSecretKey, UserPublicKey)> {
    if index == 0 || index > pp.slots {
        return Err(Error::IndexOutOfRange {
            index,
            max: pp.slots,
        });
    }
    let group = &pp.group;
    let gamma = group.random_scalar(rng);
    // Fresh blinders Ỹ_1..Ỹ_L; the one at the skipped cross-term index
    // L+1−i blinds the secret key instead.
    let mut fresh: Vec<GElem> = Vec::with_capacity(pp.slots as usize);
    for _ in 0..pp.slots {
        let r = group.random_scalar(rng);
        fresh.push(group.g_exp(&pp.blinder, &r)?);
    }

    let skip = pp.slots + 1 - index;
    let key = group.g_mul(
        &group.g_exp(pp.u(skip)?, &gamma)?,
        &fresh[(skip - 1) as usize],
    )?;
    let commitment = group.g_exp(&pp.g, &gamma)?;
    let mut cross_terms = BTreeMap::new();
    for k in 1..=pp.slots {
        if k == skip {
            continue;
        }
        let term = group.g_mul(&group.g_exp(pp.u(k)?, &gamma)?, &fresh[(k - 1) as usize])?;
        cross_terms.insert(k, term);
    }
    Ok((
        UserSecretKey { index, key },
        UserPublicKey {
            index,
            commitment,
            cross_terms,
        },
    ))
}

/// Public-key verification: T = e(V_j, U_L) must equal e(A_{L−k}, V_{j,k})
/// for every published cross-term, with A_0 = g. Returns the verdict;
/// structural defects (wrong index set) are errors, not a 0 verdict.
pub fn is_valid(index: u32, upk: &UserPublicKey, pp: &PublicParams) -> Result<bool> {
    if index == 0 || index > pp.slots {
        return Err(Error::IndexOutOfRange {
            index,
            max: pp.slots,
        });
    }
    if upk.index != index {
        return Err(Error::MalformedUpk(format!(
            "key labeled {} checked as {}",
            upk.index, index
        )));
    }
    let skip = pp.slots + 1 - index;
    let expected: BTreeSet<u32> = (1..=pp.slots).filter(|&k| k != skip).collect();
    let actual: BTreeSet<u32> = upk.cross_terms.keys().copied().collect();
    if expected != actual {
        return Err(Error::MalformedUpk(format!(
            "cross-term indices {actual:?}, expected {expected:?}"
        )));
    }
    let group = &pp.group;
    let t = group.pair(&upk.commitment, pp.u(pp.slots)?)?;
    for (&k, term) in &upk.cross_terms {
        let lhs = group.pair(pp.a(pp.slots - k)?, term)?;
        if lhs != t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Encapsulates to the (deduplicated) recipient set. Supplied public keys
/// are revalidated; `encaps_skip_validation` exists for benchmarking.
pub fn encaps<R: RngCore>(
    rng: &mut R,
    set: &BTreeSet<u32>,
    upks: &BTreeMap<u32, UserPublicKey>,
    pp: &PublicParams,
) -> Result<(CiphertextHeader, SessionKey)> {
    encaps_inner(rng, set, upks, pp, true)
}

pub fn encaps_skip_validation<R: RngCore>(
    rng: &mut R,
    set: &BTreeSet<u32>,
    upks: &BTreeMap<u32, UserPublicKey>,
    pp: &PublicParams,
) -> Result<(CiphertextHeader, SessionKey)> {
    encaps_inner(rng, set, upks, pp, false)
}

fn encaps_inner<R: RngCore>(
    rng: &mut R,
    set: &BTreeSet<u32>,
    upks: &BTreeMap<u32, UserPublicKey>,
    pp: &PublicParams,
    validate: bool,
) -> Result<(CiphertextHeader, SessionKey)> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let group = &pp.group;
    for &j in set {
        if j == 0 || j > pp.slots {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: pp.slots,
            });
        }
        let upk = upks.get(&j).ok_or(Error::MissingUpk(j))?;
        if validate && !is_valid(j, upk, pp)? {
            return Err(Error::InvalidUpk(j));
        }
    }
    let t = group.random_scalar(rng);
    let c1 = group.g_exp(&pp.g, &t)?;
    let mut product = pp.group.identity_g();
    for &j in set {
        let upk = &upks[&j];
        product = group.g_mul(&product, &group.g_mul(pp.a(j)?, &upk.commitment)?)?;
    }
    let c2 = group.g_exp(&product, &t)?;
    let shared = group.gt_exp(&pp.omega, &t)?;
    let key = SessionKey(pp.hash_key.hash_gt(group, &shared)?);
    Ok((CiphertextHeader { c1, c2 }, key))
}

/// Decapsulation. Returns `None` (⊥) when `index` is not in the set. The
/// caller's secret key is used as-is: a key for a different slot produces a
/// mismatching session key, as the scheme intends.
pub fn decaps(
    set: &BTreeSet<u32>,
    header: &CiphertextHeader,
    index: u32,
    usk: &UserSecretKey,
    upks: &BTreeMap<u32, UserPublicKey>,
    pp: &PublicParams,
) -> Result<Option<SessionKey>> {
    if !set.contains(&index) {
        return Ok(None);
    }
    let group = &pp.group;
    let pos = pp.slots + 1 - index;
    let d2 = pp.u(pos)?;
    let mut d3 = group.identity_g();
    for &j in set {
        if j == index {
            continue;
        }
        let upk = upks.get(&j).ok_or(Error::MissingUpk(j))?;
        let shifted = pp.slots + 1 - index + j;
        // Index audit: the shifted position never lands on the gap L+1 and
        // the cross-term position never hits a key's own skipped index.
        assert_ne!(shifted, pp.slots + 1, "gap element referenced");
        assert_ne!(pos, pp.slots + 1 - j, "skipped cross-term referenced");
        let term = upk
            .cross_terms
            .get(&pos)
            .ok_or_else(|| Error::MalformedUpk(format!("key {j} lacks cross-term {pos}")))?;
        d3 = group.g_mul(&d3, &group.g_mul(pp.u(shifted)?, term)?)?;
    }
    let numer = group.pair(&header.c2, d2)?;
    let denom = group.pair(&header.c1, &group.g_mul(&usk.key, &d3)?)?;
    let shared = group.gt_mul(&numer, &group.gt_inv(&denom)?)?;
    Ok(Some(SessionKey(pp.hash_key.hash_gt(group, &shared)?)))
}

// ---- serialization ----------------------------------------------------------

impl PublicParams {
    pub(crate) fn write_group(&self, w: &mut Writer) {
        let group = &self.group;
        w.uint(group.modulus());
        for i in 1..=3u8 {
            w.uint(group.factor(i));
        }
        match group.curve() {
            Some(c) => {
                w.u8(1);
                w.uint(&c.p);
                w.uint(&c.cofactor);
                w.lp(&self.group.encode_g(&GElem::Curve(c.base.clone())).unwrap());
            }
            None => w.u8(0),
        }
    }

    pub(crate) fn read_group(r: &mut Reader<'_>, backend: Backend) -> Result<GroupParams> {
        let n = r.uint()?;
        let p1 = r.uint()?;
        let p2 = r.uint()?;
        let p3 = r.uint()?;
        let group = GroupParams::from_primes(backend, &p1, &p2, &p3)?;
        if group.modulus() != &n {
            return Err(Error::MalformedEncoding("modulus/factor mismatch".into()));
        }
        let has_curve = r.u8()? == 1;
        match (has_curve, group.curve()) {
            (true, Some(c)) => {
                let p = r.uint()?;
                let h = r.uint()?;
                let base = r.lp()?;
                // The curve is rederived from the primes; the stored copy
                // must agree bit for bit.
                if p != c.p || h != c.cofactor {
                    return Err(Error::MalformedEncoding(
                        "stored curve disagrees with derivation".into(),
                    ));
                }
                let decoded = group.decode_g(base)?;
                if decoded != GElem::Curve(c.base.clone()) {
                    return Err(Error::MalformedEncoding(
                        "stored base point disagrees with derivation".into(),
                    ));
                }
            }
            (false, None) => {}
            _ => return Err(Error::MalformedEncoding("backend/curve mismatch".into())),
        }
        Ok(group)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.to_bytes_kind(ArtifactKind::PublicParamsSs)
    }

    pub(crate) fn to_bytes_kind(&self, kind: ArtifactKind) -> Vec<u8> {
        let mut w = Writer::container(kind, self.group.backend().tag(), self.slots, self.lambda());
        self.write_group(&mut w);
        w.lp(&self.group.encode_g(&self.g).unwrap());
        w.lp(&self.group.encode_g(&self.blinder).unwrap());
        w.u32(self.a_chain.len() as u32);
        for a in &self.a_chain {
            w.lp(&self.group.encode_g(a).unwrap());
        }
        w.u32(self.u_chain.len() as u32);
        for (&k, u) in &self.u_chain {
            w.u32(k);
            w.lp(&self.group.encode_g(u).unwrap());
        }
        w.lp(&self.group.encode_gt(&self.omega).unwrap());
        w.uint(&self.hash_key.modulus);
        w.uint(&self.hash_key.a);
        w.uint(&self.hash_key.b);
        w.uint(&BigUint::from(self.hash_key.lambda));
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<PublicParams> {
        Self::from_bytes_kind(bytes, ArtifactKind::PublicParamsSs)
    }

    pub(crate) fn from_bytes_kind(bytes: &[u8], kind: ArtifactKind) -> Result<PublicParams> {
        let (hdr, mut r) = Reader::container(bytes, kind)?;
        let backend = Backend::from_tag(hdr.backend_tag)?;
        let group = Self::read_group(&mut r, backend)?;
        let slots = hdr.users;
        let g = group.decode_g(r.lp()?)?;
        let blinder = group.decode_g(r.lp()?)?;
        let a_len = r.u32()?;
        if a_len != slots {
            return Err(Error::MalformedEncoding(format!(
                "A-chain length {a_len} != {slots}"
            )));
        }
        let mut a_chain = Vec::with_capacity(a_len as usize);
        for _ in 0..a_len {
            a_chain.push(group.decode_g(r.lp()?)?);
        }
        let u_len = r.u32()?;
        if u_len != 2 * slots - 1 {
            return Err(Error::MalformedEncoding(format!(
                "U-chain length {u_len} != {}",
                2 * slots - 1
            )));
        }
        let mut u_chain = BTreeMap::new();
        for _ in 0..u_len {
            let k = r.u32()?;
            if k == 0 || k > 2 * slots || k == slots + 1 || u_chain.contains_key(&k) {
                return Err(Error::MalformedEncoding(format!("U-chain index {k}")));
            }
            u_chain.insert(k, group.decode_g(r.lp()?)?);
        }
        let omega = group.decode_gt(r.lp()?)?;
        let lambda_field = |v: BigUint| -> Result<u32> {
            u32::try_from(&v).map_err(|_| Error::MalformedEncoding("lambda width".into()))
        };
        let hash_key = HashKey {
            modulus: r.uint()?,
            a: r.uint()?,
            b: r.uint()?,
            lambda: lambda_field(r.uint()?)?,
        };
        if hash_key.lambda != hdr.lambda {
            return Err(Error::MalformedEncoding("lambda mismatch".into()));
        }
        r.finish()?;
        let pp = PublicParams {
            group,
            slots,
            g,
            blinder,
            a_chain,
            u_chain,
            omega,
            hash_key,
        };
        // Type invariant: the published chains must satisfy the pairing
        // consistency relations (semi-functional chains still do, by
        // orthogonality, so this only rejects genuinely corrupt data).
        if !pp.check_consistency() {
            return Err(Error::MalformedEncoding(
                "chain consistency check failed".into(),
            ));
        }
        Ok(pp)
    }

    /// 256-bit digest of the canonical serialization; binds directories to
    /// one setup.
    pub fn digest(&self) -> [u8; 32] {
        use sha2::{Digest, Sha256};
        Sha256::digest(self.to_bytes()).into()
    }
}

impl UserSecretKey {
    /// Exactly one group element, whatever L is.
    pub fn element_count(&self) -> usize {
        1
    }

    pub fn to_bytes(&self, pp: &PublicParams) -> Vec<u8> {
        let mut w = Writer::container(
            ArtifactKind::UserSecretKey,
            pp.group.backend().tag(),
            pp.slots,
            pp.lambda(),
        );
        w.u32(self.index);
        w.lp(&pp.group.encode_g(&self.key).unwrap());
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8], pp: &PublicParams) -> Result<UserSecretKey> {
        let (hdr, mut r) = Reader::container(bytes, ArtifactKind::UserSecretKey)?;
        check_binding(&hdr, pp)?;
        let index = r.u32()?;
        let key = pp.group.decode_g(r.lp()?)?;
        r.finish()?;
        Ok(UserSecretKey { index, key })
    }
}

impl UserPublicKey {
    /// Number of G elements: 1 + (L − 1) = L.
    pub fn element_count(&self) -> usize {
        1 + self.cross_terms.len()
    }

    pub fn to_bytes(&self, pp: &PublicParams) -> Vec<u8> {
        let mut w = Writer::container(
            ArtifactKind::UserPublicKey,
            pp.group.backend().tag(),
            pp.slots,
            pp.lambda(),
        );
        w.u32(self.index);
        w.lp(&pp.group.encode_g(&self.commitment).unwrap());
        w.u32(self.cross_terms.len() as u32);
        for (&k, term) in &self.cross_terms {
            w.u32(k);
            w.lp(&pp.group.encode_g(term).unwrap());
        }
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8], pp: &PublicParams) -> Result<UserPublicKey> {
        let (hdr, mut r) = Reader::container(bytes, ArtifactKind::UserPublicKey)?;
        check_binding(&hdr, pp)?;
        let index = r.u32()?;
        let commitment = pp.group.decode_g(r.lp()?)?;
        let count = r.u32()?;
        let mut cross_terms = BTreeMap::new();
        for _ in 0..count {
            let k = r.u32()?;
            if cross_terms.contains_key(&k) {
                return Err(Error::MalformedEncoding(format!(
                    "duplicate cross-term {k}"
                )));
            }
            cross_terms.insert(k, pp.group.decode_g(r.lp()?)?);
        }
        r.finish()?;
        Ok(UserPublicKey {
            index,
            commitment,
            cross_terms,
        })
    }
}

impl CiphertextHeader {
    /// Always exactly 2 group elements, whatever the recipient set size.
    pub fn element_count(&self) -> usize {
        2
    }

    pub fn to_bytes(&self, pp: &PublicParams) -> Vec<u8> {
        let mut w = Writer::container(
            ArtifactKind::HeaderSs,
            pp.group.backend().tag(),
            pp.slots,
            pp.lambda(),
        );
        w.lp(&pp.group.encode_g(&self.c1).unwrap());
        w.lp(&pp.group.encode_g(&self.c2).unwrap());
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8], pp: &PublicParams) -> Result<CiphertextHeader> {
        let (hdr, mut r) = Reader::container(bytes, ArtifactKind::HeaderSs)?;
        check_binding(&hdr, pp)?;
        let c1 = pp.group.decode_g(r.lp()?)?;
        let c2 = pp.group.decode_g(r.lp()?)?;
        r.finish()?;
        Ok(CiphertextHeader { c1, c2 })
    }
}

fn check_binding(hdr: &crate::serial::ContainerHeader, pp: &PublicParams) -> Result<()> {
    if hdr.backend_tag != pp.group.backend().tag() {
        return Err(Error::BackendMismatch);
    }
    if hdr.users != pp.slots || hdr.lambda != pp.lambda() {
        return Err(Error::MalformedEncoding(format!(
            "artifact for L={} lambda={}, parameters have L={} lambda={}",
            hdr.users,
            hdr.lambda,
            pp.slots,
            pp.lambda()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
