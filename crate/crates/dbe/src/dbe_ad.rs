//! The adaptively secure scheme: a doubling transform over the basic one.
//!
//! Every logical user i owns two slots 2i−1 and 2i of a basic instance with
//! 2L slots, publishes public keys for both, and keeps the secret key for
//! only one of them, chosen by a private bit u. Encapsulation splits the
//! recipient set into two random complementary slot sets S₀ and S₁ by
//! per-user bits z_j, encapsulates to each, and wraps one uniform session
//! key under both branch keys with the one-time pad. A receiver follows the
//! branch whose slot assignment matches its private bit, so exactly one of
//! the two wrapped copies is always openable.

use crate::bits::BitString;
use crate::dbe_ss::{
    self, CiphertextHeader, PublicParams, SessionKey, UserPublicKey, UserSecretKey,
};
use crate::error::{Error, Result};
use crate::groups::GroupParams;
use crate::serial::{ArtifactKind, Reader, Writer};
use crate::ske::{self, SkeCiphertext, SkeKey};
use rand::RngCore;
use std::collections::{BTreeMap, BTreeSet};

/// Public parameters: a basic instance with twice the slots, plus the
/// logical user count.
#[derive(Debug, Clone, PartialEq)]
pub struct AdPublicParams {
    pub(crate) ss: PublicParams,
    pub(crate) users: u32,
}

/// Public half of a user key: basic public keys for both owned slots.
#[derive(Debug, Clone, PartialEq)]
pub struct AdUserPublicKey {
    pub index: u32,
    /// Slot 2i.
    pub even: UserPublicKey,
    /// Slot 2i−1.
    pub odd: UserPublicKey,
}

/// Full key material a user retains: the private slot bit and the single
/// kept basic secret key. The discarded slot's secret key never leaves
/// `gen_key`; dropping the buffer is best-effort erasure (the big-integer
/// type offers no in-place wipe).
#[derive(Debug, Clone, PartialEq)]
pub struct AdKeyPair {
    pub index: u32,
    /// The secret bit u; the kept basic key sits at slot 2i − u.
    pub slot_bit: u8,
    pub secret: UserSecretKey,
    pub public: AdUserPublicKey,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdCiphertextHeader {
    pub header0: CiphertextHeader,
    pub header1: CiphertextHeader,
    pub wrap0: SkeCiphertext,
    pub wrap1: SkeCiphertext,
    /// z_j for every j in the recipient set.
    pub mask: BTreeMap<u32, u8>,
}

impl AdPublicParams {
    pub fn basic(&self) -> &PublicParams {
        &self.ss
    }

    /// Logical user count L; the embedded basic instance has 2L slots.
    pub fn users(&self) -> u32 {
        self.users
    }

    pub fn lambda(&self) -> u32 {
        self.ss.lambda()
    }

    pub fn group(&self) -> &GroupParams {
        self.ss.group()
    }

    /// (G, G_T) element counts: (3·(2L) + 1, 1).
    pub fn element_count(&self) -> (usize, usize) {
        self.ss.element_count()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::container(
            ArtifactKind::PublicParamsAd,
            self.ss.group().backend().tag(),
            self.users,
            self.lambda(),
        );
        w.lp(&self.ss.to_bytes());
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<AdPublicParams> {
        let (hdr, mut r) = Reader::container(bytes, ArtifactKind::PublicParamsAd)?;
        let ss = PublicParams::from_bytes(r.lp()?)?;
        r.finish()?;
        if ss.slots() != 2 * hdr.users {
            return Err(Error::MalformedEncoding(format!(
                "basic instance has {} slots for {} users",
                ss.slots(),
                hdr.users
            )));
        }
        Ok(AdPublicParams {
            ss,
            users: hdr.users,
        })
    }

    pub fn digest(&self) -> [u8; 32] {
        use sha2::{Digest, Sha256};
        Sha256::digest(self.to_bytes()).into()
    }
}

/// Delegates to the basic setup with 2L slots.
pub fn setup<R: RngCore>(
    rng: &mut R,
    group: GroupParams,
    users: u32,
    lambda: u32,
) -> Result<AdPublicParams> {
    if users == 0 || users > (1 << 23) {
        return Err(Error::InvalidParameter(format!(
            "user count {users} outside [1, 2^23]"
        )));
    }
    let ss = dbe_ss::setup(rng, group, 2 * users, lambda)?;
    Ok(AdPublicParams { ss, users })
}

/// Key generation: basic keys at slots 2i and 2i−1 (in that order), then a
/// random bit u decides which secret survives.
pub fn gen_key<R: RngCore>(rng: &mut R, index: u32, pp: &AdPublicParams) -> Result<AdKeyPair> {
    let (even_pair, odd_pair) = gen_both(rng, index, pp)?;
    let bit = (rng.next_u32() & 1) as u8;
    Ok(assemble(index, bit, even_pair, odd_pair))
}

/// Same as `gen_key` with the slot bit pinned; used by tests and harnesses
/// that must exercise both branches.
pub fn gen_key_with_bit<R: RngCore>(
    rng: &mut R,
    index: u32,
    pp: &AdPublicParams,
    bit: u8,
) -> Result<AdKeyPair> {
    let (even_pair, odd_pair) = gen_both(rng, index, pp)?;
    Ok(assemble(index, bit & 1, even_pair, odd_pair))
}

type SsPair = (UserSecretKey, UserPublicKey);

fn gen_both<R: RngCore>(rng: &mut R, index: u32, pp: &AdPublicParams) -> Result<(SsPair, SsPair)> {
    if index == 0 || index > pp.users {
        return Err(Error::IndexOutOfRange {
            index,
            max: pp.users,
        });
    }
    let even = dbe_ss::gen_key(rng, 2 * index, &pp.ss)?;
    let odd = dbe_ss::gen_key(rng, 2 * index - 1, &pp.ss)?;
    Ok((even, odd))
}

fn assemble(index: u32, bit: u8, even: SsPair, odd: SsPair) -> AdKeyPair {
    let (even_sk, even_pk) = even;
    let (odd_sk, odd_pk) = odd;
    // Keep 2i − u; the other secret key is dropped here and never stored.
    let secret = if bit == 0 { even_sk } else { odd_sk };
    AdKeyPair {
        index,
        slot_bit: bit,
        secret,
        public: AdUserPublicKey {
            index,
            even: even_pk,
            odd: odd_pk,
        },
    }
}

/// Validation of a doubled key: both embedded basic keys must verify at
/// their respective slots.
pub fn is_valid(index: u32, upk: &AdUserPublicKey, pp: &AdPublicParams) -> Result<bool> {
    if index == 0 || index > pp.users {
        return Err(Error::IndexOutOfRange {
            index,
            max: pp.users,
        });
    }
    if upk.index != index || upk.even.index != 2 * index || upk.odd.index != 2 * index - 1 {
        return Err(Error::MalformedUpk(format!(
            "slot labels ({}, {}) for user {}",
            upk.even.index, upk.odd.index, upk.index
        )));
    }
    Ok(dbe_ss::is_valid(2 * index, &upk.even, &pp.ss)?
        && dbe_ss::is_valid(2 * index - 1, &upk.odd, &pp.ss)?)
}

/// S₀ = {2j − z_j}, S₁ = {2j − (1 − z_j)}: complementary slot sets.
pub fn split_sets(set: &BTreeSet<u32>, mask: &BTreeMap<u32, u8>) -> (BTreeSet<u32>, BTreeSet<u32>) {
    let mut s0 = BTreeSet::new();
    let mut s1 = BTreeSet::new();
    for &j in set {
        let z = mask.get(&j).copied().unwrap_or(0) & 1;
        s0.insert(2 * j - u32::from(z));
        s1.insert(2 * j - u32::from(1 - z));
    }
    (s0, s1)
}

fn slot_upks(
    set: &BTreeSet<u32>,
    upks: &BTreeMap<u32, AdUserPublicKey>,
    slots: &BTreeSet<u32>,
) -> Result<BTreeMap<u32, UserPublicKey>> {
    let mut out = BTreeMap::new();
    for &j in set {
        let upk = upks.get(&j).ok_or(Error::MissingUpk(j))?;
        for &slot in [2 * j, 2 * j - 1].iter() {
            if slots.contains(&slot) {
                let half = if slot == 2 * j { &upk.even } else { &upk.odd };
                out.insert(slot, half.clone());
            }
        }
    }
    Ok(out)
}

/// Encapsulation. Draw order: one z bit per recipient in ascending index
/// order, the two basic encapsulations, then the wrapped session key.
pub fn encaps<R: RngCore>(
    rng: &mut R,
    set: &BTreeSet<u32>,
    upks: &BTreeMap<u32, AdUserPublicKey>,
    pp: &AdPublicParams,
) -> Result<(AdCiphertextHeader, SessionKey)> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    for &j in set {
        if j == 0 || j > pp.users {
            return Err(Error::IndexOutOfRange {
                index: j,
                max: pp.users,
            });
        }
        let upk = upks.get(&j).ok_or(Error::MissingUpk(j))?;
        if !is_valid(j, upk, pp)? {
            return Err(Error::InvalidUpk(j));
        }
    }
    let mut mask = BTreeMap::new();
    for &j in set {
        mask.insert(j, (rng.next_u32() & 1) as u8);
    }
    encaps_with_mask(rng, set, upks, pp, &mask)
}

/// Encapsulation with the z assignment pinned. Public keys must already be
/// validated by the caller when entering through this door.
pub fn encaps_with_mask<R: RngCore>(
    rng: &mut R,
    set: &BTreeSet<u32>,
    upks: &BTreeMap<u32, AdUserPublicKey>,
    pp: &AdPublicParams,
    mask: &BTreeMap<u32, u8>,
) -> Result<(AdCiphertextHeader, SessionKey)> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if mask.keys().copied().collect::<BTreeSet<u32>>() != *set {
        return Err(Error::InvalidParameter(
            "mask domain must equal the recipient set".into(),
        ));
    }
    let (s0, s1) = split_sets(set, mask);
    let upks0 = slot_upks(set, upks, &s0)?;
    let upks1 = slot_upks(set, upks, &s1)?;
    // The halves were validated as a pair above (or by the caller); the
    // basic encapsulation revalidates each half at its own slot anyway.
    let (header0, branch_key0) = dbe_ss::encaps(rng, &s0, &upks0, &pp.ss)?;
    let (header1, branch_key1) = dbe_ss::encaps(rng, &s1, &upks1, &pp.ss)?;
    let session = BitString::random(rng, pp.lambda());
    let wrap0 = ske::encrypt(&SkeKey(branch_key0.0), &session)?;
    let wrap1 = ske::encrypt(&SkeKey(branch_key1.0), &session)?;
    Ok((
        AdCiphertextHeader {
            header0,
            header1,
            wrap0,
            wrap1,
            mask: mask.clone(),
        },
        SessionKey(session),
    ))
}

/// Decapsulation: pick the branch whose slot assignment matches the private
/// bit, decapsulate the basic header at slot 2i − u, and unwrap.
pub fn decaps(
    set: &BTreeSet<u32>,
    header: &AdCiphertextHeader,
    index: u32,
    keypair: &AdKeyPair,
    upks: &BTreeMap<u32, AdUserPublicKey>,
    pp: &AdPublicParams,
) -> Result<Option<SessionKey>> {
    if !set.contains(&index) {
        return Ok(None);
    }
    // The mask's domain must be exactly the transmitted set.
    if header.mask.keys().copied().collect::<BTreeSet<u32>>() != *set {
        return Err(Error::MalformedEncoding(
            "mask domain must equal the recipient set".into(),
        ));
    }
    let z_i = header.mask[&index] & 1;
    let branch = if z_i == keypair.slot_bit { 0 } else { 1 };
    let (s0, s1) = split_sets(set, &header.mask);
    let (slots, ss_header, wrapped) = if branch == 0 {
        (&s0, &header.header0, &header.wrap0)
    } else {
        (&s1, &header.header1, &header.wrap1)
    };
    let own_slot = 2 * index - u32::from(keypair.slot_bit);
    // The transform's correctness core: the kept slot always lands in the
    // selected branch set.
    assert!(
        slots.contains(&own_slot),
        "branch selection must cover the kept slot"
    );
    let branch_upks = slot_upks(set, upks, slots)?;
    let branch_key = match dbe_ss::decaps(
        slots,
        ss_header,
        own_slot,
        &keypair.secret,
        &branch_upks,
        &pp.ss,
    )? {
        Some(k) => k,
        None => return Ok(None),
    };
    let session = ske::decrypt(&SkeKey(branch_key.0), wrapped)?;
    Ok(Some(SessionKey(session)))
}

// ---- serialization ----------------------------------------------------------

impl AdUserPublicKey {
    pub fn element_count(&self) -> usize {
        self.even.element_count() + self.odd.element_count()
    }

    pub fn to_bytes(&self, pp: &AdPublicParams) -> Vec<u8> {
        let mut w = Writer::container(
            ArtifactKind::AdPublicKey,
            pp.ss.group().backend().tag(),
            pp.users,
            pp.lambda(),
        );
        w.u32(self.index);
        w.lp(&self.even.to_bytes(&pp.ss));
        w.lp(&self.odd.to_bytes(&pp.ss));
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8], pp: &AdPublicParams) -> Result<AdUserPublicKey> {
        let (hdr, mut r) = Reader::container(bytes, ArtifactKind::AdPublicKey)?;
        if hdr.users != pp.users {
            return Err(Error::MalformedEncoding("user count mismatch".into()));
        }
        let index = r.u32()?;
        let even = UserPublicKey::from_bytes(r.lp()?, &pp.ss)?;
        let odd = UserPublicKey::from_bytes(r.lp()?, &pp.ss)?;
        r.finish()?;
        Ok(AdUserPublicKey { index, even, odd })
    }
}

impl AdKeyPair {
    pub fn to_bytes(&self, pp: &AdPublicParams) -> Vec<u8> {
        let mut w = Writer::container(
            ArtifactKind::AdSecretKey,
            pp.ss.group().backend().tag(),
            pp.users,
            pp.lambda(),
        );
        w.u32(self.index);
        w.u8(self.slot_bit);
        w.lp(&self.secret.to_bytes(&pp.ss));
        w.lp(&self.public.to_bytes(pp));
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8], pp: &AdPublicParams) -> Result<AdKeyPair> {
        let (hdr, mut r) = Reader::container(bytes, ArtifactKind::AdSecretKey)?;
        if hdr.users != pp.users {
            return Err(Error::MalformedEncoding("user count mismatch".into()));
        }
        let index = r.u32()?;
        let slot_bit = r.u8()? & 1;
        let secret = UserSecretKey::from_bytes(r.lp()?, &pp.ss)?;
        let public = AdUserPublicKey::from_bytes(r.lp()?, pp)?;
        r.finish()?;
        Ok(AdKeyPair {
            index,
            slot_bit,
            secret,
            public,
        })
    }
}

impl AdCiphertextHeader {
    /// Group elements only; the bit payload is 2λ wrapped-key bits plus one
    /// mask bit per recipient.
    pub fn element_count(&self) -> usize {
        self.header0.element_count() + self.header1.element_count()
    }

    pub fn bit_payload(&self, lambda: u32) -> usize {
        2 * lambda as usize + self.mask.len()
    }

    pub fn to_bytes(&self, pp: &AdPublicParams) -> Vec<u8> {
        let mut w = Writer::container(
            ArtifactKind::HeaderAd,
            pp.ss.group().backend().tag(),
            pp.users,
            pp.lambda(),
        );
        w.lp(&self.header0.to_bytes(&pp.ss));
        w.lp(&self.header1.to_bytes(&pp.ss));
        w.lp(self.wrap0.0.as_bytes());
        w.lp(self.wrap1.0.as_bytes());
        w.u32(self.mask.len() as u32);
        for &j in self.mask.keys() {
            w.u32(j);
        }
        // z bits packed MSB-first in ascending index order.
        let mut bitmap = vec![0u8; self.mask.len().div_ceil(8)];
        for (pos, (_, &z)) in self.mask.iter().enumerate() {
            if z & 1 == 1 {
                bitmap[pos / 8] |= 0x80 >> (pos % 8);
            }
        }
        w.lp(&bitmap);
        w.finish()
    }

    pub fn from_bytes(bytes: &[u8], pp: &AdPublicParams) -> Result<AdCiphertextHeader> {
        let (hdr, mut r) = Reader::container(bytes, ArtifactKind::HeaderAd)?;
        if hdr.users != pp.users || hdr.lambda != pp.lambda() {
            return Err(Error::MalformedEncoding(
                "parameter binding mismatch".into(),
            ));
        }
        let header0 = CiphertextHeader::from_bytes(r.lp()?, &pp.ss)?;
        let header1 = CiphertextHeader::from_bytes(r.lp()?, &pp.ss)?;
        let wrap0 = SkeCiphertext(BitString::from_bytes(pp.lambda(), r.lp()?)?);
        let wrap1 = SkeCiphertext(BitString::from_bytes(pp.lambda(), r.lp()?)?);
        let count = r.u32()? as usize;
        let mut indices = Vec::with_capacity(count);
        for _ in 0..count {
            indices.push(r.u32()?);
        }
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::MalformedEncoding(
                "recipient indices must be strictly ascending".into(),
            ));
        }
        let bitmap = r.lp()?;
        if bitmap.len() != count.div_ceil(8) {
            return Err(Error::MalformedEncoding("bitmap length".into()));
        }
        let mut mask = BTreeMap::new();
        for (pos, &j) in indices.iter().enumerate() {
            let z = (bitmap[pos / 8] >> (7 - pos % 8)) & 1;
            mask.insert(j, z);
        }
        r.finish()?;
        Ok(AdCiphertextHeader {
            header0,
            header1,
            wrap0,
            wrap1,
            mask,
        })
    }
}
