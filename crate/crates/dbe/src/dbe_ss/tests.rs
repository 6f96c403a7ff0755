use super::*;
use crate::groups::Backend;
use crate::rng::{seeded_rng, ConstRng};
use num_traits::Zero;

fn toy_group(backend: Backend) -> GroupParams {
    GroupParams::from_primes(
        backend,
        &BigUint::from(5u8),
        &BigUint::from(7u8),
        &BigUint::from(11u8),
    )
    .unwrap()
}

fn keys_for_all<R: RngCore>(
    rng: &mut R,
    pp: &PublicParams,
) -> (BTreeMap<u32, UserSecretKey>, BTreeMap<u32, UserPublicKey>) {
    let mut sks = BTreeMap::new();
    let mut pks = BTreeMap::new();
    for i in 1..=pp.slots() {
        let (sk, pk) = gen_key(rng, i, pp).unwrap();
        sks.insert(i, sk);
        pks.insert(i, pk);
    }
    (sks, pks)
}

fn subsets(l: u32) -> Vec<BTreeSet<u32>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << l) {
        out.push((1..=l).filter(|i| mask & (1 << (i - 1)) != 0).collect());
    }
    out
}

#[test]
fn setup_element_inventory() {
    // L = 4: 2 generators + 4 chain elements + 7 blinded chain elements
    // = 13 G elements, plus 1 GT element.
    let mut rng = seeded_rng(b"inventory");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 4, 16).unwrap();
    assert_eq!(pp.element_count(), (13, 1));
    assert_eq!(pp.element_count().0 as u32, 3 * 4 + 1);
}

#[test]
fn smallest_instance_has_single_gap() {
    let mut rng = seeded_rng(b"L1");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 1, 16).unwrap();
    let keys: Vec<u32> = pp.u_indices().collect();
    assert_eq!(keys, vec![1]);
    assert!(pp.a(1).is_ok());
    assert!(pp.u(2).is_err());
}

#[test]
fn consistency_chain_holds_on_both_backends() {
    for backend in [Backend::Symbolic, Backend::Curve] {
        let mut rng = seeded_rng(b"consistency");
        let pp = setup(&mut rng, toy_group(backend), 3, 16).unwrap();
        assert!(pp.check_consistency(), "{backend:?}");
    }
}

#[test]
fn setup_chains_match_symbolic_oracle() {
    // With the trapdoor visible, recompute both chains from exponent
    // arithmetic and compare term by term.
    let group = toy_group(Backend::Symbolic);
    let n = group.modulus().clone();
    let mut rng = seeded_rng(b"oracle");
    let (pp, td) = setup_with_trapdoor(&mut rng, group.clone(), 3, 16).unwrap();
    let g_exp = pp.generator().symbolic_exponent().unwrap().clone();
    let u_exp = td.u_elem.symbolic_exponent().unwrap().clone();
    let alpha = td.alpha.value().clone();
    for k in 1..=3u32 {
        let want = (&g_exp * alpha.modpow(&BigUint::from(k), &n)) % &n;
        assert_eq!(pp.a(k).unwrap().symbolic_exponent().unwrap(), &want);
    }
    for k in 1..=6u32 {
        if k == 4 {
            continue;
        }
        let y_exp = td.y_rand[(k - 1) as usize].symbolic_exponent().unwrap();
        let want = (&u_exp * alpha.modpow(&BigUint::from(k), &n) + y_exp) % &n;
        assert_eq!(pp.u(k).unwrap().symbolic_exponent().unwrap(), &want);
    }
    // Omega = e(g, U_{L+1}): exponent product of g and the gap element.
    let gap_exp = td.u_full[&4].symbolic_exponent().unwrap();
    let want_omega = (&g_exp * gap_exp) % &n;
    assert_eq!(pp.omega().symbolic_exponent().unwrap(), &want_omega);
}

#[test]
fn honest_keys_validate() {
    for backend in [Backend::Symbolic, Backend::Curve] {
        let mut rng = seeded_rng(b"honest");
        let pp = setup(&mut rng, toy_group(backend), 4, 16).unwrap();
        for i in 1..=4 {
            let (_, pk) = gen_key(&mut rng, i, &pp).unwrap();
            assert!(is_valid(i, &pk, &pp).unwrap());
        }
    }
}

#[test]
fn keygen_commitment_matches_drawn_exponent() {
    // The first scalar gen_key draws is γ; replaying the rng clone gives an
    // independent prediction of V = g^γ.
    let group = toy_group(Backend::Symbolic);
    let mut rng = seeded_rng(b"gamma");
    let pp = setup(&mut rng, group.clone(), 2, 16).unwrap();
    let mut probe = rng.clone();
    let gamma = pp.group().random_scalar(&mut probe);
    let (_, pk) = gen_key(&mut rng, 1, &pp).unwrap();
    let g_exp = pp.generator().symbolic_exponent().unwrap();
    let want = (g_exp * gamma.value()) % pp.group().modulus();
    assert_eq!(pk.commitment.symbolic_exponent().unwrap(), &want);
}

#[test]
fn keygen_index_bounds() {
    let mut rng = seeded_rng(b"bounds");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 3, 16).unwrap();
    assert!(matches!(
        gen_key(&mut rng, 4, &pp),
        Err(Error::IndexOutOfRange { index: 4, max: 3 })
    ));
    assert!(matches!(
        gen_key(&mut rng, 0, &pp),
        Err(Error::IndexOutOfRange { index: 0, max: 3 })
    ));
}

#[test]
fn tampered_key_detected_blinded_key_accepted() {
    // Tamper detection needs the chain exponent nonzero mod p1; desk-scale
    // primes make the failure probability negligible.
    for backend in [Backend::Symbolic, Backend::Curve] {
        let group = GroupParams::generate(backend, 16, b"tamper-group").unwrap();
        let mut rng = seeded_rng(b"tamper");
        let pp = setup(&mut rng, group, 4, 16).unwrap();
        let (_, pk) = gen_key(&mut rng, 2, &pp).unwrap();
        let group = pp.group();

        // Multiplying a cross-term by g lands outside G_{p3} and must trip
        // the pairing check.
        let mut tampered = pk.clone();
        let k = *tampered.cross_terms.keys().next().unwrap();
        let hit = group
            .g_mul(&tampered.cross_terms[&k], pp.generator())
            .unwrap();
        tampered.cross_terms.insert(k, hit);
        assert!(!is_valid(2, &tampered, &pp).unwrap());

        // G_{p3} reblinding is invisible to the checks.
        let mut blinded = pk.clone();
        let y = group.random_element(&mut rng, crate::groups::PrimeSubset::P3);
        let re = group.g_mul(&blinded.cross_terms[&k], &y).unwrap();
        blinded.cross_terms.insert(k, re);
        assert!(is_valid(2, &blinded, &pp).unwrap());
    }
}

#[test]
fn wrong_index_set_is_malformed_not_invalid() {
    let mut rng = seeded_rng(b"shape");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 3, 16).unwrap();
    let (_, mut pk) = gen_key(&mut rng, 1, &pp).unwrap();
    let k = *pk.cross_terms.keys().next().unwrap();
    pk.cross_terms.remove(&k);
    assert!(matches!(is_valid(1, &pk, &pp), Err(Error::MalformedUpk(_))));
}

#[test]
fn header_is_two_elements_for_any_set() {
    let mut rng = seeded_rng(b"header-size");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 4, 16).unwrap();
    let (_, pks) = keys_for_all(&mut rng, &pp);
    for set in subsets(4) {
        let (header, _) = encaps(&mut rng, &set, &pks, &pp).unwrap();
        assert_eq!(header.element_count(), 2);
    }
}

#[test]
fn forced_zero_exponent_gives_identity_header() {
    let mut rng = seeded_rng(b"t0");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 2, 16).unwrap();
    let (_, pks) = keys_for_all(&mut rng, &pp);
    let set: BTreeSet<u32> = [1u32].into();
    let mut stub = ConstRng(0);
    let (header, key) = encaps(&mut stub, &set, &pks, &pp).unwrap();
    assert!(pp.group().is_identity_g(&header.c1));
    let ident = pp.group().identity_gt();
    let want = SessionKey(pp.hash_key().hash_gt(pp.group(), &ident).unwrap());
    assert_eq!(key, want);
}

#[test]
fn header_exponent_matches_symbolic_oracle() {
    // C2 = (prod A_j V_j)^t, so its exponent must be
    // t * sum_j (alpha^j + gamma_j) * g_exp mod N.
    let group = toy_group(Backend::Symbolic);
    let n = group.modulus().clone();
    let mut rng = seeded_rng(b"c2-oracle");
    let (pp, td) = setup_with_trapdoor(&mut rng, group, 2, 16).unwrap();
    let mut gammas = BTreeMap::new();
    let mut pks = BTreeMap::new();
    for i in 1..=2u32 {
        let mut probe = rng.clone();
        gammas.insert(i, pp.group().random_scalar(&mut probe));
        let (_, pk) = gen_key(&mut rng, i, &pp).unwrap();
        pks.insert(i, pk);
    }
    let set: BTreeSet<u32> = [1u32, 2].into();
    let mut probe = rng.clone();
    let t = pp.group().random_scalar(&mut probe);
    let (header, _) = encaps(&mut rng, &set, &pks, &pp).unwrap();

    let alpha = td.alpha.value();
    let g_exp = pp.generator().symbolic_exponent().unwrap();
    let mut sum = BigUint::zero();
    for j in 1..=2u32 {
        sum += alpha.modpow(&BigUint::from(j), &n) + gammas[&j].value();
    }
    let want = (g_exp * t.value() % &n) * (sum % &n) % &n;
    assert_eq!(header.c2.symbolic_exponent().unwrap(), &want);
}

#[test]
fn encaps_rejects_bad_inputs() {
    let group = GroupParams::generate(Backend::Symbolic, 16, b"bad-encaps-group").unwrap();
    let mut rng = seeded_rng(b"bad-encaps");
    let pp = setup(&mut rng, group, 3, 16).unwrap();
    let (_, pks) = keys_for_all(&mut rng, &pp);
    let empty: BTreeSet<u32> = BTreeSet::new();
    assert!(matches!(
        encaps(&mut rng, &empty, &pks, &pp),
        Err(Error::EmptySet)
    ));
    let mut missing = pks.clone();
    missing.remove(&2);
    let set: BTreeSet<u32> = [1u32, 2].into();
    assert!(matches!(
        encaps(&mut rng, &set, &missing, &pp),
        Err(Error::MissingUpk(2))
    ));
    // A tampered key is rejected at use.
    let mut bad = pks.clone();
    let mut pk2 = bad[&2].clone();
    let k = *pk2.cross_terms.keys().next().unwrap();
    let hit = pp
        .group()
        .g_mul(&pk2.cross_terms[&k], pp.generator())
        .unwrap();
    pk2.cross_terms.insert(k, hit);
    bad.insert(2, pk2);
    assert!(matches!(
        encaps(&mut rng, &set, &bad, &pp),
        Err(Error::InvalidUpk(2))
    ));
    // ...unless validation is explicitly skipped.
    assert!(encaps_skip_validation(&mut rng, &set, &bad, &pp).is_ok());
}

#[test]
fn exhaustive_correctness_symbolic() {
    for l in 1..=4u32 {
        let mut rng = seeded_rng(format!("exhaustive-{l}").as_bytes());
        let pp = setup(&mut rng, toy_group(Backend::Symbolic), l, 16).unwrap();
        let (sks, pks) = keys_for_all(&mut rng, &pp);
        for set in subsets(l) {
            let (header, key) = encaps(&mut rng, &set, &pks, &pp).unwrap();
            for &i in &set {
                let got = decaps(&set, &header, i, &sks[&i], &pks, &pp)
                    .unwrap()
                    .expect("member decapsulates");
                assert_eq!(got, key, "L={l} S={set:?} i={i}");
            }
        }
    }
}

#[test]
fn randomized_correctness_larger_instances() {
    for l in [8u32, 16] {
        let mut rng = seeded_rng(format!("larger-{l}").as_bytes());
        let pp = setup(&mut rng, toy_group(Backend::Symbolic), l, 16).unwrap();
        let (sks, pks) = keys_for_all(&mut rng, &pp);
        for trial in 0..8 {
            let mut set = BTreeSet::new();
            while set.is_empty() {
                for i in 1..=l {
                    if rng.next_u32().is_multiple_of(2) {
                        set.insert(i);
                    }
                }
            }
            let (header, key) = encaps(&mut rng, &set, &pks, &pp).unwrap();
            let &i = set.iter().next().unwrap();
            let got = decaps(&set, &header, i, &sks[&i], &pks, &pp)
                .unwrap()
                .unwrap();
            assert_eq!(got, key, "L={l} trial={trial}");
        }
    }
}

#[test]
fn non_member_gets_bottom() {
    let mut rng = seeded_rng(b"bottom");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 3, 16).unwrap();
    let (sks, pks) = keys_for_all(&mut rng, &pp);
    let set: BTreeSet<u32> = [1u32, 3].into();
    let (header, _) = encaps(&mut rng, &set, &pks, &pp).unwrap();
    let out = decaps(&set, &header, 2, &sks[&2], &pks, &pp).unwrap();
    assert!(out.is_none());
}

#[test]
fn wrong_slot_key_mismatches() {
    // Desk-scale primes: with 385-order toy groups the mismatch quantity
    // vanishes mod a tiny factor too often to assert on.
    let group = GroupParams::generate(Backend::Symbolic, 20, b"wrong-slot-group").unwrap();
    let mut rng = seeded_rng(b"wrong-slot");
    let pp = setup(&mut rng, group, 4, 24).unwrap();
    let (sks, pks) = keys_for_all(&mut rng, &pp);
    let set: BTreeSet<u32> = [1u32, 2].into();
    let mut mismatches = 0;
    for trial in 0..50 {
        let _ = trial;
        let (header, key) = encaps(&mut rng, &set, &pks, &pp).unwrap();
        let got = decaps(&set, &header, 1, &sks[&2], &pks, &pp)
            .unwrap()
            .unwrap();
        if got != key {
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 50);
}

#[test]
fn missing_upk_at_decaps() {
    let mut rng = seeded_rng(b"missing-decaps");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 3, 16).unwrap();
    let (sks, pks) = keys_for_all(&mut rng, &pp);
    let set: BTreeSet<u32> = [1u32, 2].into();
    let (header, _) = encaps(&mut rng, &set, &pks, &pp).unwrap();
    let mut partial = pks.clone();
    partial.remove(&2);
    assert!(matches!(
        decaps(&set, &header, 1, &sks[&1], &partial, &pp),
        Err(Error::MissingUpk(2))
    ));
}

#[test]
fn chain_reblinding_changes_nothing() {
    // Multiplying every U_k by a fresh G_{p3} element preserves validation
    // verdicts and decapsulation outputs.
    let mut rng = seeded_rng(b"reblind");
    let group = toy_group(Backend::Symbolic);
    let (pp, td) = setup_with_trapdoor(&mut rng, group, 3, 16).unwrap();
    let (sks, pks) = keys_for_all(&mut rng, &pp);
    let set: BTreeSet<u32> = [1u32, 2, 3].into();
    let (header, key) = encaps(&mut rng, &set, &pks, &pp).unwrap();

    let mut reblinded = BTreeMap::new();
    for (&k, u) in &td.u_full {
        let y = pp
            .group()
            .random_element(&mut rng, crate::groups::PrimeSubset::P3);
        reblinded.insert(k, pp.group().g_mul(u, &y).unwrap());
    }
    let pp2 = pp.with_u_full(&reblinded).unwrap();
    assert_eq!(pp2.omega(), pp.omega());
    for i in 1..=3 {
        assert!(is_valid(i, &pks[&i], &pp2).unwrap());
        let got = decaps(&set, &header, i, &sks[&i], &pks, &pp2)
            .unwrap()
            .unwrap();
        assert_eq!(got, key);
    }
}

#[test]
fn serialization_roundtrips() {
    for backend in [Backend::Symbolic, Backend::Curve] {
        let mut rng = seeded_rng(b"serial");
        let pp = setup(&mut rng, toy_group(backend), 3, 16).unwrap();
        let back = PublicParams::from_bytes(&pp.to_bytes()).unwrap();
        assert_eq!(back, pp);

        let (sk, pk) = gen_key(&mut rng, 2, &pp).unwrap();
        assert_eq!(
            UserSecretKey::from_bytes(&sk.to_bytes(&pp), &pp).unwrap(),
            sk
        );
        assert_eq!(
            UserPublicKey::from_bytes(&pk.to_bytes(&pp), &pp).unwrap(),
            pk
        );

        let (_, pks) = keys_for_all(&mut rng, &pp);
        let set: BTreeSet<u32> = [2u32, 3].into();
        let (header, _) = encaps(&mut rng, &set, &pks, &pp).unwrap();
        assert_eq!(
            CiphertextHeader::from_bytes(&header.to_bytes(&pp), &pp).unwrap(),
            header
        );
    }
}

#[test]
fn digest_is_stable_and_binding() {
    let mut rng = seeded_rng(b"digest");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 2, 16).unwrap();
    let other = setup(&mut rng, toy_group(Backend::Symbolic), 2, 16).unwrap();
    assert_eq!(pp.digest(), pp.digest());
    assert_ne!(pp.digest(), other.digest());
}

#[test]
fn key_material_reblinding_leaves_decaps_unchanged() {
    // Multiplying the secret key or any cross-term by a fresh G_{p3}
    // element changes no pairing decaps evaluates.
    let mut rng = seeded_rng(b"key-reblind");
    let pp = setup(&mut rng, toy_group(Backend::Symbolic), 3, 16).unwrap();
    let (sks, pks) = keys_for_all(&mut rng, &pp);
    let set: BTreeSet<u32> = [1u32, 2, 3].into();
    let (header, key) = encaps(&mut rng, &set, &pks, &pp).unwrap();
    let group = pp.group();

    for &i in &set {
        let mut sk = sks[&i].clone();
        let y = group.random_element(&mut rng, crate::groups::PrimeSubset::P3);
        sk.key = group.g_mul(&sk.key, &y).unwrap();
        let got = decaps(&set, &header, i, &sk, &pks, &pp).unwrap().unwrap();
        assert_eq!(got, key, "blinded secret key, i={i}");
    }

    let mut blinded = pks.clone();
    for upk in blinded.values_mut() {
        let ks: Vec<u32> = upk.cross_terms.keys().copied().collect();
        for k in ks {
            let y = group.random_element(&mut rng, crate::groups::PrimeSubset::P3);
            let term = group.g_mul(&upk.cross_terms[&k], &y).unwrap();
            upk.cross_terms.insert(k, term);
        }
    }
    for &i in &set {
        let got = decaps(&set, &header, i, &sks[&i], &blinded, &pp)
            .unwrap()
            .unwrap();
        assert_eq!(got, key, "blinded cross-terms, i={i}");
    }
}

#[test]
fn inconsistent_parameter_file_rejected() {
    let group = GroupParams::generate(Backend::Symbolic, 16, b"inconsistent-group").unwrap();
    let mut rng = seeded_rng(b"inconsistent");
    let pp = setup(&mut rng, group, 3, 16).unwrap();
    let mut broken = pp.clone();
    // Swap two chain entries; subgroup membership still holds but the
    // pairing chain breaks.
    let u1 = broken.u_chain[&1].clone();
    let u2 = broken.u_chain[&2].clone();
    broken.u_chain.insert(1, u2);
    broken.u_chain.insert(2, u1);
    let res = PublicParams::from_bytes(&broken.to_bytes());
    assert!(matches!(res, Err(Error::MalformedEncoding(_))));
}
