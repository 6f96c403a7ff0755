use super::*;
use crate::dbe_ss;
use crate::groups::{Backend, GroupParams};
use crate::rng::seeded_rng;
use num_bigint::BigUint;
use std::collections::{BTreeMap, BTreeSet};

fn toy_group(backend: Backend) -> GroupParams {
    GroupParams::from_primes(
        backend,
        &BigUint::from(5u8),
        &BigUint::from(7u8),
        &BigUint::from(11u8),
    )
    .unwrap()
}

fn desk_group() -> GroupParams {
    GroupParams::generate(Backend::Symbolic, 16, b"games-desk").unwrap()
}

fn keys_for_all(
    seed: &[u8],
    pp: &dbe_ss::PublicParams,
) -> (
    BTreeMap<u32, dbe_ss::UserSecretKey>,
    BTreeMap<u32, dbe_ss::UserPublicKey>,
) {
    let mut rng = seeded_rng(seed);
    let mut sks = BTreeMap::new();
    let mut pks = BTreeMap::new();
    for i in 1..=pp.slots() {
        let (sk, pk) = dbe_ss::gen_key(&mut rng, i, pp).unwrap();
        sks.insert(i, sk);
        pks.insert(i, pk);
    }
    (sks, pks)
}

#[test]
fn transparent_setup_reproduces_the_instance() {
    for backend in [Backend::Symbolic, Backend::Curve] {
        let mut rng = seeded_rng(b"ts");
        let ts = TransparentSetup::new(&mut rng, toy_group(backend), 3, 16).unwrap();
        assert!(ts.rederive_check(), "{backend:?}");
        assert!(ts.pp.check_consistency());
    }
}

#[test]
fn sf_header_decapsulates_like_the_normal_one() {
    for backend in [Backend::Symbolic, Backend::Curve] {
        let mut rng = seeded_rng(b"ch-sf");
        let ts = TransparentSetup::new(&mut rng, toy_group(backend), 3, 16).unwrap();
        let (sks, pks) = keys_for_all(b"ch-sf-keys", &ts.pp);
        let set: BTreeSet<u32> = [1u32, 3].into();
        let (header, key) = dbe_ss::encaps(&mut rng, &set, &pks, &ts.pp).unwrap();
        let sf = sample_ch_sf(&ts, &mut rng, &header).unwrap();
        for &i in &set {
            let got = dbe_ss::decaps(&set, &sf, i, &sks[&i], &pks, &ts.pp)
                .unwrap()
                .unwrap();
            assert_eq!(got, key, "{backend:?} i={i}");
        }
    }
}

#[test]
fn sf_header_with_zero_mask_is_the_input() {
    let mut rng = seeded_rng(b"ch-sf-zero");
    let ts = TransparentSetup::new(&mut rng, toy_group(Backend::Symbolic), 2, 16).unwrap();
    let (_, pks) = keys_for_all(b"ch-sf-zero-keys", &ts.pp);
    let set: BTreeSet<u32> = [1u32].into();
    let (header, _) = dbe_ss::encaps(&mut rng, &set, &pks, &ts.pp).unwrap();
    let zero = ts.group().scalar_from_u64(0);
    let d = ts.group().scalar_from_u64(9);
    let sf = sample_ch_sf_with(&ts, &header, &zero, &d).unwrap();
    assert_eq!(sf, header);
}

#[test]
fn sf_header_component_order_gains_p2() {
    let mut rng = seeded_rng(b"ch-sf-order");
    let ts = TransparentSetup::new(&mut rng, toy_group(Backend::Symbolic), 2, 16).unwrap();
    let (_, pks) = keys_for_all(b"ch-sf-order-keys", &ts.pp);
    let set: BTreeSet<u32> = [1u32, 2].into();
    let (header, _) = dbe_ss::encaps(&mut rng, &set, &pks, &ts.pp).unwrap();
    let c = ts.group().scalar_from_u64(3);
    let d = ts.group().scalar_from_u64(5);
    let sf = sample_ch_sf_with(&ts, &header, &c, &d).unwrap();
    let group = ts.group();
    let n = group.modulus();
    let p2 = ts.p2();
    // Normal C1 lives in G_{p1}; the masked one picks up a p2 factor.
    assert!(group.g_order_divides(&header.c1, group.factor(1)));
    assert!(!group.g_order_divides(&sf.c1, &(n / p2)));
}

#[test]
fn sf_chain_leaves_decapsulation_unchanged() {
    for backend in [Backend::Symbolic, Backend::Curve] {
        let mut rng = seeded_rng(b"ul-sf");
        let ts = TransparentSetup::new(&mut rng, toy_group(backend), 3, 16).unwrap();
        let (_sks, pks) = keys_for_all(b"ul-sf-keys", &ts.pp);
        let set: BTreeSet<u32> = [1u32, 2, 3].into();
        let (header, key) = dbe_ss::encaps(&mut rng, &set, &pks, &ts.pp).unwrap();

        let sf_chain = sample_ul_sf(&ts, &mut rng).unwrap();
        let pp_sf = ts.instance_with_chain(&sf_chain).unwrap();
        // Same per-user randomness, semi-functional chain.
        let (sks_sf, pks_sf) = keys_for_all(b"ul-sf-keys", &pp_sf);
        for &i in &set {
            let got = dbe_ss::decaps(&set, &header, i, &sks_sf[&i], &pks_sf, &pp_sf)
                .unwrap()
                .unwrap();
            assert_eq!(got, key, "{backend:?} i={i}");
        }
    }
}

#[test]
fn zero_delta_chain_is_a_reblinding() {
    let mut rng = seeded_rng(b"ul-zero");
    let ts = TransparentSetup::new(&mut rng, toy_group(Backend::Symbolic), 3, 16).unwrap();
    let zeros = vec![ts.group().scalar_from_u64(0); 6];
    let chain = sample_ul_sf_with_deltas(&ts, &mut rng, &zeros).unwrap();
    let pp0 = ts.instance_with_chain(&chain).unwrap();
    assert_eq!(pp0.omega(), ts.pp.omega());
    // Keys cut under either chain validate under the other.
    let (_, pks) = keys_for_all(b"ul-zero-orig", &ts.pp);
    let (_, pks0) = keys_for_all(b"ul-zero-reblind", &pp0);
    for i in 1..=3 {
        assert!(dbe_ss::is_valid(i, &pks[&i], &pp0).unwrap());
        assert!(dbe_ss::is_valid(i, &pks0[&i], &ts.pp).unwrap());
    }
}

#[test]
fn hybrid_identity_at_the_exponent_level() {
    // Type (η, 1) with a_η ≡ α (mod p2) is exactly type (η+1, 0).
    let mut rng = seeded_rng(b"hybrid");
    for slots in 1..=4u32 {
        let ts = TransparentSetup::new(&mut rng, desk_group(), slots, 16).unwrap();
        let p2 = ts.p2().clone();
        let mut coeffs = sample_hybrid_coeffs(&ts, &mut rng, (2 * slots + 1) as usize);
        for eta in 1..=2 * slots {
            coeffs.a[(eta - 1) as usize] = ts.alpha.clone();
            let one = sample_ul_eta(&ts, &coeffs, &mut rng, eta, HybridStage::One).unwrap();
            let zero_next =
                sample_ul_eta(&ts, &coeffs, &mut rng, eta + 1, HybridStage::Zero).unwrap();
            for i in 1..=2 * slots {
                let lhs = g2_component(&one[&i], &p2).unwrap();
                let rhs = g2_component(&zero_next[&i], &p2).unwrap();
                assert_eq!(lhs, rhs, "slots={slots} eta={eta} i={i}");
            }
        }
    }
}

#[test]
fn first_hybrid_is_a_reblinding_of_normal() {
    let mut rng = seeded_rng(b"hybrid-first");
    let ts = TransparentSetup::new(&mut rng, desk_group(), 2, 16).unwrap();
    let coeffs = sample_hybrid_coeffs(&ts, &mut rng, 5);
    let ul = sample_ul_eta(&ts, &coeffs, &mut rng, 1, HybridStage::Zero).unwrap();
    let p2 = ts.p2();
    for i in 1..=4u32 {
        // No g2 mass yet: the component matches the normal chain's (zero).
        assert_eq!(
            g2_component(&ul[&i], p2).unwrap(),
            g2_component(&ts.u_full[&i], p2).unwrap()
        );
    }
}

#[test]
fn fixture_order_facts_hold_on_both_backends() {
    for backend in [Backend::Symbolic, Backend::Curve] {
        let mut rng = seeded_rng(b"fixtures");
        let ts = TransparentSetup::new(&mut rng, toy_group(backend), 2, 16).unwrap();
        let group = ts.group();
        let n = group.modulus();

        let sd0 = sd_fixture(&ts, &mut rng, SubgroupCase::Z0);
        assert!(group.g_order_divides(&sd0.z, group.factor(1)));
        let sd1 = sd_fixture(&ts, &mut rng, SubgroupCase::Z1);
        assert!(!group.g_order_divides(&sd1.z, &(n / group.factor(2))));
        assert!(group.g_order_divides(&sd1.z, &(group.factor(1) * group.factor(2))));

        let gsd0 = gsd_fixture(&ts, &mut rng, SubgroupCase::Z0);
        assert!(group.g_order_divides(&gsd0.z, &(group.factor(1) * group.factor(3))));
        assert!(group.g_order_divides(&gsd0.z, n));
        let gsd1 = gsd_fixture(&ts, &mut rng, SubgroupCase::Z1);
        for i in 1..=3u8 {
            assert!(
                !group.g_order_divides(&gsd1.z, &(n / group.factor(i))),
                "{backend:?} GSD Z1 must need p{i}"
            );
        }
    }
}

#[test]
fn fixture_orders_agree_across_backends() {
    let mut verdicts: Vec<Vec<bool>> = Vec::new();
    for backend in [Backend::Symbolic, Backend::Curve] {
        let mut rng = seeded_rng(b"fixture-agree");
        let ts = TransparentSetup::new(&mut rng, toy_group(backend), 2, 16).unwrap();
        let group = ts.group();
        let n = group.modulus();
        let mut v = Vec::new();
        for case in [SubgroupCase::Z0, SubgroupCase::Z1] {
            let sd = sd_fixture(&ts, &mut rng, case);
            let gsd = gsd_fixture(&ts, &mut rng, case);
            for i in 1..=3u8 {
                v.push(group.g_order_divides(&sd.z, &(n / group.factor(i))));
                v.push(group.g_order_divides(&gsd.z, &(n / group.factor(i))));
            }
        }
        verdicts.push(v);
    }
    assert_eq!(verdicts[0], verdicts[1]);
}

// ---- challenger tests ----------------------------------------------------------

#[test]
fn semi_static_overreach_is_a_violation() {
    let mut adversary = SsOverreachAdversary {
        commit: [1u32, 2].into(),
        target: [1u32, 3].into(),
    };
    let mut rng = seeded_rng(b"ss-overreach");
    let t = run_semi_static_game(
        &mut adversary,
        &mut rng,
        toy_group(Backend::Symbolic),
        4,
        16,
        &GameOptions::default(),
    )
    .unwrap();
    assert!(t.is_violation());
    assert!(!t.adversary_won());
}

#[test]
fn coin_reading_stub_always_wins() {
    for run in 0..20u32 {
        let mut adversary = SsGuessingAdversary::coin_reading([1u32, 2].into(), [1u32].into());
        let mut rng = seeded_rng(format!("coin-{run}").as_bytes());
        let t = run_semi_static_game(
            &mut adversary,
            &mut rng,
            toy_group(Backend::Symbolic),
            2,
            16,
            &GameOptions { leak_coin: true },
        )
        .unwrap();
        assert!(t.adversary_won(), "run {run}");
    }
}

#[test]
fn semi_static_guessing_baseline() {
    let mut wins = 0u32;
    let runs = 1000u32;
    for run in 0..runs {
        let mut adversary = SsGuessingAdversary::new(
            [1u32, 2].into(),
            [1u32].into(),
            format!("ss-guess-{run}").as_bytes(),
        );
        let mut rng = seeded_rng(format!("ss-chal-{run}").as_bytes());
        let t = run_semi_static_game(
            &mut adversary,
            &mut rng,
            toy_group(Backend::Symbolic),
            2,
            16,
            &GameOptions::default(),
        )
        .unwrap();
        assert!(!t.is_violation());
        if t.adversary_won() {
            wins += 1;
        }
    }
    let rate = f64::from(wins) / f64::from(runs);
    assert!((0.45..=0.55).contains(&rate), "win rate {rate}");
}

#[test]
fn adaptive_corrupt_then_challenge_is_a_violation() {
    let mut adversary = ScriptedAdAdversary::new(
        vec![
            ScriptStep::KeyGen(1),
            ScriptStep::KeyGen(2),
            ScriptStep::Corrupt(1),
            ScriptStep::Challenge(vec![1, 2]),
        ],
        b"corrupt-then-challenge",
    );
    let mut rng = seeded_rng(b"ad-corrupt");
    let t = run_adaptive_game(
        &mut adversary,
        &mut rng,
        toy_group(Backend::Symbolic),
        2,
        16,
        &GameOptions::default(),
    )
    .unwrap();
    assert!(t.is_violation());
}

#[test]
fn adaptive_rejects_malicious_queries_and_duplicates() {
    let mut adversary = ScriptedAdAdversary::new(
        vec![
            ScriptStep::MaliciousHonest(1),
            ScriptStep::Challenge(vec![1]),
        ],
        b"no-malicious",
    );
    let mut rng = seeded_rng(b"ad-no-mq");
    let t = run_adaptive_game(
        &mut adversary,
        &mut rng,
        toy_group(Backend::Symbolic),
        2,
        16,
        &GameOptions::default(),
    )
    .unwrap();
    assert!(t.is_violation());

    let mut adversary = ScriptedAdAdversary::new(
        vec![
            ScriptStep::KeyGen(1),
            ScriptStep::KeyGen(1),
            ScriptStep::Challenge(vec![1]),
        ],
        b"dup",
    );
    let mut rng = seeded_rng(b"ad-dup");
    let t = run_adaptive_game(
        &mut adversary,
        &mut rng,
        toy_group(Backend::Symbolic),
        2,
        16,
        &GameOptions::default(),
    )
    .unwrap();
    assert!(t.is_violation());
}

#[test]
fn active_game_stores_malicious_keys_and_bars_them_from_the_challenge() {
    // A tampered key is stored (flagged invalid); challenging it then
    // violates the set constraint.
    let mut adversary = ScriptedAdAdversary::new(
        vec![
            ScriptStep::KeyGen(1),
            ScriptStep::MaliciousTampered(2),
            ScriptStep::Challenge(vec![1, 2]),
        ],
        b"mq-challenge",
    );
    let mut rng = seeded_rng(b"aa-mq");
    let t = run_active_adaptive_game(
        &mut adversary,
        &mut rng,
        desk_group(),
        2,
        16,
        &GameOptions::default(),
    )
    .unwrap();
    assert!(t.is_violation());
    let stored = t.events.iter().any(|e| {
        matches!(
            e,
            GameEvent::MaliciousRegister {
                index: 2,
                valid: false
            }
        )
    });
    assert!(stored, "malicious key must be stored and flagged");

    // A valid self-made key is stored with valid=1 and the run proceeds
    // (challenge on the honest index only).
    let mut adversary = ScriptedAdAdversary::new(
        vec![
            ScriptStep::KeyGen(1),
            ScriptStep::MaliciousHonest(2),
            ScriptStep::Challenge(vec![1]),
        ],
        b"mq-ok",
    );
    let mut rng = seeded_rng(b"aa-mq-ok");
    let t = run_active_adaptive_game(
        &mut adversary,
        &mut rng,
        toy_group(Backend::Symbolic),
        2,
        16,
        &GameOptions::default(),
    )
    .unwrap();
    assert!(!t.is_violation());
    assert!(t.events.iter().any(|e| matches!(
        e,
        GameEvent::MaliciousRegister {
            index: 2,
            valid: true
        }
    )));
}

#[test]
fn adaptive_guessing_baselines() {
    for active in [false, true] {
        let mut wins = 0u32;
        let runs = 1000u32;
        for run in 0..runs {
            let mut adversary = ScriptedAdAdversary::new(
                vec![
                    ScriptStep::KeyGen(1),
                    ScriptStep::KeyGen(2),
                    ScriptStep::Challenge(vec![1, 2]),
                ],
                format!("ad-guess-{active}-{run}").as_bytes(),
            );
            let mut rng = seeded_rng(format!("ad-chal-{active}-{run}").as_bytes());
            let t = if active {
                run_active_adaptive_game(
                    &mut adversary,
                    &mut rng,
                    toy_group(Backend::Symbolic),
                    2,
                    16,
                    &GameOptions::default(),
                )
            } else {
                run_adaptive_game(
                    &mut adversary,
                    &mut rng,
                    toy_group(Backend::Symbolic),
                    2,
                    16,
                    &GameOptions::default(),
                )
            }
            .unwrap();
            assert!(!t.is_violation());
            if t.adversary_won() {
                wins += 1;
            }
        }
        let rate = f64::from(wins) / f64::from(runs);
        assert!(
            (0.45..=0.55).contains(&rate),
            "active={active} win rate {rate}"
        );
    }
}

#[test]
fn transcript_renders_one_line_per_event() {
    let mut adversary = SsGuessingAdversary::new([1u32, 2].into(), [2u32].into(), b"render");
    let mut rng = seeded_rng(b"render-chal");
    let t = run_semi_static_game(
        &mut adversary,
        &mut rng,
        toy_group(Backend::Symbolic),
        2,
        16,
        &GameOptions::default(),
    )
    .unwrap();
    let text = t.to_string();
    let lines: Vec<&str> = text.lines().collect();
    // game + events + verdict
    assert_eq!(lines.len(), 2 + t.events.len());
    assert!(lines[0].starts_with("game semi-static"));
    assert!(lines.last().unwrap().starts_with("verdict "));
    assert!(text.contains("challenge set={2}"));
}

#[test]
fn every_remaining_constraint_violation_is_rejected() {
    let opts = GameOptions::default();

    // Committed set outside [1, L].
    let mut oob = SsGuessingAdversary::new([1u32, 99].into(), [1u32].into(), b"oob");
    let mut rng = seeded_rng(b"viol-oob");
    let t = run_semi_static_game(
        &mut oob,
        &mut rng,
        toy_group(Backend::Symbolic),
        2,
        16,
        &opts,
    )
    .unwrap();
    assert!(t.is_violation());

    // Corruption of an index that was never generated.
    let mut blind_corrupt = ScriptedAdAdversary::new(
        vec![ScriptStep::Corrupt(1), ScriptStep::Challenge(vec![1])],
        b"blind",
    );
    let mut rng = seeded_rng(b"viol-blind");
    let t = run_adaptive_game(
        &mut blind_corrupt,
        &mut rng,
        toy_group(Backend::Symbolic),
        2,
        16,
        &opts,
    )
    .unwrap();
    assert!(t.is_violation());

    // Double corruption.
    let mut twice = ScriptedAdAdversary::new(
        vec![
            ScriptStep::KeyGen(1),
            ScriptStep::KeyGen(2),
            ScriptStep::Corrupt(1),
            ScriptStep::Corrupt(1),
            ScriptStep::Challenge(vec![2]),
        ],
        b"twice",
    );
    let mut rng = seeded_rng(b"viol-twice");
    let t = run_adaptive_game(
        &mut twice,
        &mut rng,
        toy_group(Backend::Symbolic),
        2,
        16,
        &opts,
    )
    .unwrap();
    assert!(t.is_violation());

    // Malicious registration on an index that already has an honest key,
    // and honest key generation on a maliciously registered index.
    let mut occupy = ScriptedAdAdversary::new(
        vec![
            ScriptStep::KeyGen(1),
            ScriptStep::MaliciousHonest(1),
            ScriptStep::Challenge(vec![1]),
        ],
        b"occupy",
    );
    let mut rng = seeded_rng(b"viol-occupy");
    let t = run_active_adaptive_game(&mut occupy, &mut rng, desk_group(), 2, 16, &opts).unwrap();
    assert!(t.is_violation());

    let mut claim = ScriptedAdAdversary::new(
        vec![
            ScriptStep::MaliciousHonest(1),
            ScriptStep::KeyGen(1),
            ScriptStep::Challenge(vec![1]),
        ],
        b"claim",
    );
    let mut rng = seeded_rng(b"viol-claim");
    let t = run_active_adaptive_game(&mut claim, &mut rng, desk_group(), 2, 16, &opts).unwrap();
    assert!(t.is_violation());

    // Empty challenge set.
    let mut empty = ScriptedAdAdversary::new(
        vec![ScriptStep::KeyGen(1), ScriptStep::Challenge(vec![])],
        b"empty",
    );
    let mut rng = seeded_rng(b"viol-empty");
    let t = run_adaptive_game(
        &mut empty,
        &mut rng,
        toy_group(Backend::Symbolic),
        2,
        16,
        &opts,
    )
    .unwrap();
    assert!(t.is_violation());
}
