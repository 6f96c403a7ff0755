//! Executable challengers for the three security experiments, with a
//! scripted four-phase adversary interface (init / query / challenge /
//! guess). The challenger owns all protocol randomness; adversaries may
//! carry their own rng for guessing. Every definitional constraint is
//! enforced: a violating adversary gets an invalidated transcript and
//! loses.

use crate::bits::BitString;
use crate::dbe_ad::{self, AdCiphertextHeader, AdKeyPair, AdPublicParams, AdUserPublicKey};
use crate::dbe_ss::{self, CiphertextHeader, PublicParams, SessionKey, UserPublicKey};
use crate::error::Result;
use crate::groups::{Backend, GroupParams};
use rand::RngCore;
use rand_chacha::ChaCha20Rng;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GameKind {
    SemiStatic,
    Adaptive,
    ActiveAdaptive,
}

impl GameKind {
    fn as_str(&self) -> &'static str {
        match self {
            GameKind::SemiStatic => "semi-static",
            GameKind::Adaptive => "adaptive",
            GameKind::ActiveAdaptive => "active-adaptive",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct GameOptions {
    /// Leak the challenge coin to the adversary's guess callback. Exists so
    /// a white-box stub can verify the verdict plumbing; never set it for a
    /// real experiment.
    pub leak_coin: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameOutcome {
    AdversaryWins,
    AdversaryLoses,
    Violation(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameEvent {
    Init {
        committed: BTreeSet<u32>,
    },
    Setup {
        backend: Backend,
        users: u32,
        lambda: u32,
    },
    KeyGen {
        index: u32,
    },
    Corrupt {
        index: u32,
    },
    MaliciousRegister {
        index: u32,
        valid: bool,
    },
    Challenge {
        set: BTreeSet<u32>,
        coin: u8,
    },
    Guess {
        value: u8,
    },
    Violation {
        reason: String,
    },
}

#[derive(Debug, Clone)]
pub struct GameTranscript {
    pub kind: GameKind,
    pub events: Vec<GameEvent>,
    pub outcome: GameOutcome,
}

impl GameTranscript {
    pub fn adversary_won(&self) -> bool {
        self.outcome == GameOutcome::AdversaryWins
    }

    pub fn is_violation(&self) -> bool {
        matches!(self.outcome, GameOutcome::Violation(_))
    }
}

fn fmt_set(set: &BTreeSet<u32>) -> String {
    let inner: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for GameTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "game {}", self.kind.as_str())?;
        for ev in &self.events {
            match ev {
                GameEvent::Init { committed } => {
                    writeln!(f, "init committed={}", fmt_set(committed))?
                }
                GameEvent::Setup {
                    backend,
                    users,
                    lambda,
                } => writeln!(f, "setup backend={backend} users={users} lambda={lambda}")?,
                GameEvent::KeyGen { index } => writeln!(f, "keygen index={index}")?,
                GameEvent::Corrupt { index } => writeln!(f, "corrupt index={index}")?,
                GameEvent::MaliciousRegister { index, valid } => writeln!(
                    f,
                    "malicious-register index={index} valid={}",
                    u8::from(*valid)
                )?,
                GameEvent::Challenge { set, coin } => {
                    writeln!(f, "challenge set={} coin={coin}", fmt_set(set))?
                }
                GameEvent::Guess { value } => writeln!(f, "guess value={value}")?,
                GameEvent::Violation { reason } => writeln!(f, "violation {reason}")?,
            }
        }
        match &self.outcome {
            GameOutcome::AdversaryWins => writeln!(f, "verdict adversary-wins"),
            GameOutcome::AdversaryLoses => writeln!(f, "verdict adversary-loses"),
            GameOutcome::Violation(reason) => writeln!(f, "verdict invalid ({reason})"),
        }
    }
}

// ---- semi-static game ---------------------------------------------------------

pub struct SsView<'a> {
    pub pp: &'a PublicParams,
    pub upks: &'a BTreeMap<u32, UserPublicKey>,
}

pub struct SsChallengeView<'a> {
    pub header: &'a CiphertextHeader,
    pub key: &'a SessionKey,
    pub leaked_coin: Option<u8>,
}

/// Four-phase adversary for the semi-static experiment. The query phase is
/// passive here (the challenger hands over exactly the committed keys), so
/// `query` defaults to observation only.
pub trait SsAdversary {
    fn init(&mut self) -> BTreeSet<u32>;
    fn query(&mut self, _view: &SsView<'_>) {}
    fn challenge(&mut self, view: &SsView<'_>) -> BTreeSet<u32>;
    fn guess(&mut self, challenge: &SsChallengeView<'_>) -> u8;
}

pub fn run_semi_static_game<A: SsAdversary, R: RngCore>(
    adversary: &mut A,
    rng: &mut R,
    group: GroupParams,
    slots: u32,
    lambda: u32,
    options: &GameOptions,
) -> Result<GameTranscript> {
    let kind = GameKind::SemiStatic;
    let mut events = Vec::new();

    let committed = adversary.init();
    events.push(GameEvent::Init {
        committed: committed.clone(),
    });
    if committed.iter().any(|&j| j == 0 || j > slots) {
        return Ok(violation(kind, events, "committed set outside [1, L]"));
    }

    let pp = dbe_ss::setup(rng, group, slots, lambda)?;
    events.push(GameEvent::Setup {
        backend: pp.group().backend(),
        users: slots,
        lambda,
    });

    let mut upks = BTreeMap::new();
    for &j in &committed {
        let (_usk, upk) = dbe_ss::gen_key(rng, j, &pp)?;
        upks.insert(j, upk);
        events.push(GameEvent::KeyGen { index: j });
    }

    let view = SsView {
        pp: &pp,
        upks: &upks,
    };
    adversary.query(&view);

    let target = adversary.challenge(&view);
    if target.is_empty() {
        return Ok(violation(kind, events, "empty challenge set"));
    }
    if !target.is_subset(&committed) {
        return Ok(violation(
            kind,
            events,
            "challenge set not inside the committed set",
        ));
    }

    let (header, real_key) = dbe_ss::encaps(rng, &target, &upks, &pp)?;
    let random_key = SessionKey(BitString::random(rng, lambda));
    let coin = (rng.next_u32() & 1) as u8;
    events.push(GameEvent::Challenge { set: target, coin });
    let shown = if coin == 0 { &real_key } else { &random_key };

    let guess = adversary.guess(&SsChallengeView {
        header: &header,
        key: shown,
        leaked_coin: options.leak_coin.then_some(coin),
    }) & 1;
    events.push(GameEvent::Guess { value: guess });

    Ok(GameTranscript {
        kind,
        events,
        outcome: if guess == coin {
            GameOutcome::AdversaryWins
        } else {
            GameOutcome::AdversaryLoses
        },
    })
}

// ---- adaptive / active-adaptive games -----------------------------------------

pub struct AdView<'a> {
    pub pp: &'a AdPublicParams,
    /// Public keys of every honest key generated so far.
    pub honest_upks: &'a BTreeMap<u32, AdUserPublicKey>,
    /// Full key material of corrupted users.
    pub corrupted: &'a BTreeMap<u32, AdKeyPair>,
    /// Maliciously registered keys with their validation flag.
    pub malicious: &'a BTreeMap<u32, (AdUserPublicKey, bool)>,
}

pub struct AdChallengeView<'a> {
    pub header: &'a AdCiphertextHeader,
    pub key: &'a SessionKey,
    pub leaked_coin: Option<u8>,
}

#[derive(Debug, Clone)]
pub enum AdQuery {
    KeyGen(u32),
    Corrupt(u32),
    MaliciousRegister(u32, AdUserPublicKey),
    Challenge(BTreeSet<u32>),
}

pub trait AdAdversary {
    fn next_query(&mut self, view: &AdView<'_>) -> AdQuery;
    fn guess(&mut self, challenge: &AdChallengeView<'_>) -> u8;
}

pub fn run_adaptive_game<A: AdAdversary, R: RngCore>(
    adversary: &mut A,
    rng: &mut R,
    group: GroupParams,
    users: u32,
    lambda: u32,
    options: &GameOptions,
) -> Result<GameTranscript> {
    run_ad_game(adversary, rng, group, users, lambda, options, false)
}

pub fn run_active_adaptive_game<A: AdAdversary, R: RngCore>(
    adversary: &mut A,
    rng: &mut R,
    group: GroupParams,
    users: u32,
    lambda: u32,
    options: &GameOptions,
) -> Result<GameTranscript> {
    run_ad_game(adversary, rng, group, users, lambda, options, true)
}

fn run_ad_game<A: AdAdversary, R: RngCore>(
    adversary: &mut A,
    rng: &mut R,
    group: GroupParams,
    users: u32,
    lambda: u32,
    options: &GameOptions,
    allow_malicious: bool,
) -> Result<GameTranscript> {
    let kind = if allow_malicious {
        GameKind::ActiveAdaptive
    } else {
        GameKind::Adaptive
    };
    let mut events = Vec::new();

    let pp = dbe_ad::setup(rng, group, users, lambda)?;
    events.push(GameEvent::Setup {
        backend: pp.group().backend(),
        users,
        lambda,
    });

    let mut keygen_set: BTreeSet<u32> = BTreeSet::new();
    let mut corrupt_set: BTreeSet<u32> = BTreeSet::new();
    let mut malicious_set: BTreeSet<u32> = BTreeSet::new();
    let mut honest: BTreeMap<u32, AdKeyPair> = BTreeMap::new();
    let mut honest_upks: BTreeMap<u32, AdUserPublicKey> = BTreeMap::new();
    let mut corrupted: BTreeMap<u32, AdKeyPair> = BTreeMap::new();
    let mut malicious: BTreeMap<u32, (AdUserPublicKey, bool)> = BTreeMap::new();

    let budget = 10 * users as usize + 100;
    let target = loop {
        if events.len() > budget {
            return Ok(violation(kind, events, "query budget exhausted"));
        }
        let query = {
            let view = AdView {
                pp: &pp,
                honest_upks: &honest_upks,
                corrupted: &corrupted,
                malicious: &malicious,
            };
            adversary.next_query(&view)
        };
        match query {
            AdQuery::KeyGen(i) => {
                if i == 0 || i > users {
                    return Ok(violation(kind, events, "key generation outside [1, L]"));
                }
                if keygen_set.contains(&i) {
                    return Ok(violation(kind, events, "repeated key generation query"));
                }
                if malicious_set.contains(&i) {
                    return Ok(violation(
                        kind,
                        events,
                        "key generation on a maliciously registered index",
                    ));
                }
                let kp = dbe_ad::gen_key(rng, i, &pp)?;
                honest_upks.insert(i, kp.public.clone());
                honest.insert(i, kp);
                keygen_set.insert(i);
                events.push(GameEvent::KeyGen { index: i });
            }
            AdQuery::Corrupt(i) => {
                if !keygen_set.contains(&i) || corrupt_set.contains(&i) {
                    return Ok(violation(kind, events, "corruption outside KQ \\ CQ"));
                }
                corrupt_set.insert(i);
                corrupted.insert(i, honest[&i].clone());
                events.push(GameEvent::Corrupt { index: i });
            }
            AdQuery::MaliciousRegister(i, upk) => {
                if !allow_malicious {
                    return Ok(violation(
                        kind,
                        events,
                        "malicious corruption query in the adaptive game",
                    ));
                }
                if i == 0 || i > users {
                    return Ok(violation(
                        kind,
                        events,
                        "malicious registration outside [1, L]",
                    ));
                }
                if keygen_set.contains(&i) || malicious_set.contains(&i) {
                    return Ok(violation(
                        kind,
                        events,
                        "malicious registration on an occupied index",
                    ));
                }
                // Stored regardless of validity; the flag records the
                // verdict (a structurally malformed key counts as invalid).
                let valid = dbe_ad::is_valid(i, &upk, &pp).unwrap_or(false);
                malicious.insert(i, (upk, valid));
                malicious_set.insert(i);
                events.push(GameEvent::MaliciousRegister { index: i, valid });
            }
            AdQuery::Challenge(set) => break set,
        }
    };

    if target.is_empty() {
        return Ok(violation(kind, events, "empty challenge set"));
    }
    let allowed: BTreeSet<u32> = keygen_set
        .difference(&corrupt_set)
        .copied()
        .collect::<BTreeSet<u32>>()
        .difference(&malicious_set)
        .copied()
        .collect();
    if !target.is_subset(&allowed) {
        return Ok(violation(
            kind,
            events,
            "challenge set not inside KQ \\ (CQ u MQ)",
        ));
    }

    let (header, real_key) = dbe_ad::encaps(rng, &target, &honest_upks, &pp)?;
    let random_key = SessionKey(BitString::random(rng, lambda));
    let coin = (rng.next_u32() & 1) as u8;
    events.push(GameEvent::Challenge { set: target, coin });
    let shown = if coin == 0 { &real_key } else { &random_key };

    let guess = adversary.guess(&AdChallengeView {
        header: &header,
        key: shown,
        leaked_coin: options.leak_coin.then_some(coin),
    }) & 1;
    events.push(GameEvent::Guess { value: guess });

    Ok(GameTranscript {
        kind,
        events,
        outcome: if guess == coin {
            GameOutcome::AdversaryWins
        } else {
            GameOutcome::AdversaryLoses
        },
    })
}

fn violation(kind: GameKind, mut events: Vec<GameEvent>, reason: &str) -> GameTranscript {
    events.push(GameEvent::Violation {
        reason: reason.into(),
    });
    GameTranscript {
        kind,
        events,
        outcome: GameOutcome::Violation(reason.into()),
    }
}

// ---- scripted adversaries -----------------------------------------------------

/// Semi-static adversary that commits a set, challenges a subset, and
/// guesses with its own seeded coin (or reads the leaked one when told to).
pub struct SsGuessingAdversary {
    pub commit: BTreeSet<u32>,
    pub target: BTreeSet<u32>,
    pub read_leaked_coin: bool,
    rng: ChaCha20Rng,
}

impl SsGuessingAdversary {
    pub fn new(commit: BTreeSet<u32>, target: BTreeSet<u32>, seed: &[u8]) -> Self {
        SsGuessingAdversary {
            commit,
            target,
            read_leaked_coin: false,
            rng: crate::rng::seeded_rng(seed),
        }
    }

    /// White-box variant: reads the leaked coin, so it wins every valid run.
    pub fn coin_reading(commit: BTreeSet<u32>, target: BTreeSet<u32>) -> Self {
        SsGuessingAdversary {
            commit,
            target,
            read_leaked_coin: true,
            rng: crate::rng::seeded_rng(b"coin-reader"),
        }
    }
}

impl SsAdversary for SsGuessingAdversary {
    fn init(&mut self) -> BTreeSet<u32> {
        self.commit.clone()
    }

    fn challenge(&mut self, _view: &SsView<'_>) -> BTreeSet<u32> {
        self.target.clone()
    }

    fn guess(&mut self, challenge: &SsChallengeView<'_>) -> u8 {
        if self.read_leaked_coin {
            if let Some(coin) = challenge.leaked_coin {
                return coin;
            }
        }
        (self.rng.next_u32() & 1) as u8
    }
}

/// Semi-static adversary that challenges outside its committed set.
pub struct SsOverreachAdversary {
    pub commit: BTreeSet<u32>,
    pub target: BTreeSet<u32>,
}

impl SsAdversary for SsOverreachAdversary {
    fn init(&mut self) -> BTreeSet<u32> {
        self.commit.clone()
    }

    fn challenge(&mut self, _view: &SsView<'_>) -> BTreeSet<u32> {
        self.target.clone()
    }

    fn guess(&mut self, _challenge: &SsChallengeView<'_>) -> u8 {
        0
    }
}

/// One step of a scripted adaptive adversary.
#[derive(Debug, Clone)]
pub enum ScriptStep {
    KeyGen(u32),
    Corrupt(u32),
    /// Registers a self-made *valid* key at the index.
    MaliciousHonest(u32),
    /// Registers a self-made key with one cross-term tampered, so it fails
    /// validation (but is still stored).
    MaliciousTampered(u32),
    Challenge(Vec<u32>),
}

/// Table-driven adaptive/active adversary: plays the script, then guesses
/// with its own seeded coin (or a pinned value).
pub struct ScriptedAdAdversary {
    script: VecDeque<ScriptStep>,
    rng: ChaCha20Rng,
    pub fixed_guess: Option<u8>,
    pub read_leaked_coin: bool,
}

impl ScriptedAdAdversary {
    pub fn new(script: Vec<ScriptStep>, seed: &[u8]) -> Self {
        ScriptedAdAdversary {
            script: script.into(),
            rng: crate::rng::seeded_rng(seed),
            fixed_guess: None,
            read_leaked_coin: false,
        }
    }
}

impl AdAdversary for ScriptedAdAdversary {
    fn next_query(&mut self, view: &AdView<'_>) -> AdQuery {
        match self.script.pop_front() {
            Some(ScriptStep::KeyGen(i)) => AdQuery::KeyGen(i),
            Some(ScriptStep::Corrupt(i)) => AdQuery::Corrupt(i),
            Some(ScriptStep::MaliciousHonest(i)) => {
                let kp = dbe_ad::gen_key(&mut self.rng, i, view.pp).expect("scripted keygen");
                AdQuery::MaliciousRegister(i, kp.public)
            }
            Some(ScriptStep::MaliciousTampered(i)) => {
                let kp = dbe_ad::gen_key(&mut self.rng, i, view.pp).expect("scripted keygen");
                let mut upk = kp.public;
                let k = *upk.even.cross_terms.keys().next().expect("cross-term");
                let group = view.pp.group();
                let hit = group
                    .g_mul(&upk.even.cross_terms[&k], view.pp.basic().generator())
                    .expect("same backend");
                upk.even.cross_terms.insert(k, hit);
                AdQuery::MaliciousRegister(i, upk)
            }
            Some(ScriptStep::Challenge(set)) => AdQuery::Challenge(set.into_iter().collect()),
            // An exhausted script falls back to an empty challenge, which
            // the challenger rejects.
            None => AdQuery::Challenge(BTreeSet::new()),
        }
    }

    fn guess(&mut self, challenge: &AdChallengeView<'_>) -> u8 {
        if self.read_leaked_coin {
            if let Some(coin) = challenge.leaked_coin {
                return coin;
            }
        }
        self.fixed_guess
            .unwrap_or_else(|| (self.rng.next_u32() & 1) as u8)
    }
}
