//! Command-line front end: setup, key generation, registration, validation,
//! encapsulation, decapsulation, benchmarking, and self-test.
//!
//! Exit codes: 0 success, 2 usage, 3 validation failure, 4 bottom (⊥),
//! 5 I/O. Session keys print as lowercase hex on a final `CK: ` line. The
//! global `--seed` makes every command deterministic; without it the
//! platform entropy source drives all randomness.

use clap::{Parser, Subcommand, ValueEnum};
use dbe::directory::{BoundParams, Directory, SchemeId};
use dbe::error::Error;
use dbe::groups::{Backend, GroupParams};
use dbe::rng::{entropy_rng, seeded_rng};
use dbe::selftest::{run_selftest, SelftestOptions};
use dbe::serial::{ArtifactKind, Reader};
use dbe::{dbe_ad, dbe_ss};
use rand::RngCore;
use rand_chacha::ChaCha20Rng;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::exit;
use std::time::Instant;

const EXIT_USAGE: i32 = 2;
const EXIT_VALIDATION: i32 = 3;
const EXIT_BOTTOM: i32 = 4;
const EXIT_IO: i32 = 5;

#[derive(Parser)]
#[command(
    name = "dbe",
    version,
    about = "Distributed broadcast encryption toolkit (desk-scale, toy security)"
)]
struct Cli {
    /// Hex seed; fixes all randomness for reproducible runs.
    #[arg(long, global = true, value_name = "HEX")]
    seed: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Ss,
    Ad,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Curve,
    Symbolic,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Backend {
        match b {
            BackendArg::Curve => Backend::Curve,
            BackendArg::Symbolic => Backend::Symbolic,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate public parameters and write them to a file.
    Setup {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Number of users L.
        #[arg(long)]
        users: u32,
        /// Session-key length in bits.
        #[arg(long)]
        lambda: u32,
        #[arg(long, value_enum)]
        backend: BackendArg,
        /// Width of each prime factor of the group order.
        #[arg(long, default_value_t = 16)]
        prime_bits: u32,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Generate a user key pair for an index.
    Keygen {
        #[arg(long, value_name = "FILE")]
        pp: PathBuf,
        #[arg(long)]
        index: u32,
        #[arg(long, value_name = "FILE")]
        out_usk: PathBuf,
        #[arg(long, value_name = "FILE")]
        out_upk: PathBuf,
    },
    /// Register a public key in a directory (created on first use).
    Register {
        #[arg(long, value_name = "FILE")]
        pp: PathBuf,
        #[arg(long, value_name = "FILE")]
        dir: PathBuf,
        #[arg(long)]
        index: u32,
        #[arg(long, value_name = "FILE")]
        upk: PathBuf,
        /// Reject invalid keys instead of storing them flagged.
        #[arg(long)]
        strict: bool,
    },
    /// Check a public key against the parameters.
    Validate {
        #[arg(long, value_name = "FILE")]
        pp: PathBuf,
        #[arg(long)]
        index: u32,
        #[arg(long, value_name = "FILE")]
        upk: PathBuf,
    },
    /// Encapsulate a session key to a recipient set.
    Encaps {
        #[arg(long, value_name = "FILE")]
        pp: PathBuf,
        #[arg(long, value_name = "FILE")]
        dir: PathBuf,
        /// Comma-separated recipient indices, e.g. 1,3,7.
        #[arg(long)]
        set: String,
        #[arg(long, value_name = "FILE")]
        out_header: PathBuf,
    },
    /// Recover the session key from a header.
    Decaps {
        #[arg(long, value_name = "FILE")]
        pp: PathBuf,
        #[arg(long, value_name = "FILE")]
        dir: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long)]
        index: u32,
        #[arg(long, value_name = "FILE")]
        usk: PathBuf,
        #[arg(long, value_name = "FILE")]
        header: PathBuf,
    },
    /// Sweep user counts, report element counts and wall-clock times.
    Bench {
        #[arg(long, value_name = "FILE")]
        pp: PathBuf,
        /// Comma-separated user counts, e.g. 1,2,4,8.
        #[arg(long)]
        sweep: String,
    },
    /// Run the built-in invariant suites at toy parameters.
    Selftest {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let seed_bytes = match cli.seed.as_deref().map(hex::decode).transpose() {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: --seed is not valid hex: {e}");
            exit(EXIT_USAGE);
        }
    };
    match run(cli.command, seed_bytes) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            exit(exit_code_for(&e));
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::AlreadyExists(_) => EXIT_IO,
        Error::InvalidParameter(_)
        | Error::InvalidBits(_)
        | Error::IndexOutOfRange { .. }
        | Error::EmptySet
        | Error::NonDistinctInputs => EXIT_USAGE,
        _ => EXIT_VALIDATION,
    }
}

fn command_rng(seed: Option<&[u8]>) -> ChaCha20Rng {
    match seed {
        Some(s) => seeded_rng(s),
        None => entropy_rng(),
    }
}

fn parse_set(s: &str) -> Result<BTreeSet<u32>, Error> {
    let mut out = BTreeSet::new();
    for part in s.split(',') {
        let v: u32 = part
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("index {part:?}")))?;
        out.insert(v);
    }
    if out.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(out)
}

/// Either scheme's parameters, dispatched on the container kind.
enum Params {
    Ss(dbe_ss::PublicParams),
    Ad(dbe_ad::AdPublicParams),
}

fn load_params(path: &Path) -> Result<Params, Error> {
    let bytes = std::fs::read(path)?;
    match Reader::peek_kind(&bytes)? {
        ArtifactKind::PublicParamsSs => Ok(Params::Ss(dbe_ss::PublicParams::from_bytes(&bytes)?)),
        ArtifactKind::PublicParamsAd => Ok(Params::Ad(dbe_ad::AdPublicParams::from_bytes(&bytes)?)),
        other => Err(Error::MalformedEncoding(format!(
            "{} holds {other:?}, not public parameters",
            path.display()
        ))),
    }
}

fn bound_params(p: &Params) -> BoundParams {
    match p {
        Params::Ss(pp) => BoundParams::Ss(pp.clone()),
        Params::Ad(pp) => BoundParams::Ad(pp.clone()),
    }
}

fn open_or_create_dir(params: &Params, path: &Path) -> Result<Directory, Error> {
    if path.exists() {
        Directory::open(bound_params(params), path)
    } else {
        Directory::create(bound_params(params), path)
    }
}

fn run(command: Command, seed: Option<Vec<u8>>) -> Result<i32, Error> {
    let seed = seed.as_deref();
    match command {
        Command::Setup {
            scheme,
            users,
            lambda,
            backend,
            prime_bits,
            out,
        } => {
            let mut rng = command_rng(seed);
            let mut group_seed = [0u8; 32];
            rng.fill_bytes(&mut group_seed);
            let group = GroupParams::generate(backend.into(), prime_bits, &group_seed)?;
            if group.is_toy() {
                eprintln!("warning: toy parameters - no cryptographic security");
            }
            let (bytes, scheme_id) = match scheme {
                SchemeArg::Ss => {
                    let pp = dbe_ss::setup(&mut rng, group.clone(), users, lambda)?;
                    (pp.to_bytes(), SchemeId::Ss)
                }
                SchemeArg::Ad => {
                    let pp = dbe_ad::setup(&mut rng, group.clone(), users, lambda)?;
                    (pp.to_bytes(), SchemeId::Ad)
                }
            };
            std::fs::write(&out, &bytes)?;
            println!(
                "wrote {} (scheme={} users={} lambda={} {})",
                out.display(),
                scheme_id,
                users,
                lambda,
                group
            );
            Ok(0)
        }

        Command::Keygen {
            pp,
            index,
            out_usk,
            out_upk,
        } => {
            let params = load_params(&pp)?;
            let mut rng = command_rng(seed);
            match &params {
                Params::Ss(pp) => {
                    let (usk, upk) = dbe_ss::gen_key(&mut rng, index, pp)?;
                    std::fs::write(&out_usk, usk.to_bytes(pp))?;
                    std::fs::write(&out_upk, upk.to_bytes(pp))?;
                }
                Params::Ad(pp) => {
                    let kp = dbe_ad::gen_key(&mut rng, index, pp)?;
                    std::fs::write(&out_usk, kp.to_bytes(pp))?;
                    std::fs::write(&out_upk, kp.public.to_bytes(pp))?;
                }
            }
            println!(
                "wrote {} and {} for index {}",
                out_usk.display(),
                out_upk.display(),
                index
            );
            Ok(0)
        }

        Command::Register {
            pp,
            dir,
            index,
            upk,
            strict,
        } => {
            let params = load_params(&pp)?;
            let mut directory = open_or_create_dir(&params, &dir)?;
            let upk_bytes = std::fs::read(&upk)?;
            let entry = directory.register(index, &upk_bytes, strict)?;
            println!(
                "registered index={} validated={} seq={}",
                entry.index,
                u8::from(entry.validated),
                entry.seq
            );
            Ok(0)
        }

        Command::Validate { pp, index, upk } => {
            let params = load_params(&pp)?;
            let upk_bytes = std::fs::read(&upk)?;
            let verdict = match &params {
                Params::Ss(pp) => {
                    let upk = dbe_ss::UserPublicKey::from_bytes(&upk_bytes, pp)?;
                    dbe_ss::is_valid(index, &upk, pp)?
                }
                Params::Ad(pp) => {
                    let upk = dbe_ad::AdUserPublicKey::from_bytes(&upk_bytes, pp)?;
                    dbe_ad::is_valid(index, &upk, pp)?
                }
            };
            if verdict {
                println!("valid");
                Ok(0)
            } else {
                println!("invalid");
                Ok(EXIT_VALIDATION)
            }
        }

        Command::Encaps {
            pp,
            dir,
            set,
            out_header,
        } => {
            let params = load_params(&pp)?;
            let recipients = parse_set(&set)?;
            let directory = Directory::open(bound_params(&params), &dir)?;
            let indices: Vec<u32> = recipients.iter().copied().collect();
            let mut rng = command_rng(seed);
            let key_hex = match &params {
                Params::Ss(pp) => {
                    let upks = directory.ss_upks(&indices, true)?;
                    let (header, key) = dbe_ss::encaps(&mut rng, &recipients, &upks, pp)?;
                    std::fs::write(&out_header, header.to_bytes(pp))?;
                    key.to_hex()
                }
                Params::Ad(pp) => {
                    let upks = directory.ad_upks(&indices, true)?;
                    let (header, key) = dbe_ad::encaps(&mut rng, &recipients, &upks, pp)?;
                    std::fs::write(&out_header, header.to_bytes(pp))?;
                    key.to_hex()
                }
            };
            println!("wrote {}", out_header.display());
            println!("CK: {key_hex}");
            Ok(0)
        }

        Command::Decaps {
            pp,
            dir,
            set,
            index,
            usk,
            header,
        } => {
            let params = load_params(&pp)?;
            let recipients = parse_set(&set)?;
            let directory = Directory::open(bound_params(&params), &dir)?;
            let indices: Vec<u32> = recipients.iter().copied().collect();
            let usk_bytes = std::fs::read(&usk)?;
            let header_bytes = std::fs::read(&header)?;
            let outcome = match &params {
                Params::Ss(pp) => {
                    let upks = directory.ss_upks(&indices, true)?;
                    let usk = dbe_ss::UserSecretKey::from_bytes(&usk_bytes, pp)?;
                    let header = dbe_ss::CiphertextHeader::from_bytes(&header_bytes, pp)?;
                    dbe_ss::decaps(&recipients, &header, index, &usk, &upks, pp)?
                        .map(|k| k.to_hex())
                }
                Params::Ad(pp) => {
                    let upks = directory.ad_upks(&indices, true)?;
                    let keypair = dbe_ad::AdKeyPair::from_bytes(&usk_bytes, pp)?;
                    let header = dbe_ad::AdCiphertextHeader::from_bytes(&header_bytes, pp)?;
                    dbe_ad::decaps(&recipients, &header, index, &keypair, &upks, pp)?
                        .map(|k| k.to_hex())
                }
            };
            match outcome {
                Some(hex) => {
                    println!("CK: {hex}");
                    Ok(0)
                }
                None => {
                    println!("BOTTOM");
                    Ok(EXIT_BOTTOM)
                }
            }
        }

        Command::Bench { pp, sweep } => {
            let params = load_params(&pp)?;
            let sweep = parse_set(&sweep)?;
            bench(&params, &sweep, seed)
        }

        Command::Selftest { inject_fault } => {
            let report = run_selftest(&SelftestOptions {
                seed: seed.map(<[u8]>::to_vec).unwrap_or_default(),
                inject_fault,
            });
            print!("{report}");
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn bench(params: &Params, sweep: &BTreeSet<u32>, seed: Option<&[u8]>) -> Result<i32, Error> {
    let (group, lambda, scheme) = match params {
        Params::Ss(pp) => (pp.group().clone(), pp.lambda(), SchemeId::Ss),
        Params::Ad(pp) => (pp.group().clone(), pp.lambda(), SchemeId::Ad),
    };
    println!(
        "scheme={} backend={} lambda={}",
        scheme,
        group.backend(),
        lambda
    );
    println!(
        "{:>4} {:>6} {:>6} {:>5} {:>5} {:>4} {:>10} {:>10} {:>10} {:>10}",
        "L", "pp_g", "pp_gt", "usk", "upk", "ch", "setup_ms", "keygen_ms", "encaps_ms", "decaps_ms"
    );
    let mut all_counts_ok = true;
    for &users in sweep {
        let mut rng = command_rng(seed);
        let ms = |t: Instant| t.elapsed().as_secs_f64() * 1e3;
        match scheme {
            SchemeId::Ss => {
                let t0 = Instant::now();
                let pp = dbe_ss::setup(&mut rng, group.clone(), users, lambda)?;
                let setup_ms = ms(t0);
                let t0 = Instant::now();
                let (usk1, upk1) = dbe_ss::gen_key(&mut rng, 1, &pp)?;
                let keygen_ms = ms(t0);
                let mut upks = std::collections::BTreeMap::new();
                upks.insert(1, upk1);
                for i in 2..=users {
                    let (_, upk) = dbe_ss::gen_key(&mut rng, i, &pp)?;
                    upks.insert(i, upk);
                }
                let set: BTreeSet<u32> = (1..=users).collect();
                let t0 = Instant::now();
                let (header, _key) = dbe_ss::encaps(&mut rng, &set, &upks, &pp)?;
                let encaps_ms = ms(t0);
                let t0 = Instant::now();
                let _ = dbe_ss::decaps(&set, &header, 1, &usk1, &upks, &pp)?;
                let decaps_ms = ms(t0);

                let (pp_g, pp_gt) = pp.element_count();
                let upk_count = upks[&1].element_count();
                let ch_count = header.element_count();
                let counts_ok = pp_g == (3 * users + 1) as usize
                    && pp_gt == 1
                    && upk_count == users as usize
                    && ch_count == 2;
                all_counts_ok &= counts_ok;
                println!(
                    "{:>4} {:>6} {:>6} {:>5} {:>5} {:>4} {:>10.3} {:>10.3} {:>10.3} {:>10.3}{}",
                    users,
                    pp_g,
                    pp_gt,
                    1,
                    upk_count,
                    ch_count,
                    setup_ms,
                    keygen_ms,
                    encaps_ms,
                    decaps_ms,
                    if counts_ok { "" } else { "  COUNT-MISMATCH" }
                );
            }
            SchemeId::Ad => {
                let t0 = Instant::now();
                let pp = dbe_ad::setup(&mut rng, group.clone(), users, lambda)?;
                let setup_ms = ms(t0);
                let t0 = Instant::now();
                let kp1 = dbe_ad::gen_key(&mut rng, 1, &pp)?;
                let keygen_ms = ms(t0);
                let mut upks = std::collections::BTreeMap::new();
                upks.insert(1, kp1.public.clone());
                for i in 2..=users {
                    let kp = dbe_ad::gen_key(&mut rng, i, &pp)?;
                    upks.insert(i, kp.public.clone());
                }
                let set: BTreeSet<u32> = (1..=users).collect();
                let t0 = Instant::now();
                let (header, _key) = dbe_ad::encaps(&mut rng, &set, &upks, &pp)?;
                let encaps_ms = ms(t0);
                let t0 = Instant::now();
                let _ = dbe_ad::decaps(&set, &header, 1, &kp1, &upks, &pp)?;
                let decaps_ms = ms(t0);

                let (pp_g, pp_gt) = pp.element_count();
                let upk_count = upks[&1].element_count();
                let ch_count = header.element_count();
                // Each half is a basic key for the 2L-slot instance, so a
                // doubled public key carries 2·(2L) elements.
                let counts_ok = pp_g == (6 * users + 1) as usize
                    && pp_gt == 1
                    && upk_count == (4 * users) as usize
                    && ch_count == 4;
                all_counts_ok &= counts_ok;
                println!(
                    "{:>4} {:>6} {:>6} {:>5} {:>5} {:>4} {:>10.3} {:>10.3} {:>10.3} {:>10.3}{}",
                    users,
                    pp_g,
                    pp_gt,
                    1,
                    upk_count,
                    ch_count,
                    setup_ms,
                    keygen_ms,
                    encaps_ms,
                    decaps_ms,
                    if counts_ok { "" } else { "  COUNT-MISMATCH" }
                );
            }
        }
    }
    Ok(if all_counts_ok { 0 } else { 1 })
}
