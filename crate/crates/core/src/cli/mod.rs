//! The `hppk` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 malformed input or I/O, 3 cryptographic
//! failure (decapsulation, KAT mismatch, failed oracle check).

pub mod attack;
pub mod bench;
pub mod kat;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::codec::{deserialize_ct, deserialize_pk, deserialize_sk, serialize_ct, serialize_pk, serialize_sk};
use crate::kem::{decaps, encaps};
use crate::rng::kat_rng;
use crate::scheme::{keygen, ParameterSet, SecurityLevel};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Malformed(String),
    #[error("{0}")]
    Crypto(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Malformed(_) => 2,
            CliError::Crypto(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hppk", version, about = "HPPK key encapsulation and toy cryptanalysis oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Profile {
    /// Security level: 1, 3 or 5.
    #[arg(long, default_value = "1")]
    level: SecurityLevel,
    /// Order of the base polynomial: 1 or 2.
    #[arg(long, default_value_t = 1)]
    nb: usize,
    /// Use the 13-element toy field instead (not secure).
    #[arg(long)]
    insecure_test_profile: bool,
}

impl Profile {
    fn params(&self) -> Result<ParameterSet, CliError> {
        if self.insecure_test_profile {
            return Ok(ParameterSet::toy());
        }
        ParameterSet::level(self.level, self.nb).map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// 32-byte seed given as 64 hex digits.
#[derive(Debug, Clone, Copy)]
pub struct Seed(pub [u8; 32]);

impl std::str::FromStr for Seed {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = hex::decode(s).map_err(|e| format!("seed is not hex: {e}"))?;
        bytes
            .try_into()
            .map(Seed)
            .map_err(|b: Vec<u8>| format!("seed must be 32 bytes, got {}", b.len()))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a key pair: writes OUT.hpk and OUT.hsk.
    Keygen {
        #[command(flatten)]
        profile: Profile,
        #[arg(long)]
        seed: Option<Seed>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encapsulate to a public key: writes OUT.hct and OUT.hss.
    Encaps {
        #[command(flatten)]
        profile: Profile,
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        seed: Option<Seed>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decapsulate a ciphertext: writes OUT.hss.
    Decaps {
        #[command(flatten)]
        profile: Profile,
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        ct: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate or verify known-answer test files.
    Kat {
        #[command(subcommand)]
        action: KatAction,
    },
    /// Time one operation and report median and quartile latencies.
    Bench {
        #[arg(long, value_enum)]
        op: bench::BenchOp,
        #[command(flatten)]
        profile: Profile,
        #[arg(long, default_value_t = bench::MIN_ITERATIONS)]
        iterations: u64,
    },
    /// Run a toy-scale cryptanalysis oracle; CSV on stdout.
    Attack {
        #[command(subcommand)]
        oracle: attack::Oracle,
    },
}

#[derive(Debug, Subcommand)]
enum KatAction {
    Generate {
        #[arg(long)]
        out: PathBuf,
        /// Base seed the per-record seeds are drawn from.
        #[arg(long)]
        seed: Option<Seed>,
    },
    Verify {
        file: PathBuf,
    },
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn seeded_or_os(seed: Option<Seed>) -> rand_chacha::ChaCha20Rng {
    use rand::SeedableRng;
    match seed {
        Some(Seed(s)) => kat_rng(s),
        None => rand_chacha::ChaCha20Rng::from_entropy(),
    }
}

fn malformed(what: &str) -> impl Fn(crate::codec::CodecError) -> CliError + '_ {
    move |e| CliError::Malformed(format!("{what}: {e}"))
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Keygen { profile, seed, out } => {
            let params = profile.params()?;
            let (sk, pk) = keygen(&params, &mut seeded_or_os(seed));
            write(&with_suffix(&out, "hpk"), &serialize_pk(&pk))?;
            write(&with_suffix(&out, "hsk"), &serialize_sk(&sk))
        }
        Command::Encaps { profile, pk, seed, out } => {
            let params = profile.params()?;
            let pk = deserialize_pk(&params, &read(&pk)?).map_err(malformed("public key"))?;
            let (ct, ss) = encaps(&pk, &mut seeded_or_os(seed));
            write(&with_suffix(&out, "hct"), &serialize_ct(&params, &ct))?;
            write(&with_suffix(&out, "hss"), ss.as_bytes())
        }
        Command::Decaps { profile, sk, ct, out } => {
            let params = profile.params()?;
            let sk = deserialize_sk(&params, &read(&sk)?).map_err(malformed("secret key"))?;
            let ct = deserialize_ct(&params, &read(&ct)?).map_err(malformed("ciphertext"))?;
            let ss = decaps(&sk, &ct).map_err(|e| CliError::Crypto(e.to_string()))?;
            write(&with_suffix(&out, "hss"), ss.as_bytes())
        }
        Command::Kat { action } => match action {
            KatAction::Generate { out, seed } => {
                let records = kat::generate_suite(seed.map_or([0; 32], |s| s.0));
                write(&out, kat::format_suite(&records).as_bytes())
            }
            KatAction::Verify { file } => {
                let text = String::from_utf8(read(&file)?).map_err(|e| CliError::Malformed(format!("{}: {e}", file.display())))?;
                let records = kat::parse_suite(&text).map_err(|e| CliError::Malformed(e.to_string()))?;
                let mut failures = 0;
                for record in &records {
                    match kat::verify_record(record) {
                        Ok(()) => println!("PASS {}", record.label),
                        Err(field) => {
                            failures += 1;
                            println!("FAIL {}: {field}", record.label);
                        }
                    }
                }
                if failures > 0 {
                    return Err(CliError::Crypto(format!("{failures} of {} records failed", records.len())));
                }
                Ok(())
            }
        },
        Command::Bench { op, profile, iterations } => {
            if iterations < bench::MIN_ITERATIONS {
                return Err(CliError::Usage(format!("--iterations must be at least {}", bench::MIN_ITERATIONS)));
            }
            let report = bench::run(op, &profile.params()?, iterations);
            println!("{report}");
            Ok(())
        }
        Command::Attack { oracle } => attack::run(oracle, &mut std::io::stdout().lock()),
    }
}

/// Parses `args` (program name first), runs the command, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
