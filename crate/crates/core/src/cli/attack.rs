//! CSV drivers for the analysis oracles.
//!
//! Every oracle writes `instance,p,m,count,elapsed_us,detail` rows and then
//! checks its own invariant (the true witness or key is always recovered,
//! baseline adversaries have no advantage). A failed check exits with 3.

use std::io::Write;
use std::time::Instant;

use clap::{Subcommand, ValueEnum};
use rand::RngCore;

use super::{CliError, Seed};
use crate::analysis::{
    brute_force_solutions, ind_cpa_game, recover_f_ratio, reduce_mod_p, ring_key_search, Adversary, AnalysisError, ConstantGuess, FactorCandidate,
    GameParams, RandomGuess, SolutionCounting,
};
use crate::modmath::FieldPrime;
use crate::rng::{self, kat_rng};
use crate::scheme::{encrypt_block, keygen, toy, ParameterSet};

pub const HEADER: [&str; 6] = ["instance", "p", "m", "count", "elapsed_us", "detail"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdversaryKind {
    Random,
    Constant,
    Counting,
}

#[derive(Debug, Subcommand)]
pub enum Oracle {
    /// Enumerate every solution of a reduced block ciphertext.
    Bruteforce {
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        instances: u64,
        #[arg(long)]
        seed: Option<Seed>,
        /// Attack the fixed 13-element example instead of random keys.
        #[arg(long)]
        insecure_test_profile: bool,
    },
    /// Play the indistinguishability game on normalized challenges.
    Indcpa {
        #[arg(long, default_value_t = 13)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = AdversaryKind::Random)]
        adversary: AdversaryKind,
        #[arg(long)]
        seed: Option<Seed>,
    },
    /// Search every hidden ring of the given size.
    Ringsearch {
        #[arg(long, default_value_t = 7)]
        p: u64,
        #[arg(long, default_value_t = 10)]
        ring_bits: u32,
        #[arg(long, default_value_t = 1)]
        instances: u64,
        #[arg(long)]
        seed: Option<Seed>,
    },
    /// Recover the factor polynomials from unmasked central maps.
    Fratio {
        #[arg(long, default_value_t = 13)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        nb: usize,
        #[arg(long, default_value_t = 1)]
        lambda: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        instances: u64,
        #[arg(long)]
        seed: Option<Seed>,
    },
}

fn field(p: u64) -> Result<FieldPrime, CliError> {
    FieldPrime::new(p).map_err(|e| CliError::Usage(format!("--p {p}: {e}")))
}

fn analysis(e: AnalysisError) -> CliError {
    match e {
        AnalysisError::SearchSpaceTooLarge { .. } | AnalysisError::RingTooLarge { .. } => CliError::Usage(e.to_string()),
        _ => CliError::Crypto(e.to_string()),
    }
}

fn param(e: crate::scheme::ParamError) -> CliError {
    CliError::Usage(e.to_string())
}

struct Table<W: Write> {
    out: csv::Writer<W>,
    failures: Vec<String>,
}

impl<W: Write> Table<W> {
    fn new(out: W) -> Result<Self, CliError> {
        let mut out = csv::Writer::from_writer(out);
        out.write_record(HEADER).map_err(io)?;
        Ok(Self { out, failures: Vec::new() })
    }

    fn row(&mut self, instance: u64, p: u64, m: usize, count: u64, started: Instant, detail: &str) -> Result<(), CliError> {
        let elapsed = started.elapsed().as_micros();
        let cells = [instance.to_string(), p.to_string(), m.to_string(), count.to_string(), elapsed.to_string(), detail.to_string()];
        self.out.write_record(&cells).map_err(io)
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(mut self) -> Result<(), CliError> {
        self.out.flush().map_err(|e| CliError::Malformed(e.to_string()))?;
        match self.failures.first() {
            None => Ok(()),
            Some(first) => Err(CliError::Crypto(format!("oracle check failed ({} total): {first}", self.failures.len()))),
        }
    }
}

fn io(e: csv::Error) -> CliError {
    CliError::Malformed(e.to_string())
}

fn nonzero_noise<R: RngCore>(rng: &mut R, p: u64, m: usize) -> Vec<u64> {
    loop {
        let noise: Vec<u64> = (0..m).map(|_| rng::uniform_below(rng, p)).collect();
        if noise.iter().any(|&v| v != 0) {
            return noise;
        }
    }
}

pub fn run<W: Write>(oracle: Oracle, out: W) -> Result<(), CliError> {
    let mut table = Table::new(out)?;
    match oracle {
        Oracle::Bruteforce {
            p,
            m,
            instances,
            seed,
            insecure_test_profile,
        } => {
            if insecure_test_profile {
                let started = Instant::now();
                let (_, pk) = toy::keypair();
                let set = brute_force_solutions(&reduce_mod_p(&pk, &toy::ciphertext())).map_err(analysis)?;
                let witness = [toy::X, toy::NOISE[0], toy::NOISE[1]];
                let found = set.contains(&witness);
                table.row(0, 13, 2, set.count() as u64, started, &format!("witness={}", if found { "found" } else { "missing" }))?;
                table.check(found, || "toy witness (8,3,6) not among the solutions".into());
                return table.finish();
            }
            let params = ParameterSet::tiny(field(p)?, 1, 1, m).map_err(param)?;
            crate::analysis::bruteforce::search_space(p, m + 1).map_err(analysis)?;
            let mut rng = kat_rng(seed.map_or([0; 32], |s| s.0));
            for i in 0..instances {
                let started = Instant::now();
                let (_, pk) = keygen(&params, &mut rng);
                let x = rng::uniform_below(&mut rng, p);
                let noise = nonzero_noise(&mut rng, p, m);
                let ct = encrypt_block(&pk, x, &noise).map_err(|e| CliError::Crypto(e.to_string()))?;
                let set = brute_force_solutions(&reduce_mod_p(&pk, &ct)).map_err(analysis)?;
                let witness: Vec<u64> = std::iter::once(x).chain(noise).collect();
                let found = set.contains(&witness);
                table.row(i, p, m, set.count() as u64, started, &format!("witness={}", if found { "found" } else { "missing" }))?;
                table.check(found, || format!("instance {i}: witness {witness:?} not among the solutions"));
            }
        }
        Oracle::Indcpa {
            p,
            m,
            degree,
            trials,
            adversary,
            seed,
        } => {
            let params = GameParams {
                field: field(p)?,
                degree,
                noise: m,
            };
            let seed = seed.map_or([0; 32], |s| s.0);
            let mut rng = kat_rng(seed);
            let adv_seed = u64::from_le_bytes(seed[..8].try_into().expect("8 bytes"));
            let mut adv: Box<dyn Adversary> = match adversary {
                AdversaryKind::Random => Box::new(RandomGuess::new(adv_seed)),
                AdversaryKind::Constant => Box::new(ConstantGuess(0)),
                AdversaryKind::Counting => Box::new(SolutionCounting::new(adv_seed)),
            };
            let started = Instant::now();
            let report = ind_cpa_game(&params, adv.as_mut(), trials, &mut rng).map_err(|e| match e {
                AnalysisError::ShapeMismatch => CliError::Usage("need m >= 2, degree >= 1 and trials >= 1".into()),
                e => analysis(e),
            })?;
            let advantage = report.advantage();
            table.row(0, p, m, report.wins, started, &format!("trials={trials};advantage={advantage:.4}"))?;
            // four standard deviations of a fair coin, and never below 0.02
            let bound = (2.0 / (trials as f64).sqrt()).max(0.02);
            if adversary != AdversaryKind::Counting {
                table.check(advantage < bound, || format!("baseline adversary advantage {advantage:.4} >= {bound:.4}"));
            }
        }
        Oracle::Ringsearch { p, ring_bits, instances, seed } => {
            let params = ParameterSet::new(field(p)?, 1, 1, 2, ring_bits).map_err(param)?;
            if ring_bits > crate::analysis::ringsearch::MAX_RING_BITS {
                return Err(analysis(AnalysisError::RingTooLarge {
                    bits: ring_bits,
                    limit: crate::analysis::ringsearch::MAX_RING_BITS,
                }));
            }
            let mut rng = kat_rng(seed.map_or([0; 32], |s| s.0));
            for i in 0..instances {
                let started = Instant::now();
                let (sk, pk) = keygen(&params, &mut rng);
                let report = ring_key_search(&pk).map_err(analysis)?;
                let small = |w: &crate::modmath::WideUint| w.to_u64().expect("toy ring");
                let found = report.contains(small(sk.ring_modulus()), small(sk.k1().multiplier()), small(sk.k2().multiplier()));
                let detail = format!(
                    "work={};moduli={};true_key={}",
                    report.work,
                    report.candidates.len(),
                    if found { "found" } else { "missing" }
                );
                table.row(i, p, 2, report.key_count(), started, &detail)?;
                table.check(found, || format!("instance {i}: true ring key not among the survivors"));
            }
        }
        Oracle::Fratio {
            p,
            nb,
            lambda,
            m,
            instances,
            seed,
        } => {
            let f = field(p)?;
            let params = ParameterSet::tiny(f, nb, lambda, m).map_err(param)?;
            let mut rng = kat_rng(seed.map_or([0; 32], |s| s.0));
            for i in 0..instances {
                let started = Instant::now();
                let (sk, pk) = keygen(&params, &mut rng);
                let plain = sk.unmask(&pk);
                let mut count = 0;
                let mut found = [false; 2];
                for (k, (map, factor)) in [(&plain.p1, sk.f1()), (&plain.p2, sk.f2())].into_iter().enumerate() {
                    let got = recover_f_ratio(map, nb, lambda, &f).map_err(analysis)?;
                    count += got.len() as u64;
                    found[k] = got.contains(&FactorCandidate::from_factor(factor, &f));
                }
                let mark = |b: bool| if b { "found" } else { "missing" };
                table.row(i, p, m, count, started, &format!("f1={};f2={}", mark(found[0]), mark(found[1])))?;
                table.check(found == [true; 2], || format!("instance {i}: true factor not recovered"));
            }
        }
    }
    table.finish()
}
