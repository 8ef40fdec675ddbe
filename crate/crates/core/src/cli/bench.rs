//! Latency measurement for keygen, encaps and decaps.

use std::fmt;
use std::hint::black_box;
use std::time::Instant;

use clap::ValueEnum;

use crate::kem::{decaps, encaps};
use crate::rng::kat_rng;
use crate::scheme::{keygen, ParameterSet};

pub const MIN_ITERATIONS: u64 = 1000;
pub const WARMUP: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchOp {
    Keygen,
    Encaps,
    Decaps,
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchOp::Keygen => "keygen",
            BenchOp::Encaps => "encaps",
            BenchOp::Decaps => "decaps",
        })
    }
}

/// Median and quartiles of per-call samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Quartiles {
    pub q1: u64,
    pub median: u64,
    pub q3: u64,
}

impl Quartiles {
    pub fn of(samples: &mut [u64]) -> Self {
        assert!(!samples.is_empty());
        samples.sort_unstable();
        let at = |q: usize| samples[(samples.len() - 1) * q / 4];
        Self {
            q1: at(1),
            median: at(2),
            q3: at(3),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchReport {
    pub op: BenchOp,
    pub label: String,
    pub iterations: u64,
    pub nanos: Quartiles,
    /// Time-stamp counter ticks, where the CPU exposes one.
    pub cycles: Option<Quartiles>,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = &self.nanos;
        write!(
            f,
            "{} {} iterations={} median_ns={} q1_ns={} q3_ns={}",
            self.op, self.label, self.iterations, n.median, n.q1, n.q3
        )?;
        if let Some(c) = &self.cycles {
            write!(f, " median_cycles={} q1_cycles={} q3_cycles={}", c.median, c.q1, c.q3)?;
        }
        Ok(())
    }
}

#[cfg(target_arch = "x86_64")]
fn cycles() -> Option<u64> {
    // SAFETY: rdtsc is available on every x86_64 CPU and has no side effects.
    Some(unsafe { core::arch::x86_64::_rdtsc() })
}

#[cfg(not(target_arch = "x86_64"))]
fn cycles() -> Option<u64> {
    None
}

/// Times `iterations` calls of `op` after [`WARMUP`] untimed ones.
/// Inputs are fixed up front from a seeded generator.
pub fn run(op: BenchOp, params: &ParameterSet, iterations: u64) -> BenchReport {
    let mut rng = kat_rng([0x5a; 32]);
    let (sk, pk) = keygen(params, &mut rng);
    let (ct, _) = encaps(&pk, &mut rng);
    let mut call = || match op {
        BenchOp::Keygen => {
            black_box(keygen(params, &mut rng));
        }
        BenchOp::Encaps => {
            black_box(encaps(&pk, &mut rng));
        }
        BenchOp::Decaps => {
            let _ = black_box(decaps(&sk, black_box(&ct)));
        }
    };
    for _ in 0..WARMUP {
        call();
    }
    let mut nanos = Vec::with_capacity(iterations as usize);
    let mut ticks = Vec::with_capacity(iterations as usize);
    for _ in 0..iterations {
        let c0 = cycles();
        let t0 = Instant::now();
        call();
        let elapsed = t0.elapsed();
        let c1 = cycles();
        nanos.push(elapsed.as_nanos() as u64);
        if let (Some(a), Some(b)) = (c0, c1) {
            ticks.push(b.wrapping_sub(a));
        }
    }
    BenchReport {
        op,
        label: params.label(),
        iterations,
        nanos: Quartiles::of(&mut nanos),
        cycles: (!ticks.is_empty()).then(|| Quartiles::of(&mut ticks)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartiles() {
        let mut v: Vec<u64> = (1..=9).rev().collect();
        assert_eq!(Quartiles::of(&mut v), Quartiles { q1: 3, median: 5, q3: 7 });
    }

    #[test]
    fn report_line() {
        let r = run(BenchOp::Decaps, &ParameterSet::toy(), 10);
        let line = r.to_string();
        assert!(line.starts_with("decaps toy-p13 iterations=10 median_ns="), "{line}");
        assert!(r.nanos.q1 <= r.nanos.median && r.nanos.median <= r.nanos.q3);
    }
}
