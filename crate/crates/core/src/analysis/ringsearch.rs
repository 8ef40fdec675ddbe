//! Exhaustive search for the hidden ring at toy sizes.
//!
//! For every modulus `S` above the largest public entry and every unit `u` of
//! `Z_S`, the map `u·P_k mod S mod p` is tested for the `b·f` structure with
//! [`recover_f_ratio`]. The true `(S, R_k^-1)` always passes; the point is to
//! measure how the work grows with `|S|` and how many impostors survive.

use std::ops::Range;

use super::fratio::recover_f_ratio;
use super::AnalysisError;
use crate::scheme::{Matrix, PublicKey};

pub const MAX_RING_BITS: u32 = 14;
/// Cap on `(S, u)` pairs across both maps.
pub const WORK_LIMIT: u64 = 1 << 28;

/// Units `u` that unmask each public map into a product form under one modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCandidate {
    pub modulus: u64,
    pub r1_inverses: Vec<u64>,
    pub r2_inverses: Vec<u64>,
}

impl RingCandidate {
    /// Key triples `(S, R1, R2)` this modulus admits.
    pub fn key_count(&self) -> u64 {
        (self.r1_inverses.len() * self.r2_inverses.len()) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSearchReport {
    pub candidates: Vec<RingCandidate>,
    /// `(S, u)` pairs tested, counting both maps.
    pub work: u64,
}

impl RingSearchReport {
    pub fn key_count(&self) -> u64 {
        self.candidates.iter().map(RingCandidate::key_count).sum()
    }

    /// Whether `(S, R1, R2)` survived, with `R_k` given as multipliers.
    pub fn contains(&self, modulus: u64, r1: u64, r2: u64) -> bool {
        let Some(c) = self.candidates.iter().find(|c| c.modulus == modulus) else {
            return false;
        };
        let inv = |r| inverse_u64(r, modulus);
        matches!((inv(r1), inv(r2)), (Some(u1), Some(u2)) if c.r1_inverses.contains(&u1) && c.r2_inverses.contains(&u2))
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn inverse_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Searches every modulus of the key's ring bit length.
pub fn ring_key_search(pk: &PublicKey) -> Result<RingSearchReport, AnalysisError> {
    let bits = pk.params().ring_bits();
    if bits > MAX_RING_BITS {
        return Err(AnalysisError::RingTooLarge { bits, limit: MAX_RING_BITS });
    }
    ring_key_search_in(pk, 1 << (bits - 1)..1 << bits)
}

/// Searches moduli in `moduli`, skipping any not above the largest public entry.
pub fn ring_key_search_in(pk: &PublicKey, moduli: Range<u64>) -> Result<RingSearchReport, AnalysisError> {
    let params = pk.params();
    if params.ring_bits() > MAX_RING_BITS || moduli.end > 1 << MAX_RING_BITS {
        return Err(AnalysisError::RingTooLarge {
            bits: params.ring_bits(),
            limit: MAX_RING_BITS,
        });
    }
    let entries = |m: &Matrix<_>| m.map(|v: &crate::modmath::WideUint| v.to_u64().expect("ring entries fit in 14 bits"));
    let (p1, p2) = (entries(pk.p1()), entries(pk.p2()));
    let floor = p1.as_slice().iter().chain(p2.as_slice()).max().map_or(0, |&m| m + 1);
    let moduli = moduli.start.max(floor).max(2)..moduli.end;
    let bound: u64 = moduli.clone().map(|s| 2 * s).sum();
    if bound > WORK_LIMIT {
        return Err(AnalysisError::SearchSpaceTooLarge {
            p: bound,
            variables: 1,
            limit: WORK_LIMIT,
        });
    }

    let field = params.field();
    let p = field.value();
    let passes = |map: &Matrix<u64>, s: u64, u: u64| {
        let plain = map.map(|&v| v * u % s % p);
        recover_f_ratio(&plain, params.base_order(), params.lambda(), field).is_ok()
    };
    let mut work = 0;
    let mut candidates = Vec::new();
    for s in moduli {
        let (mut r1_inverses, mut r2_inverses) = (Vec::new(), Vec::new());
        for u in (1..s).filter(|&u| gcd_u64(u, s) == 1) {
            work += 2;
            if passes(&p1, s, u) {
                r1_inverses.push(u);
            }
            if passes(&p2, s, u) {
                r2_inverses.push(u);
            }
        }
        if !r1_inverses.is_empty() && !r2_inverses.is_empty() {
            candidates.push(RingCandidate {
                modulus: s,
                r1_inverses,
                r2_inverses,
            });
        }
    }
    Ok(RingSearchReport { candidates, work })
}
