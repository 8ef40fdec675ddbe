//! Sampling on top of a raw [`RngCore`] stream.
//!
//! Every random value in the crate is drawn through these helpers and they
//! consume the stream only through `next_u64`, one word per attempt, low
//! limbs first. A known seed therefore pins every byte of keygen and encaps
//! output, which is what the KAT files rely on.

use std::collections::VecDeque;

use rand::{CryptoRng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::modmath::WideUint;

/// Name recorded in KAT headers for the deterministic generator.
pub const KAT_GENERATOR: &str = "chacha20-rng (rand_chacha ChaCha20Rng::from_seed, 32-byte seed)";

/// Deterministic generator used for KAT replay.
pub fn kat_rng(seed: [u8; 32]) -> ChaCha20Rng {
    ChaCha20Rng::from_seed(seed)
}

fn mask_for(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Uniform value in `[0, n)` by masked rejection. `n = 1` consumes nothing.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, n: u64) -> u64 {
    assert!(n > 0, "empty range");
    if n == 1 {
        return 0;
    }
    let mask = mask_for(64 - (n - 1).leading_zeros());
    loop {
        let v = rng.next_u64() & mask;
        if v < n {
            return v;
        }
    }
}

/// Uniform value in `[1, n)`.
pub fn nonzero_below<R: RngCore + ?Sized>(rng: &mut R, n: u64) -> u64 {
    assert!(n > 1, "empty range");
    loop {
        let v = uniform_below(rng, n);
        if v != 0 {
            return v;
        }
    }
}

/// Uniform `bits`-bit integer with the top bit forced, i.e. in `[2^(bits-1), 2^bits)`.
pub fn exact_bits<R: RngCore + ?Sized>(rng: &mut R, bits: u32) -> WideUint {
    assert!((1..=WideUint::BITS).contains(&bits));
    let mut v = random_bits(rng, bits);
    v.set_bit(bits - 1);
    v
}

/// Uniform integer in `[0, 2^bits)`.
pub fn random_bits<R: RngCore + ?Sized>(rng: &mut R, bits: u32) -> WideUint {
    let mut limbs = [0u64; 4];
    let words = bits.div_ceil(64) as usize;
    for (i, limb) in limbs.iter_mut().enumerate().take(words) {
        let remaining = bits - 64 * i as u32;
        *limb = rng.next_u64() & mask_for(remaining);
    }
    WideUint::from_limbs(limbs)
}

/// Uniform value in `[0, n)` for wide `n`.
pub fn uniform_below_wide<R: RngCore + ?Sized>(rng: &mut R, n: &WideUint) -> WideUint {
    assert!(!n.is_zero(), "empty range");
    let bits = (*n - WideUint::ONE).bits();
    loop {
        let v = random_bits(rng, bits);
        if v < *n {
            return v;
        }
    }
}

/// Replays a fixed list of words; panics when exhausted.
///
/// Test fixtures use it to drive the samplers to chosen values.
#[derive(Debug, Clone, Default)]
pub struct ScriptedRng {
    words: VecDeque<u64>,
}

impl ScriptedRng {
    pub fn new(words: impl IntoIterator<Item = u64>) -> Self {
        Self {
            words: words.into_iter().collect(),
        }
    }

    pub fn remaining(&self) -> usize {
        self.words.len()
    }
}

impl RngCore for ScriptedRng {
    fn next_u32(&mut self) -> u32 {
        self.next_u64() as u32
    }

    fn next_u64(&mut self) -> u64 {
        self.words.pop_front().expect("scripted rng exhausted")
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        for chunk in dest.chunks_mut(8) {
            let w = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&w[..chunk.len()]);
        }
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}

// Only ever used to replay fixtures, but keygen requires a CryptoRng bound.
impl CryptoRng for ScriptedRng {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_below_rejects_out_of_range() {
        // 13 needs a 4-bit mask: 14 and 15 are rejected
        let mut rng = ScriptedRng::new([14, 15, 0x10 | 7]);
        assert_eq!(uniform_below(&mut rng, 13), 7);
        assert_eq!(rng.remaining(), 0);
    }

    #[test]
    fn exact_bits_sets_top_bit() {
        let mut rng = kat_rng([3; 32]);
        for _ in 0..1000 {
            assert_eq!(exact_bits(&mut rng, 136).bits(), 136);
        }
        let mut scripted = ScriptedRng::new([6798]);
        assert_eq!(exact_bits(&mut scripted, 13), WideUint::from_u64(6798));
    }

    #[test]
    fn wide_uniform_stays_in_range() {
        let n = WideUint::from_u128(3 << 70);
        let mut rng = kat_rng([9; 32]);
        for _ in 0..1000 {
            assert!(uniform_below_wide(&mut rng, &n) < n);
        }
    }

    #[test]
    fn seeded_stream_is_reproducible() {
        let a: Vec<u64> = (0..4).map({
            let mut r = kat_rng([1; 32]);
            move |_| r.next_u64()
        }).collect();
        let mut r = kat_rng([1; 32]);
        assert_eq!(a, (0..4).map(|_| r.next_u64()).collect::<Vec<_>>());
    }
}
