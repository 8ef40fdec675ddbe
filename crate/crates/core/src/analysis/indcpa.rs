//! Chosen-plaintext indistinguishability game on normalized challenges.
//!
//! A challenge is a single congruence `Ĥ(x, x_1..x_{m-1}) ≡ 1` with
//! `Ĥ = Σ_{i,j} h_ij·x^i·x_j`, scaled so that the hidden message `m_b` and
//! the simulator's noise satisfy it. An adversary that sees `(m0, m1, Ĥ)`
//! must name `b`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::bruteforce::search_space;
use super::AnalysisError;
use crate::modmath::FieldPrime;
use crate::rng;
use crate::scheme::{block_monomials, Matrix};

/// Shape of the game: field, degree in `x`, and total noise count `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameParams {
    pub field: FieldPrime,
    pub degree: usize,
    pub noise: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Challenge {
    field: FieldPrime,
    coefficients: Matrix<u64>,
}

impl Challenge {
    pub fn field(&self) -> &FieldPrime {
        &self.field
    }

    pub fn coefficients(&self) -> &Matrix<u64> {
        &self.coefficients
    }

    /// `Ĥ(x, noise)`
    pub fn evaluate(&self, x: u64, noise: &[u64]) -> u64 {
        let f = &self.field;
        block_monomials(x, noise, self.coefficients.rows(), f)
            .iter()
            .zip(self.coefficients.as_slice())
            .fold(0, |acc, (&m, &c)| f.add(acc, f.mul(m, c)))
    }

    /// Number of noise vectors with `Ĥ(x, noise) ≡ 1`, by enumeration.
    pub fn solution_count(&self, x: u64) -> u64 {
        let p = self.field.value();
        let vars = self.coefficients.cols();
        let mut noise = vec![0u64; vars];
        let mut count = 0;
        loop {
            if self.evaluate(x, &noise) == 1 {
                count += 1;
            }
            let Some(i) = noise.iter().rposition(|&v| v + 1 < p) else {
                return count;
            };
            noise[i] += 1;
            noise[i + 1..].iter_mut().for_each(|v| *v = 0);
        }
    }
}

pub trait Adversary {
    /// The two distinct messages to be distinguished.
    fn choose(&mut self, field: &FieldPrime) -> (u64, u64);
    /// Returns the guessed bit, 0 or 1.
    fn guess(&mut self, m0: u64, m1: u64, challenge: &Challenge) -> u8;
}

fn distinct_pair<R: RngCore>(rng: &mut R, field: &FieldPrime) -> (u64, u64) {
    let p = field.value();
    let m0 = rng::uniform_below(rng, p);
    let m1 = (m0 + 1 + rng::uniform_below(rng, p - 1)) % p;
    (m0, m1)
}

/// Ignores the challenge entirely.
pub struct RandomGuess(ChaCha20Rng);

impl RandomGuess {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha20Rng::seed_from_u64(seed))
    }
}

impl Adversary for RandomGuess {
    fn choose(&mut self, field: &FieldPrime) -> (u64, u64) {
        distinct_pair(&mut self.0, field)
    }

    fn guess(&mut self, _: u64, _: u64, _: &Challenge) -> u8 {
        self.0.gen_range(0..=1)
    }
}

/// Always answers the same bit.
pub struct ConstantGuess(pub u8);

impl Adversary for ConstantGuess {
    fn choose(&mut self, _: &FieldPrime) -> (u64, u64) {
        (0, 1)
    }

    fn guess(&mut self, _: u64, _: u64, _: &Challenge) -> u8 {
        self.0
    }
}

/// Unbounded adversary: solves the challenge for both messages and picks the
/// one with more solutions, flipping a coin on ties.
pub struct SolutionCounting(ChaCha20Rng);

impl SolutionCounting {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha20Rng::seed_from_u64(seed))
    }
}

impl Adversary for SolutionCounting {
    fn choose(&mut self, field: &FieldPrime) -> (u64, u64) {
        distinct_pair(&mut self.0, field)
    }

    fn guess(&mut self, m0: u64, m1: u64, challenge: &Challenge) -> u8 {
        let (c0, c1) = (challenge.solution_count(m0), challenge.solution_count(m1));
        match c0.cmp(&c1) {
            std::cmp::Ordering::Greater => 0,
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Equal => self.0.gen_range(0..=1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameReport {
    pub trials: u64,
    pub wins: u64,
}

impl GameReport {
    pub fn win_rate(&self) -> f64 {
        self.wins as f64 / self.trials as f64
    }

    /// `|win_rate - 1/2|`
    pub fn advantage(&self) -> f64 {
        (self.win_rate() - 0.5).abs()
    }
}

/// Runs `trials` independent rounds.
pub fn ind_cpa_game<A: Adversary + ?Sized, R: RngCore>(
    params: &GameParams,
    adversary: &mut A,
    trials: u64,
    rng: &mut R,
) -> Result<GameReport, AnalysisError> {
    if params.noise < 2 || params.degree < 1 || trials == 0 {
        return Err(AnalysisError::ShapeMismatch);
    }
    let field = params.field;
    let p = field.value();
    search_space(p, params.noise + 1)?;
    let (rows, cols) = (params.degree + 1, params.noise - 1);
    let mut wins = 0;
    for _ in 0..trials {
        let (m0, m1) = adversary.choose(&field);
        assert!(m0 != m1 && m0 < p && m1 < p, "adversary chose invalid messages");
        let b = rng::uniform_below(rng, 2) as u8;
        let hidden = if b == 0 { m0 } else { m1 };
        let challenge = loop {
            let data = (0..rows * cols).map(|_| rng::uniform_below(rng, p)).collect();
            let raw = Challenge {
                field,
                coefficients: Matrix::from_vec(rows, cols, data).expect("shape"),
            };
            let noise: Vec<u64> = (0..cols).map(|_| rng::uniform_below(rng, p)).collect();
            if let Some(inv) = field.inv(raw.evaluate(hidden, &noise)) {
                break Challenge {
                    field,
                    coefficients: raw.coefficients.map(|&c| field.mul(c, inv)),
                };
            }
        };
        if adversary.guess(m0, m1, &challenge) == b {
            wins += 1;
        }
    }
    Ok(GameReport { trials, wins })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::kat_rng;

    fn params(p: u64, noise: usize) -> GameParams {
        GameParams {
            field: FieldPrime::new(p).unwrap(),
            degree: 2,
            noise,
        }
    }

    #[test]
    fn challenge_is_satisfied_by_some_noise_for_the_hidden_message() {
        let mut rng = kat_rng([1; 32]);
        struct Check;
        impl Adversary for Check {
            fn choose(&mut self, _: &FieldPrime) -> (u64, u64) {
                (2, 3)
            }
            fn guess(&mut self, m0: u64, m1: u64, ch: &Challenge) -> u8 {
                assert!(ch.solution_count(m0) > 0 || ch.solution_count(m1) > 0);
                0
            }
        }
        ind_cpa_game(&params(7, 3), &mut Check, 200, &mut rng).unwrap();
    }

    #[test]
    fn baseline_adversaries() {
        let mut rng = kat_rng([2; 32]);
        let r = ind_cpa_game(&params(13, 3), &mut RandomGuess::new(1), 10_000, &mut rng).unwrap();
        assert!(r.advantage() < 0.02, "{}", r.advantage());
        let r = ind_cpa_game(&params(13, 3), &mut ConstantGuess(0), 10_000, &mut rng).unwrap();
        assert!(r.advantage() < 0.02, "{}", r.advantage());
        assert!((0.0..=1.0).contains(&r.win_rate()));
    }

    #[test]
    fn solution_counting_advantage_decays_with_noise() {
        let mut rng = kat_rng([3; 32]);
        let a2 = ind_cpa_game(&params(5, 2), &mut SolutionCounting::new(1), 10_000, &mut rng).unwrap().advantage();
        let a3 = ind_cpa_game(&params(5, 3), &mut SolutionCounting::new(2), 10_000, &mut rng).unwrap().advantage();
        // expected 1/(2p) = 0.1 and 1/(2p²) = 0.02
        assert!((0.07..0.13).contains(&a2), "{a2}");
        assert!(a3 < 0.04, "{a3}");
        assert!(a2 > a3);
    }

    #[test]
    fn guard() {
        let mut rng = kat_rng([4; 32]);
        let big = GameParams {
            field: FieldPrime::new(251).unwrap(),
            degree: 2,
            noise: 4,
        };
        assert!(matches!(
            ind_cpa_game(&big, &mut ConstantGuess(0), 1, &mut rng),
            Err(AnalysisError::SearchSpaceTooLarge { .. })
        ));
    }
}
