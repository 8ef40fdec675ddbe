//! Functional homomorphic encryption of polynomial coefficients.
//!
//! Coefficients over `F_p` are multiplied by a secret unit `R` modulo a
//! secret ring modulus `S`. The resulting cipher polynomial can still be
//! evaluated by anyone: monomials are computed modulo `p`, then combined with
//! the cipher coefficients over the integers with no reduction at all.
//! Multiplying the integer result by `R^-1 mod S` recovers the plain integer
//! sum `Σ p_j·(X_j mod p)` as long as that sum stays below `S`, which holds
//! whenever `|S|_2 > 2|p|_2 + |L|_2`.

use rand::{CryptoRng, RngCore};

use crate::modmath::{gcd, mod_inverse, FieldPrime, MathError, WideUint};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FheError {
    #[error("ring bit length {0} outside [2, 256]")]
    InvalidRingBits(u32),
    #[error("ring modulus must be at least 2")]
    RingTooSmall,
    #[error("multiplier is not a unit of the ring")]
    NotAUnit,
    #[error("expected {expected} values, got {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("value {value} is not reduced modulo {modulus}")]
    NotReduced { value: u64, modulus: u64 },
}

/// The hidden ring `Z_S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HiddenRing {
    modulus: WideUint,
}

impl HiddenRing {
    pub fn new(modulus: WideUint) -> Result<Self, FheError> {
        if modulus < WideUint::from_u64(2) {
            return Err(FheError::RingTooSmall);
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> &WideUint {
        &self.modulus
    }

    pub fn bits(&self) -> u32 {
        self.modulus.bits()
    }

    /// Whether `|S|_2 > 2|p|_2 + |L|_2`, which guarantees exact recovery of
    /// evaluations of `term_count`-term polynomials over `field`.
    pub fn admits(&self, field: &FieldPrime, term_count: usize) -> bool {
        self.bits() > 2 * field.bits() + bit_length(term_count as u64)
    }
}

pub(crate) fn bit_length(v: u64) -> u32 {
    64 - v.leading_zeros()
}

/// Samples a ring modulus with exactly `bits` bits.
pub fn ring_gen<R: RngCore + CryptoRng>(bits: u32, rng: &mut R) -> Result<HiddenRing, FheError> {
    if !(2..=WideUint::BITS).contains(&bits) {
        return Err(FheError::InvalidRingBits(bits));
    }
    HiddenRing::new(rng::exact_bits(rng, bits))
}

/// A secret pair `(R, S)` with `R^-1` precomputed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomomorphicKey {
    ring: HiddenRing,
    multiplier: WideUint,
    inverse: WideUint,
}

impl HomomorphicKey {
    pub fn new(ring: HiddenRing, multiplier: WideUint) -> Result<Self, FheError> {
        if multiplier.is_zero() || multiplier >= *ring.modulus() {
            return Err(FheError::NotAUnit);
        }
        let inverse = mod_inverse(&multiplier, ring.modulus()).map_err(|e| match e {
            MathError::NotCoprime => FheError::NotAUnit,
            other => unreachable!("mod_inverse returned {other}"),
        })?;
        Ok(Self {
            ring,
            multiplier,
            inverse,
        })
    }

    pub fn ring(&self) -> &HiddenRing {
        &self.ring
    }

    pub fn multiplier(&self) -> &WideUint {
        &self.multiplier
    }

    pub fn inverse(&self) -> &WideUint {
        &self.inverse
    }

    /// `R·c mod S`
    pub fn encrypt_coefficient(&self, coefficient: u64) -> WideUint {
        self.multiplier
            .mul_mod(&WideUint::from_u64(coefficient), self.ring.modulus())
    }

    /// `R^-1·v mod S`
    pub fn decrypt_coefficient(&self, value: &WideUint) -> WideUint {
        self.inverse.mul_mod(&value.rem(self.ring.modulus()), self.ring.modulus())
    }
}

/// Samples `R` uniformly from the units of `Z_S`, rejecting non-units.
pub fn he_keygen<R: RngCore + CryptoRng>(ring: &HiddenRing, rng: &mut R) -> HomomorphicKey {
    loop {
        let r = rng::uniform_below_wide(rng, ring.modulus());
        if r.is_zero() || gcd(&r, ring.modulus()) != WideUint::ONE {
            continue;
        }
        return HomomorphicKey::new(*ring, r).expect("unit checked above");
    }
}

/// Ordered monomials over a fixed number of variables, one exponent vector each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIndex {
    variables: usize,
    terms: Vec<Vec<u32>>,
}

impl MonomialIndex {
    pub fn new(variables: usize, terms: Vec<Vec<u32>>) -> Result<Self, FheError> {
        if let Some(bad) = terms.iter().find(|t| t.len() != variables) {
            return Err(FheError::ShapeMismatch {
                expected: variables,
                found: bad.len(),
            });
        }
        Ok(Self { variables, terms })
    }

    /// `x_1, …, x_m`
    pub fn linear(variables: usize) -> Self {
        let terms = (0..variables)
            .map(|i| {
                let mut e = vec![0; variables];
                e[i] = 1;
                e
            })
            .collect();
        Self { variables, terms }
    }

    /// `x_i·x_j` for `i ≤ j`, lexicographic in `(i, j)`.
    pub fn quadratic(variables: usize) -> Self {
        let mut terms = Vec::new();
        for i in 0..variables {
            for j in i..variables {
                let mut e = vec![0; variables];
                e[i] += 1;
                e[j] += 1;
                terms.push(e);
            }
        }
        Self { variables, terms }
    }

    /// `x^i·x_j` over variables `(x, x_1, …, x_m)` for `i ≤ degree`, row-major
    /// in `(i, j)`: the layout of the HPPK central map.
    pub fn bilinear(degree: usize, noise_vars: usize) -> Self {
        let variables = noise_vars + 1;
        let mut terms = Vec::with_capacity((degree + 1) * noise_vars);
        for i in 0..=degree {
            for j in 0..noise_vars {
                let mut e = vec![0; variables];
                e[0] = i as u32;
                e[j + 1] = 1;
                terms.push(e);
            }
        }
        Self { variables, terms }
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Vec<u32>] {
        &self.terms
    }

    /// Each monomial evaluated and reduced modulo `p`.
    pub fn evaluate(&self, assignment: &[u64], field: &FieldPrime) -> Result<Vec<u64>, FheError> {
        if assignment.len() != self.variables {
            return Err(FheError::ShapeMismatch {
                expected: self.variables,
                found: assignment.len(),
            });
        }
        if let Some(&v) = assignment.iter().find(|&&v| v >= field.value()) {
            return Err(FheError::NotReduced {
                value: v,
                modulus: field.value(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|exps| {
                exps.iter()
                    .zip(assignment)
                    .fold(1 % field.value(), |acc, (&e, &v)| {
                        field.mul(acc, field.pow(v, e as u64))
                    })
            })
            .collect())
    }
}

/// Polynomial over `F_p` with coefficients indexed by a [`MonomialIndex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainPoly {
    field: FieldPrime,
    index: MonomialIndex,
    coefficients: Vec<u64>,
}

impl PlainPoly {
    pub fn new(field: FieldPrime, index: MonomialIndex, coefficients: Vec<u64>) -> Result<Self, FheError> {
        if coefficients.len() != index.len() {
            return Err(FheError::ShapeMismatch {
                expected: index.len(),
                found: coefficients.len(),
            });
        }
        if let Some(&c) = coefficients.iter().find(|&&c| c >= field.value()) {
            return Err(FheError::NotReduced {
                value: c,
                modulus: field.value(),
            });
        }
        Ok(Self {
            field,
            index,
            coefficients,
        })
    }

    pub fn field(&self) -> &FieldPrime {
        &self.field
    }

    pub fn index(&self) -> &MonomialIndex {
        &self.index
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Term count `L`.
    pub fn term_count(&self) -> usize {
        self.coefficients.len()
    }

    /// `Σ p_j·(X_j mod p)` over the integers, before any final reduction.
    pub fn integer_sum(&self, assignment: &[u64]) -> Result<WideUint, FheError> {
        let monomials = self.index.evaluate(assignment, &self.field)?;
        let coeffs: Vec<WideUint> = self.coefficients.iter().map(|&c| WideUint::from_u64(c)).collect();
        Ok(weighted_sum(&coeffs, &monomials))
    }

    /// Value of the polynomial in `F_p`.
    pub fn evaluate(&self, assignment: &[u64]) -> Result<u64, FheError> {
        Ok(self.integer_sum(assignment)?.rem_u64(self.field.value()))
    }
}

/// Polynomial whose coefficients were encrypted into `Z_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherPoly {
    index: MonomialIndex,
    coefficients: Vec<WideUint>,
}

impl CipherPoly {
    pub fn new(index: MonomialIndex, coefficients: Vec<WideUint>) -> Result<Self, FheError> {
        if coefficients.len() != index.len() {
            return Err(FheError::ShapeMismatch {
                expected: index.len(),
                found: coefficients.len(),
            });
        }
        Ok(Self { index, coefficients })
    }

    pub fn index(&self) -> &MonomialIndex {
        &self.index
    }

    pub fn coefficients(&self) -> &[WideUint] {
        &self.coefficients
    }
}

/// `Σ c_j·v_j` over the integers. Panics if the sum leaves 256 bits.
pub fn weighted_sum(coefficients: &[WideUint], monomials: &[u64]) -> WideUint {
    debug_assert_eq!(coefficients.len(), monomials.len());
    coefficients
        .iter()
        .zip(monomials)
        .fold(WideUint::ZERO, |acc, (c, &v)| {
            acc + c.checked_mul_u64(v).expect("WideUint multiplication overflow")
        })
}

/// Applies the encryption operator coefficient-wise.
pub fn encrypt_coeffs(key: &HomomorphicKey, poly: &PlainPoly) -> CipherPoly {
    CipherPoly {
        index: poly.index.clone(),
        coefficients: poly
            .coefficients
            .iter()
            .map(|&c| key.encrypt_coefficient(c))
            .collect(),
    }
}

/// Evaluates a cipher polynomial at a user assignment: monomials mod `p`,
/// everything else over the integers.
pub fn eval_cipher_poly(poly: &CipherPoly, assignment: &[u64], field: &FieldPrime) -> Result<WideUint, FheError> {
    let monomials = poly.index.evaluate(assignment, field)?;
    Ok(weighted_sum(&poly.coefficients, &monomials))
}

/// Output of [`decrypt_value`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decrypted {
    /// `R^-1·value mod S`, the plain integer sum when the ring condition holds.
    pub intermediate: WideUint,
    /// `intermediate mod p`, the plain polynomial value.
    pub residue: u64,
}

pub fn decrypt_value(key: &HomomorphicKey, value: &WideUint, field: &FieldPrime) -> Decrypted {
    let intermediate = key.decrypt_coefficient(value);
    Decrypted {
        intermediate,
        residue: intermediate.rem_u64(field.value()),
    }
}
