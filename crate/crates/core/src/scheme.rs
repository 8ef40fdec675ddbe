//! The HPPK block scheme.
//!
//! A private key is two univariate polynomials `f1, f2` of degree λ over
//! `F_p` and two homomorphic keys `R1, R2` sharing one hidden ring `Z_S`.
//! A random base polynomial `b(x, x_1..x_m)` is multiplied with each `f_k`
//! to form the plain central map, whose coefficients are then encrypted with
//! `R_k`. Encryption evaluates both cipher maps at `(x, noise)` over the
//! integers; decryption strips the envelope and divides, which cancels `b`
//! and leaves `f1(x)/f2(x)`.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use rand::{CryptoRng, RngCore};

use crate::fhe::{self, he_keygen, ring_gen, HiddenRing, HomomorphicKey};
use crate::modmath::{solve_linear, solve_quadratic, FieldPrime, MathError, WideUint};
use crate::rng;

const CRC8: crc::Crc<u8> = crc::Crc::<u8>::new(&crc::CRC_8_SMBUS);

/// Width in bits of the λ = 2 integrity flag.
pub const FLAG_BITS: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("polynomial order λ must be 1 or 2, got {0}")]
    UnsupportedOrder(usize),
    #[error("base polynomial order must be at least 1")]
    BaseOrderTooSmall,
    #[error("at least two noise variables are required, got {0}")]
    TooFewNoiseVariables(usize),
    #[error("term count {0} does not fit the 8-bit ciphertext headroom")]
    TooManyTerms(usize),
    #[error("ring of {ring_bits} bits is too small, need more than {required}")]
    RingTooSmall { ring_bits: u32, required: u32 },
    #[error("ciphertext values would need {0} bits")]
    ValuesTooWide(u32),
    #[error("the integrity flag needs a field wider than 8 bits")]
    FieldTooSmallForFlag,
    #[error("no named configuration for base order {0}")]
    UnknownConfiguration(usize),
}

/// Named configurations, one per targeted security level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SecurityLevel {
    I,
    III,
    V,
}

impl SecurityLevel {
    pub const ALL: [SecurityLevel; 3] = [SecurityLevel::I, SecurityLevel::III, SecurityLevel::V];

    pub fn noise_variables(self) -> usize {
        match self {
            SecurityLevel::I => 3,
            SecurityLevel::III => 4,
            SecurityLevel::V => 5,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            SecurityLevel::I => 1,
            SecurityLevel::III => 3,
            SecurityLevel::V => 5,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(SecurityLevel::I),
            3 => Some(SecurityLevel::III),
            5 => Some(SecurityLevel::V),
            _ => None,
        }
    }
}

impl fmt::Display for SecurityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for SecurityLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<u8>()
            .ok()
            .and_then(SecurityLevel::from_number)
            .ok_or_else(|| format!("security level must be 1, 3 or 5, got {s:?}"))
    }
}

/// Everything that fixes key, ciphertext and loop sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ParameterSet {
    field: FieldPrime,
    base_order: usize,
    lambda: usize,
    noise: usize,
    ring_bits: u32,
}

impl ParameterSet {
    pub fn new(field: FieldPrime, base_order: usize, lambda: usize, noise: usize, ring_bits: u32) -> Result<Self, ParamError> {
        if !(1..=2).contains(&lambda) {
            return Err(ParamError::UnsupportedOrder(lambda));
        }
        if base_order < 1 {
            return Err(ParamError::BaseOrderTooSmall);
        }
        if noise < 2 {
            return Err(ParamError::TooFewNoiseVariables(noise));
        }
        let terms = (base_order + lambda + 1) * noise;
        if terms > 255 {
            return Err(ParamError::TooManyTerms(terms));
        }
        let required = 2 * field.bits() + fhe::bit_length(terms as u64);
        if ring_bits <= required {
            return Err(ParamError::RingTooSmall { ring_bits, required });
        }
        let value_bits = ring_bits + field.bits() + 8;
        if value_bits > WideUint::BITS {
            return Err(ParamError::ValuesTooWide(value_bits));
        }
        if lambda == 2 && field.bits() <= FLAG_BITS {
            return Err(ParamError::FieldTooSmallForFlag);
        }
        Ok(Self {
            field,
            base_order,
            lambda,
            noise,
            ring_bits,
        })
    }

    /// One of the six benchmarked configurations: `p = 2^64 - 59`, λ = 1,
    /// a 136-bit ring, `n_b ∈ {1, 2}`.
    pub fn level(level: SecurityLevel, base_order: usize) -> Result<Self, ParamError> {
        if !(1..=2).contains(&base_order) {
            return Err(ParamError::UnknownConfiguration(base_order));
        }
        Self::new(FieldPrime::P64, base_order, 1, level.noise_variables(), 136)
    }

    /// All six named configurations, level-major.
    pub fn named() -> Vec<(SecurityLevel, usize, ParameterSet)> {
        SecurityLevel::ALL
            .iter()
            .flat_map(|&l| (1..=2).map(move |nb| (l, nb, Self::level(l, nb).expect("named configuration"))))
            .collect()
    }

    /// The worked example at `p = 13`: `n_b = 1`, λ = 1, two noise variables,
    /// 13-bit ring. Insecure by design.
    pub fn toy() -> Self {
        Self::new(FieldPrime::new(13).expect("13 is prime"), 1, 1, 2, 13).expect("toy parameters")
    }

    /// Smallest admissible ring for the given shape.
    pub fn tiny(field: FieldPrime, base_order: usize, lambda: usize, noise: usize) -> Result<Self, ParamError> {
        let terms = (base_order + lambda + 1) * noise;
        let ring_bits = 2 * field.bits() + fhe::bit_length(terms as u64) + 1;
        Self::new(field, base_order, lambda, noise, ring_bits)
    }

    pub fn field(&self) -> &FieldPrime {
        &self.field
    }

    /// `n_b`
    pub fn base_order(&self) -> usize {
        self.base_order
    }

    /// λ, the order of `f1` and `f2`.
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `m`
    pub fn noise_variables(&self) -> usize {
        self.noise
    }

    /// `n = n_b + λ`
    pub fn degree(&self) -> usize {
        self.base_order + self.lambda
    }

    /// Rows of each public matrix, `n + 1`.
    pub fn rows(&self) -> usize {
        self.degree() + 1
    }

    /// `L = (n + 1)·m`
    pub fn term_count(&self) -> usize {
        self.rows() * self.noise
    }

    pub fn ring_bits(&self) -> u32 {
        self.ring_bits
    }

    /// Upper bound on the bit length of any honest ciphertext value.
    pub fn value_bits(&self) -> u32 {
        self.ring_bits + self.field.bits() + 8
    }

    /// Secret bits carried by one block.
    pub fn payload_bits(&self) -> u32 {
        match self.lambda {
            1 => self.field.bits(),
            _ => self.field.bits() - FLAG_BITS,
        }
    }

    pub fn label(&self) -> String {
        if *self == Self::toy() {
            return "toy-p13".into();
        }
        if let Some((l, nb, _)) = Self::named().into_iter().find(|(_, _, p)| p == self) {
            return format!("L{}-nb{}", l.number(), nb);
        }
        format!(
            "p{}-nb{}-l{}-m{}-s{}",
            self.field.value(),
            self.base_order,
            self.lambda,
            self.noise,
            self.ring_bits
        )
    }

    /// Inverse of [`ParameterSet::label`] for the toy and named configurations.
    pub fn from_label(label: &str) -> Option<Self> {
        if label == "toy-p13" {
            return Some(Self::toy());
        }
        Self::named()
            .into_iter()
            .map(|(_, _, p)| p)
            .find(|p| p.label() == label)
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Option<Self> {
        (data.len() == rows * cols).then_some(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = &T> + '_ {
        self.data.iter().skip(j).step_by(self.cols)
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

/// Per-column convolution `out[i][j] = Σ_{s+t=i} b[s][j]·f[t] mod p`.
pub fn build_plain_central_map(b: &Matrix<u64>, f: &[u64], field: &FieldPrime) -> Matrix<u64> {
    assert!(!f.is_empty(), "empty factor polynomial");
    let rows = b.rows() + f.len() - 1;
    let mut out = vec![0u64; rows * b.cols()];
    for s in 0..b.rows() {
        for (t, &ft) in f.iter().enumerate() {
            for j in 0..b.cols() {
                let cell = &mut out[(s + t) * b.cols() + j];
                *cell = field.add(*cell, field.mul(b[(s, j)], ft));
            }
        }
    }
    Matrix::from_vec(rows, b.cols(), out).expect("shape computed above")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeyError {
    #[error("matrix shape {found:?} does not match {expected:?}")]
    Shape { expected: (usize, usize), found: (usize, usize) },
    #[error("public coefficient wider than the ring")]
    EntryTooWide,
    #[error("ring modulus has {found} bits, expected {expected}")]
    RingBits { expected: u32, found: u32 },
    #[error("multiplier is not a unit of the ring")]
    NotAUnit,
    #[error("polynomial must have {expected} coefficients, got {found}")]
    PolynomialLength { expected: usize, found: usize },
    #[error("coefficient {0} is not reduced modulo p")]
    CoefficientOutOfRange(u64),
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("f1 and f2 are proportional")]
    Proportional,
}

/// The pair of plain maps `b·f1`, `b·f2` over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainCentralMap {
    pub p1: Matrix<u64>,
    pub p2: Matrix<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    params: ParameterSet,
    p1: Matrix<WideUint>,
    p2: Matrix<WideUint>,
}

impl PublicKey {
    pub fn from_parts(params: ParameterSet, p1: Matrix<WideUint>, p2: Matrix<WideUint>) -> Result<Self, KeyError> {
        let expected = (params.rows(), params.noise_variables());
        for m in [&p1, &p2] {
            if (m.rows(), m.cols()) != expected {
                return Err(KeyError::Shape {
                    expected,
                    found: (m.rows(), m.cols()),
                });
            }
            if m.as_slice().iter().any(|v| v.bits() > params.ring_bits()) {
                return Err(KeyError::EntryTooWide);
            }
        }
        Ok(Self { params, p1, p2 })
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn p1(&self) -> &Matrix<WideUint> {
        &self.p1
    }

    pub fn p2(&self) -> &Matrix<WideUint> {
        &self.p2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    params: ParameterSet,
    k1: HomomorphicKey,
    k2: HomomorphicKey,
    f1: Vec<u64>,
    f2: Vec<u64>,
}

fn check_factor(params: &ParameterSet, f: &[u64]) -> Result<(), KeyError> {
    if f.len() != params.lambda() + 1 {
        return Err(KeyError::PolynomialLength {
            expected: params.lambda() + 1,
            found: f.len(),
        });
    }
    if let Some(&c) = f.iter().find(|&&c| c >= params.field().value()) {
        return Err(KeyError::CoefficientOutOfRange(c));
    }
    if f[params.lambda()] == 0 {
        return Err(KeyError::ZeroLeadingCoefficient);
    }
    Ok(())
}

/// Whether `f1 ≡ c·f2` for some `c`, i.e. every 2×2 minor vanishes.
fn proportional(f1: &[u64], f2: &[u64], field: &FieldPrime) -> bool {
    (0..f1.len()).all(|i| (i + 1..f1.len()).all(|j| field.mul(f1[i], f2[j]) == field.mul(f1[j], f2[i])))
}

impl PrivateKey {
    pub fn from_parts(
        params: ParameterSet,
        ring_modulus: WideUint,
        r1: WideUint,
        r2: WideUint,
        f1: Vec<u64>,
        f2: Vec<u64>,
    ) -> Result<Self, KeyError> {
        if ring_modulus.bits() != params.ring_bits() {
            return Err(KeyError::RingBits {
                expected: params.ring_bits(),
                found: ring_modulus.bits(),
            });
        }
        let ring = HiddenRing::new(ring_modulus).map_err(|_| KeyError::NotAUnit)?;
        let k1 = HomomorphicKey::new(ring, r1).map_err(|_| KeyError::NotAUnit)?;
        let k2 = HomomorphicKey::new(ring, r2).map_err(|_| KeyError::NotAUnit)?;
        check_factor(&params, &f1)?;
        check_factor(&params, &f2)?;
        if proportional(&f1, &f2, params.field()) {
            return Err(KeyError::Proportional);
        }
        Ok(Self { params, k1, k2, f1, f2 })
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn ring_modulus(&self) -> &WideUint {
        self.k1.ring().modulus()
    }

    pub fn k1(&self) -> &HomomorphicKey {
        &self.k1
    }

    pub fn k2(&self) -> &HomomorphicKey {
        &self.k2
    }

    /// Coefficients of `f1`, ascending degree.
    pub fn f1(&self) -> &[u64] {
        &self.f1
    }

    pub fn f2(&self) -> &[u64] {
        &self.f2
    }

    /// Strips the envelope from a matching public key, recovering `b·f1`, `b·f2`.
    pub fn unmask(&self, pk: &PublicKey) -> PlainCentralMap {
        let p = self.params.field().value();
        let open = |k: &HomomorphicKey, m: &Matrix<WideUint>| m.map(|v| k.decrypt_coefficient(v).rem_u64(p));
        PlainCentralMap {
            p1: open(&self.k1, &pk.p1),
            p2: open(&self.k2, &pk.p2),
        }
    }
}

fn sample_factor<R: RngCore + ?Sized>(rng: &mut R, params: &ParameterSet) -> Vec<u64> {
    let p = params.field().value();
    let mut f: Vec<u64> = (0..params.lambda()).map(|_| rng::uniform_below(rng, p)).collect();
    f.push(rng::nonzero_below(rng, p));
    f
}

/// Samples a key pair.
///
/// Draw order is fixed: ring modulus, `R1`, `R2`, `f1` (ascending degree),
/// `f2` (redrawn while proportional to `f1`), then `b` row-major.
pub fn keygen<R: RngCore + CryptoRng>(params: &ParameterSet, rng: &mut R) -> (PrivateKey, PublicKey) {
    let ring = ring_gen(params.ring_bits(), rng).expect("ring bits validated by ParameterSet");
    let k1 = he_keygen(&ring, rng);
    let k2 = he_keygen(&ring, rng);
    let field = params.field();
    let f1 = sample_factor(rng, params);
    let f2 = loop {
        let f2 = sample_factor(rng, params);
        if !proportional(&f1, &f2, field) {
            break f2;
        }
    };
    let b_data = (0..(params.base_order() + 1) * params.noise_variables())
        .map(|_| rng::uniform_below(rng, field.value()))
        .collect();
    let b = Matrix::from_vec(params.base_order() + 1, params.noise_variables(), b_data).expect("shape");

    let encrypt = |k: &HomomorphicKey, f: &[u64]| build_plain_central_map(&b, f, field).map(|&c| k.encrypt_coefficient(c));
    let pk = PublicKey {
        params: *params,
        p1: encrypt(&k1, &f1),
        p2: encrypt(&k2, &f2),
    };
    let sk = PrivateKey {
        params: *params,
        k1,
        k2,
        f1,
        f2,
    };
    (sk, pk)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    #[error("noise vector is all zero")]
    AllZeroNoise,
    #[error("expected {expected} noise values, got {found}")]
    NoiseLength { expected: usize, found: usize },
    #[error("value {0} is not reduced modulo p")]
    OutOfRange(u64),
    #[error("second evaluation vanishes modulo p")]
    ZeroDenominator,
    #[error("recovered equation is degenerate")]
    DegenerateEquation,
    #[error("no root carries a valid flag")]
    NoValidRoot,
    #[error("both roots carry a valid flag")]
    AmbiguousRoot,
    #[error("payload does not fit the block")]
    PayloadTooLarge,
}

/// One encrypted block: the two unreduced evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockCiphertext {
    pub c1: WideUint,
    pub c2: WideUint,
}

/// `x^i·x_j mod p` in public-matrix order.
pub fn block_monomials(x: u64, noise: &[u64], rows: usize, field: &FieldPrime) -> Vec<u64> {
    let mut out = Vec::with_capacity(rows * noise.len());
    let mut xi = 1 % field.value();
    for _ in 0..rows {
        out.extend(noise.iter().map(|&xj| field.mul(xi, xj)));
        xi = field.mul(xi, x);
    }
    out
}

/// Evaluates both cipher maps at `(x, noise)`.
pub fn encrypt_block(pk: &PublicKey, x: u64, noise: &[u64]) -> Result<BlockCiphertext, BlockError> {
    let params = pk.params();
    let p = params.field().value();
    if noise.len() != params.noise_variables() {
        return Err(BlockError::NoiseLength {
            expected: params.noise_variables(),
            found: noise.len(),
        });
    }
    if let Some(&v) = std::iter::once(&x).chain(noise).find(|&&v| v >= p) {
        return Err(BlockError::OutOfRange(v));
    }
    if noise.iter().all(|&v| v == 0) {
        return Err(BlockError::AllZeroNoise);
    }
    let monomials = block_monomials(x, noise, params.rows(), params.field());
    Ok(BlockCiphertext {
        c1: fhe::weighted_sum(pk.p1.as_slice(), &monomials),
        c2: fhe::weighted_sum(pk.p2.as_slice(), &monomials),
    })
}

/// Intermediate values of the division step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisionTrace {
    /// `R_k^-1·c_k mod S`
    pub intermediates: [WideUint; 2],
    /// The intermediates reduced modulo `p`.
    pub residues: [u64; 2],
    /// `K = residues[0] / residues[1] mod p`
    pub ratio: u64,
}

pub fn division_ratio(sk: &PrivateKey, ct: &BlockCiphertext) -> Result<DivisionTrace, BlockError> {
    let field = sk.params().field();
    let d1 = fhe::decrypt_value(&sk.k1, &ct.c1, field);
    let d2 = fhe::decrypt_value(&sk.k2, &ct.c2, field);
    let ratio = field.div(d1.residue, d2.residue).ok_or(BlockError::ZeroDenominator)?;
    Ok(DivisionTrace {
        intermediates: [d1.intermediate, d2.intermediate],
        residues: [d1.residue, d2.residue],
        ratio,
    })
}

/// Recovers the block secret: `x` for λ = 1, the flag-verified payload for λ = 2.
pub fn decrypt_block(sk: &PrivateKey, ct: &BlockCiphertext) -> Result<u64, BlockError> {
    let params = sk.params();
    let field = params.field();
    let k = division_ratio(sk, ct)?.ratio;
    // f1(x) - K·f2(x) ≡ 0
    let c: Vec<u64> = sk.f1.iter().zip(&sk.f2).map(|(&a, &b)| field.sub(a, field.mul(k, b))).collect();
    let to_block_err = |e: MathError| match e {
        MathError::DegenerateEquation => BlockError::DegenerateEquation,
        other => unreachable!("unexpected {other}"),
    };
    if params.lambda() == 1 {
        return solve_linear(c[1], field.neg(c[0]), field).map_err(to_block_err);
    }
    let roots = solve_quadratic(c[2], c[1], c[0], field).map_err(to_block_err)?;
    let mut valid = roots.into_iter().filter(|&r| verify_flag(r, field));
    match (valid.next(), valid.next()) {
        (None, _) => Err(BlockError::NoValidRoot),
        (Some(x), None) => Ok(extract_payload(x, field)),
        (Some(_), Some(_)) => Err(BlockError::AmbiguousRoot),
    }
}

fn payload_mask(field: &FieldPrime) -> u64 {
    (1u64 << (field.bits() - FLAG_BITS)) - 1
}

fn flag_of(payload: u64, field: &FieldPrime) -> u64 {
    let width = (field.bits() - FLAG_BITS).div_ceil(8) as usize;
    CRC8.checksum(&payload.to_le_bytes()[..width]) as u64
}

/// `X = crc8(payload) << (|p| - 8) | payload`.
pub fn format_plaintext(payload: u64, field: &FieldPrime) -> Result<u64, BlockError> {
    assert!(field.bits() > FLAG_BITS, "field too small for a flag");
    if payload > payload_mask(field) {
        return Err(BlockError::PayloadTooLarge);
    }
    let x = flag_of(payload, field) << (field.bits() - FLAG_BITS) | payload;
    if x >= field.value() {
        return Err(BlockError::PayloadTooLarge);
    }
    Ok(x)
}

pub fn verify_flag(x: u64, field: &FieldPrime) -> bool {
    x < field.value() && x >> (field.bits() - FLAG_BITS) == flag_of(x & payload_mask(field), field)
}

pub fn extract_payload(x: u64, field: &FieldPrime) -> u64 {
    x & payload_mask(field)
}

/// The worked example at `p = 13`.
pub mod toy {
    use super::*;
    use crate::rng::ScriptedRng;

    pub const RING_MODULUS: u64 = 6798;
    pub const R1: u64 = 4267;
    pub const R2: u64 = 6475;
    pub const F1: [u64; 2] = [4, 9];
    pub const F2: [u64; 2] = [10, 7];
    pub const B: [[u64; 2]; 2] = [[8, 5], [7, 11]];
    pub const P1: [[u64; 2]; 3] = [[5208, 2677], [4413, 6149], [6149, 146]];
    pub const P2: [[u64; 2]; 3] = [[6152, 3245], [3891, 6152], [3568, 2922]];
    pub const X: u64 = 8;
    pub const NOISE: [u64; 2] = [3, 6];
    pub const CIPHERTEXT: (u64, u64) = (198082, 192229);

    /// A generator that makes [`keygen`] reproduce the example key.
    pub fn keygen_rng() -> ScriptedRng {
        let mut words = vec![RING_MODULUS, R1, R2];
        words.extend(F1);
        words.extend(F2);
        words.extend(B.iter().flatten());
        ScriptedRng::new(words)
    }

    pub fn keypair() -> (PrivateKey, PublicKey) {
        keygen(&ParameterSet::toy(), &mut keygen_rng())
    }

    pub fn ciphertext() -> BlockCiphertext {
        BlockCiphertext {
            c1: WideUint::from_u64(CIPHERTEXT.0),
            c2: WideUint::from_u64(CIPHERTEXT.1),
        }
    }
}
