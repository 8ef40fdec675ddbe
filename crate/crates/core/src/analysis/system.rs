//! The ciphertext system modulo `p` and its single-equation normal form.
//!
//! Reducing a block ciphertext modulo `p` gives, for `k = 1, 2`,
//!
//! ```text
//! Σ_j g_kj(x)·x_j ≡ r_k      g_kj(x) = Σ_i (P_k[i][j] mod p)·x^i
//! ```
//!
//! Multiplying the first congruence by `g_2e(x)`, the second by `g_1e(x)` and
//! subtracting removes the noise variable `x_e`, leaving one congruence in
//! `x` and the other `m - 1` noise variables.

use super::poly::{self, Poly};
use super::AnalysisError;
use crate::modmath::FieldPrime;
use crate::scheme::{block_monomials, BlockCiphertext, Matrix, PublicKey};

/// Anything whose solutions can be enumerated over `F_p^variables`.
pub trait Congruence {
    fn field(&self) -> &FieldPrime;
    fn variables(&self) -> usize;
    fn is_satisfied(&self, assignment: &[u64]) -> bool;
}

/// Two bilinear congruences in `(x, x_1..x_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPSystem {
    field: FieldPrime,
    coefficients: [Matrix<u64>; 2],
    rhs: [u64; 2],
}

impl ModPSystem {
    pub fn new(field: FieldPrime, eq1: Matrix<u64>, eq2: Matrix<u64>, rhs: [u64; 2]) -> Result<Self, AnalysisError> {
        if (eq1.rows(), eq1.cols()) != (eq2.rows(), eq2.cols()) || eq1.rows() == 0 || eq1.cols() == 0 {
            return Err(AnalysisError::ShapeMismatch);
        }
        let p = field.value();
        if eq1.as_slice().iter().chain(eq2.as_slice()).chain(&rhs).any(|&v| v >= p) {
            return Err(AnalysisError::NotReduced);
        }
        Ok(Self {
            field,
            coefficients: [eq1, eq2],
            rhs,
        })
    }

    pub fn coefficients(&self, k: usize) -> &Matrix<u64> {
        &self.coefficients[k]
    }

    pub fn rhs(&self) -> [u64; 2] {
        self.rhs
    }

    pub fn noise_variables(&self) -> usize {
        self.coefficients[0].cols()
    }

    pub fn rows(&self) -> usize {
        self.coefficients[0].rows()
    }

    /// `g_kj(x)` as a polynomial.
    pub fn column_poly(&self, k: usize, j: usize) -> Poly {
        poly::trim(self.coefficients[k].column(j).copied().collect())
    }

    /// Left-hand side of congruence `k` at `(x, x_1..x_m)`.
    pub fn evaluate(&self, k: usize, assignment: &[u64]) -> u64 {
        let monos = block_monomials(assignment[0], &assignment[1..], self.rows(), &self.field);
        monos
            .iter()
            .zip(self.coefficients[k].as_slice())
            .fold(0, |acc, (&m, &c)| self.field.add(acc, self.field.mul(m, c)))
    }
}

impl Congruence for ModPSystem {
    fn field(&self) -> &FieldPrime {
        &self.field
    }

    fn variables(&self) -> usize {
        self.noise_variables() + 1
    }

    fn is_satisfied(&self, assignment: &[u64]) -> bool {
        (0..2).all(|k| self.evaluate(k, assignment) == self.rhs[k])
    }
}

/// Reduces public coefficients and ciphertext values modulo `p`.
pub fn reduce_mod_p(pk: &PublicKey, ct: &BlockCiphertext) -> ModPSystem {
    let p = pk.params().field().value();
    ModPSystem {
        field: *pk.params().field(),
        coefficients: [pk.p1().map(|v| v.rem_u64(p)), pk.p2().map(|v| v.rem_u64(p))],
        rhs: [ct.c1.rem_u64(p), ct.c2.rem_u64(p)],
    }
}

/// Scales both congruences so their right-hand sides are 1.
pub fn normalize_system(sys: &ModPSystem) -> Result<ModPSystem, AnalysisError> {
    let f = &sys.field;
    let mut out = sys.clone();
    for k in 0..2 {
        let inv = f.inv(sys.rhs[k]).ok_or(AnalysisError::ZeroRhs)?;
        out.coefficients[k] = sys.coefficients[k].map(|&c| f.mul(c, inv));
        out.rhs[k] = 1;
    }
    Ok(out)
}

/// `H(x, x_kept) - 1 ≡ 0` with the recorded elimination of one noise variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedNormalForm {
    source: ModPSystem,
    eliminated: usize,
    kept: Vec<usize>,
    /// `h_j(x)` for each kept noise variable, in `kept` order.
    terms: Vec<Poly>,
    /// `h_0(x)`: the congruence is `Σ h_j(x)·x_j ≡ h_0(x)`.
    constant: Poly,
}

impl ReducedNormalForm {
    /// Zero-based index of the eliminated noise variable.
    pub fn eliminated(&self) -> usize {
        self.eliminated
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn terms(&self) -> &[Poly] {
        &self.terms
    }

    pub fn constant(&self) -> &Poly {
        &self.constant
    }

    /// `H = Σ h_j(x)·x_j - h_0(x) + 1` at `(x, x_kept...)`.
    pub fn h_value(&self, assignment: &[u64]) -> u64 {
        let f = &self.source.field;
        let x = assignment[0];
        let sum = self
            .terms
            .iter()
            .zip(&assignment[1..])
            .fold(0, |acc, (h, &xj)| f.add(acc, f.mul(f.eval_poly(h, x), xj)));
        f.add(f.sub(sum, f.eval_poly(&self.constant, x)), 1 % f.value())
    }

    /// All solutions of the source system that restrict to `assignment`.
    pub fn extend(&self, assignment: &[u64]) -> Vec<Vec<u64>> {
        let sys = &self.source;
        let f = &sys.field;
        let x = assignment[0];
        let mut full = vec![0; sys.noise_variables() + 1];
        full[0] = x;
        for (&j, &v) in self.kept.iter().zip(&assignment[1..]) {
            full[j + 1] = v;
        }
        let pivot = f.eval_poly(&sys.column_poly(1, self.eliminated), x);
        if let Some(inv) = f.inv(pivot) {
            // x_e = (r2 - Σ_{j≠e} g_2j(x)·x_j) / g_2e(x)
            let partial = sys.evaluate(1, &full);
            full[self.eliminated + 1] = f.mul(f.sub(sys.rhs[1], partial), inv);
            return if sys.is_satisfied(&full) { vec![full] } else { Vec::new() };
        }
        (0..f.value())
            .filter_map(|v| {
                let mut candidate = full.clone();
                candidate[self.eliminated + 1] = v;
                sys.is_satisfied(&candidate).then_some(candidate)
            })
            .collect()
    }

    /// Drops the eliminated coordinate from a full assignment.
    pub fn restrict(&self, full: &[u64]) -> Vec<u64> {
        std::iter::once(full[0]).chain(self.kept.iter().map(|&j| full[j + 1])).collect()
    }
}

impl Congruence for ReducedNormalForm {
    fn field(&self) -> &FieldPrime {
        &self.source.field
    }

    fn variables(&self) -> usize {
        self.kept.len() + 1
    }

    fn is_satisfied(&self, assignment: &[u64]) -> bool {
        self.h_value(assignment) == 1 % self.source.field.value()
    }
}

/// Eliminates the last noise variable whose second-congruence column is nonzero.
pub fn reduce_to_single(sys: &ModPSystem) -> Result<ReducedNormalForm, AnalysisError> {
    let f = &sys.field;
    let m = sys.noise_variables();
    let e = (0..m)
        .rev()
        .find(|&j| !sys.column_poly(1, j).is_empty())
        .ok_or(AnalysisError::EliminationFailed)?;
    let g1e = sys.column_poly(0, e);
    let g2e = sys.column_poly(1, e);
    let kept: Vec<usize> = (0..m).filter(|&j| j != e).collect();
    let terms = kept
        .iter()
        .map(|&j| poly::sub(&poly::mul(&g2e, &sys.column_poly(0, j), f), &poly::mul(&g1e, &sys.column_poly(1, j), f), f))
        .collect();
    let constant = poly::sub(&poly::scale(&g2e, sys.rhs[0], f), &poly::scale(&g1e, sys.rhs[1], f), f);
    Ok(ReducedNormalForm {
        source: sys.clone(),
        eliminated: e,
        kept,
        terms,
        constant,
    })
}
