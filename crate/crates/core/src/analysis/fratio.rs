//! Factor recovery from plain (unencrypted) central maps.
//!
//! Column `j` of a plain map is the polynomial `b_j(x)·f(x)`, so `f` is, up
//! to scale, a common factor of every nonzero column. For `n_b = λ = 1` each
//! column `(p_0, p_1, p_2)` pins `s = f_0 / f_1` as a root of
//! `p_2·s² - p_1·s + p_0`; intersecting the roots over the columns leaves
//! the true ratio. Larger shapes go through the polynomial gcd.

use super::bruteforce::search_space;
use super::poly;
use super::AnalysisError;
use crate::modmath::{solve_quadratic, FieldPrime};
use crate::scheme::Matrix;

/// A monic candidate for `f`: `[c_0, …, c_{λ-1}, 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorCandidate(pub Vec<u64>);

impl FactorCandidate {
    /// Normalizes any nonzero polynomial.
    pub fn from_factor(f: &[u64], field: &FieldPrime) -> Self {
        Self(poly::monic(f, field))
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    /// `f_k / f_0`, when `f_0 ≠ 0`.
    pub fn ratio(&self, k: usize, field: &FieldPrime) -> Option<u64> {
        field.div(self.0[k], self.0[0])
    }
}

fn columns(map: &Matrix<u64>) -> Vec<poly::Poly> {
    (0..map.cols())
        .map(|j| poly::trim(map.column(j).copied().collect()))
        .filter(|c| !c.is_empty())
        .collect()
}

/// All monic degree-λ factors consistent with `map` having the form `b·f`.
pub fn recover_f_ratio(map: &Matrix<u64>, base_order: usize, lambda: usize, field: &FieldPrime) -> Result<Vec<FactorCandidate>, AnalysisError> {
    if map.rows() != base_order + lambda + 1 || !(1..=2).contains(&lambda) {
        return Err(AnalysisError::ShapeMismatch);
    }
    let cols = columns(map);
    if cols.is_empty() {
        return Err(AnalysisError::NoConsistentRatio);
    }
    let candidates = if base_order == 1 && lambda == 1 {
        quadratic_route(map, field)
    } else {
        gcd_route(&cols, lambda, field)?
    };
    if candidates.is_empty() {
        return Err(AnalysisError::NoConsistentRatio);
    }
    Ok(candidates)
}

fn quadratic_route(map: &Matrix<u64>, field: &FieldPrime) -> Vec<FactorCandidate> {
    let mut common: Option<Vec<u64>> = None;
    for j in 0..map.cols() {
        let (p0, p1, p2) = (map[(0, j)], map[(1, j)], map[(2, j)]);
        if (p0, p1, p2) == (0, 0, 0) {
            continue;
        }
        let roots = solve_quadratic(p2, field.neg(p1), p0, field).unwrap_or_default();
        common = Some(match common {
            None => roots,
            Some(prev) => prev.into_iter().filter(|s| roots.contains(s)).collect(),
        });
    }
    common.unwrap_or_default().into_iter().map(|s| FactorCandidate(vec![s, 1])).collect()
}

fn gcd_route(cols: &[poly::Poly], lambda: usize, field: &FieldPrime) -> Result<Vec<FactorCandidate>, AnalysisError> {
    let g = cols.iter().skip(1).fold(poly::monic(&cols[0], field), |acc, c| poly::gcd(&acc, c, field));
    let deg = poly::degree(&g).unwrap_or(0);
    if deg < lambda {
        return Ok(Vec::new());
    }
    if deg == lambda {
        return Ok(vec![FactorCandidate(g)]);
    }
    // the columns share extra factors; try every monic divisor of degree λ
    let p = field.value();
    search_space(p, lambda)?;
    let divides = |d: &[u64]| poly::div_rem(&g, d, field).1.is_empty();
    let mut out = Vec::new();
    for c0 in 0..p {
        if lambda == 1 {
            if divides(&[c0, 1]) {
                out.push(FactorCandidate(vec![c0, 1]));
            }
            continue;
        }
        for c1 in 0..p {
            if divides(&[c0, c1, 1]) {
                out.push(FactorCandidate(vec![c0, c1, 1]));
            }
        }
    }
    Ok(out)
}
