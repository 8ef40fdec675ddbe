//! Dense univariate polynomials over `F_p`, ascending coefficients, no
//! trailing zeros. The zero polynomial is the empty vector.

use crate::modmath::FieldPrime;

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u64], b: &[u64], f: &FieldPrime) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

pub fn sub(a: &[u64], b: &[u64], f: &FieldPrime) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect())
}

pub fn scale(a: &[u64], c: u64, f: &FieldPrime) -> Poly {
    trim(a.iter().map(|&x| f.mul(x, c)).collect())
}

pub fn mul(a: &[u64], b: &[u64], f: &FieldPrime) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Scales to a monic polynomial; zero stays zero.
pub fn monic(a: &[u64], f: &FieldPrime) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => scale(a, f.inv(lead).expect("trimmed input"), f),
    }
}

/// Quotient and remainder of `a / b`. Panics on a zero divisor.
pub fn div_rem(a: &[u64], b: &[u64], f: &FieldPrime) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let inv_lead = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - db];
    while let Some(dr) = degree(&r).filter(|&d| d >= db) {
        let c = f.mul(r[dr], inv_lead);
        q[dr - db] = c;
        for (i, &bi) in b[..=db].iter().enumerate() {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, bi));
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &[u64], b: &[u64], f: &FieldPrime) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = div_rem(&a, &b, f).1;
        a = b;
        b = r;
    }
    monic(&a, f)
}
