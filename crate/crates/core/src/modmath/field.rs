use std::fmt;

use super::{is_prime_64, MathError};

/// A prime `p < 2^64` defining `F_p`. Residues are plain `u64` values in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldPrime(u64);

impl FieldPrime {
    /// Largest 64-bit prime, `2^64 - 59`.
    pub const P64: FieldPrime = FieldPrime(u64::MAX - 58);

    pub fn new(p: u64) -> Result<Self, MathError> {
        if is_prime_64(p) {
            Ok(Self(p))
        } else {
            Err(MathError::NotPrime(p))
        }
    }

    pub const fn value(&self) -> u64 {
        self.0
    }

    /// `|p|_2`
    pub const fn bits(&self) -> u32 {
        64 - self.0.leading_zeros()
    }

    pub fn reduce(&self, v: u64) -> u64 {
        v % self.0
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u64) -> u64 {
        let a = a % self.0;
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.0 as u128) as u64
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        let mut base = base % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.0;
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.0 as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.0 as i128) as u64)
    }

    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        self.inv(b).map(|inv| self.mul(a, inv))
    }

    /// Horner evaluation of `coeffs` (ascending degree) at `x`.
    pub fn eval_poly(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

impl fmt::Debug for FieldPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldPrime({})", self.0)
    }
}

impl fmt::Display for FieldPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// All square roots of `a` in `F_p`, ascending (Tonelli-Shanks).
pub fn sqrt_mod(a: u64, field: &FieldPrime) -> Vec<u64> {
    let p = field.value();
    let a = a % p;
    if a == 0 {
        return vec![0];
    }
    if p == 2 {
        return vec![a];
    }
    if field.pow(a, (p - 1) / 2) != 1 {
        return Vec::new();
    }

    let root = if p % 4 == 3 {
        field.pow(a, (p + 1) / 4)
    } else {
        let s = (p - 1).trailing_zeros();
        let q = (p - 1) >> s;
        let z = (2..p)
            .find(|&z| field.pow(z, (p - 1) / 2) == p - 1)
            .expect("an odd prime field has a non-residue");
        let mut m = s;
        let mut c = field.pow(z, q);
        let mut t = field.pow(a, q);
        let mut r = field.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = field.mul(t2, t2);
                i += 1;
            }
            let b = field.pow(c, 1 << (m - i - 1));
            m = i;
            c = field.mul(b, b);
            t = field.mul(t, c);
            r = field.mul(r, b);
        }
        r
    };
    let mut roots = vec![root, p - root];
    roots.sort_unstable();
    roots
}

/// Solves `a·x ≡ b (mod p)`.
pub fn solve_linear(a: u64, b: u64, field: &FieldPrime) -> Result<u64, MathError> {
    field
        .div(b, a)
        .ok_or(MathError::DegenerateEquation)
}

/// All roots of `a·x² + b·x + c ≡ 0 (mod p)`, ascending. Falls back to the
/// linear equation when `a ≡ 0`.
pub fn solve_quadratic(a: u64, b: u64, c: u64, field: &FieldPrime) -> Result<Vec<u64>, MathError> {
    let (a, b, c) = (field.reduce(a), field.reduce(b), field.reduce(c));
    if a == 0 {
        return solve_linear(b, field.neg(c), field).map(|x| vec![x]);
    }
    if field.value() == 2 {
        return Ok((0..2)
            .filter(|&x| field.eval_poly(&[c, b, a], x) == 0)
            .collect());
    }
    let disc = field.sub(field.mul(b, b), field.mul(4, field.mul(a, c)));
    let inv_2a = field.inv(field.mul(2, a)).expect("2a is nonzero for odd p");
    let mut roots: Vec<u64> = sqrt_mod(disc, field)
        .into_iter()
        .map(|s| field.mul(field.sub(s, b), inv_2a))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots)
}
