//! Integer and modular arithmetic shared by every other module.
//!
//! Nothing here is constant-time.

mod field;
mod prime;
mod wide;

pub use field::{solve_linear, solve_quadratic, sqrt_mod, FieldPrime};
pub use prime::is_prime_64;
pub use wide::{ParseWideUintError, WideUint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MathError {
    #[error("operand is not invertible modulo the given modulus")]
    NotCoprime,
    #[error("degenerate equation: leading coefficients vanish")]
    DegenerateEquation,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Binary (Stein) gcd.
pub fn gcd(a: &WideUint, b: &WideUint) -> WideUint {
    let (mut a, mut b) = (*a, *b);
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let shift = a.trailing_zeros().min(b.trailing_zeros());
    a = a >> a.trailing_zeros();
    loop {
        b = b >> b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b = b - a;
        if b.is_zero() {
            return a << shift;
        }
    }
}

/// Inverse of `a` modulo `m`.
///
/// Extended Euclid with the Bezout coefficient kept reduced modulo `m`, so it
/// works for even moduli as well (hidden rings are not required to be odd).
pub fn mod_inverse(a: &WideUint, m: &WideUint) -> Result<WideUint, MathError> {
    assert!(*m > WideUint::ONE, "modulus must exceed 1");
    let a = a.rem(m);
    if a.is_zero() {
        return Err(MathError::NotCoprime);
    }
    let (mut r0, mut r1) = (*m, a);
    let (mut t0, mut t1) = (WideUint::ZERO, WideUint::ONE);
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let t2 = t0.sub_mod(&q.mul_mod(&t1, m), m);
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, t2);
    }
    if r0 != WideUint::ONE {
        return Err(MathError::NotCoprime);
    }
    Ok(t0)
}

/// `base^exp mod m` by left-to-right square and multiply.
pub fn pow_mod(base: &WideUint, exp: &WideUint, m: &WideUint) -> WideUint {
    assert!(!m.is_zero(), "zero modulus");
    if *m == WideUint::ONE {
        return WideUint::ZERO;
    }
    let base = base.rem(m);
    let mut acc = WideUint::ONE;
    for i in (0..exp.bits()).rev() {
        acc = acc.mul_mod(&acc, m);
        if exp.bit(i) {
            acc = acc.mul_mod(&base, m);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn w(v: u64) -> WideUint {
        WideUint::from_u64(v)
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(&w(9), &w(13)), Ok(w(3)));
        assert_eq!(mod_inverse(&w(4267), &w(6798)), Ok(w(6379)));
        assert_eq!(w(4267).mul_mod(&w(6379), &w(6798)), WideUint::ONE);
        assert_eq!(mod_inverse(&w(6), &w(9)), Err(MathError::NotCoprime));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(pow_mod(&w(2), &w(10), &w(1000)), w(24));
        assert_eq!(pow_mod(&w(12345), &WideUint::ZERO, &w(77)), WideUint::ONE);
        assert_eq!(pow_mod(&w(3), &w(12), &w(13)), WideUint::ONE);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&w(6475), &w(6798)), WideUint::ONE);
        assert_eq!(gcd(&w(2), &w(8)), w(2));
        assert_eq!(gcd(&w(0), &w(8)), w(8));
        assert_eq!(gcd(&w(48), &w(180)), w(12));
    }

    #[test]
    fn random_inverses_64_to_256_bits() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 10_000 {
            let bits = rng.gen_range(64..=256u32);
            let limbs: [u64; 4] = rng.gen();
            let m = WideUint::from_limbs(limbs) >> (256 - bits);
            let a = WideUint::from_limbs(rng.gen()).rem(&m);
            if m <= WideUint::ONE || a.is_zero() || gcd(&a, &m) != WideUint::ONE {
                continue;
            }
            let inv = mod_inverse(&a, &m).unwrap();
            assert!(!inv.is_zero() && inv < m);
            assert_eq!(a.mul_mod(&inv, &m), WideUint::ONE);
            checked += 1;
        }
    }

    #[test]
    fn pow_matches_iterated_multiplication() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for _ in 0..500 {
            let m: u64 = rng.gen_range(2..1 << 16);
            let base: u64 = rng.gen_range(0..1 << 16);
            let exp: u64 = rng.gen_range(0..1 << 10);
            let mut expect = 1 % m;
            for _ in 0..exp {
                expect = expect * (base % m) % m;
            }
            assert_eq!(pow_mod(&w(base), &w(exp), &w(m)), w(expect));
        }
    }

    proptest! {
        #[test]
        fn gcd_matches_bigint(a in any::<[u64; 4]>(), b in any::<[u64; 4]>(), sa in 0u32..256, sb in 0u32..256) {
            let a = WideUint::from_limbs(a) >> sa;
            let b = WideUint::from_limbs(b) >> sb;
            let ba = BigUint::from_bytes_le(&a.to_le_bytes());
            let bb = BigUint::from_bytes_le(&b.to_le_bytes());
            let g = num_bigint::BigUint::from_bytes_le(&gcd(&a, &b).to_le_bytes());
            prop_assert_eq!(g, num_integer_gcd(ba, bb));
        }
    }

    fn num_integer_gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
        while b != BigUint::from(0u8) {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }
}
