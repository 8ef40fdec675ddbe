//! 256-bit unsigned integers with exact, overflow-checked arithmetic.
//!
//! Every integer that lives outside `F_p` (ring moduli, cipher coefficients,
//! unreduced ciphertext evaluations) is a [`WideUint`]. Operations that would
//! leave the 256-bit range panic instead of wrapping; products that are only
//! needed modulo something go through [`WideUint::mul_mod`], which keeps a
//! full 512-bit intermediate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Shl, Shr, Sub};
use std::str::FromStr;

const LIMBS: usize = 4;

/// Unsigned 256-bit integer, little-endian 64-bit limbs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct WideUint([u64; LIMBS]);

impl WideUint {
    pub const BITS: u32 = 256;
    pub const BYTES: usize = 32;
    pub const ZERO: Self = Self([0; LIMBS]);
    pub const ONE: Self = Self([1, 0, 0, 0]);
    pub const MAX: Self = Self([u64::MAX; LIMBS]);

    pub const fn from_u64(v: u64) -> Self {
        Self([v, 0, 0, 0])
    }

    pub const fn from_u128(v: u128) -> Self {
        Self([v as u64, (v >> 64) as u64, 0, 0])
    }

    pub const fn from_limbs(limbs: [u64; LIMBS]) -> Self {
        Self(limbs)
    }

    pub const fn limbs(&self) -> &[u64; LIMBS] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; LIMBS]
    }

    pub fn is_odd(&self) -> bool {
        self.0[0] & 1 == 1
    }

    /// Number of significant bits; zero has bit length 0.
    pub fn bits(&self) -> u32 {
        for i in (0..LIMBS).rev() {
            if self.0[i] != 0 {
                return 64 * i as u32 + (64 - self.0[i].leading_zeros());
            }
        }
        0
    }

    pub fn bit(&self, i: u32) -> bool {
        i < Self::BITS && (self.0[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    pub fn set_bit(&mut self, i: u32) {
        assert!(i < Self::BITS, "bit index {i} out of range");
        self.0[(i / 64) as usize] |= 1 << (i % 64);
    }

    /// The value as `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.0[1..].iter().all(|&l| l == 0) {
            Some(self.0[0])
        } else {
            None
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        if self.0[2] == 0 && self.0[3] == 0 {
            Some(self.0[0] as u128 | (self.0[1] as u128) << 64)
        } else {
            None
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Option<Self> {
        let mut out = [0u64; LIMBS];
        let mut carry = false;
        for i in 0..LIMBS {
            let (s, c1) = self.0[i].overflowing_add(rhs.0[i]);
            let (s, c2) = s.overflowing_add(carry as u64);
            out[i] = s;
            carry = c1 || c2;
        }
        (!carry).then_some(Self(out))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        let (out, borrow) = self.overflowing_sub(rhs);
        (!borrow).then_some(out)
    }

    fn overflowing_sub(&self, rhs: &Self) -> (Self, bool) {
        let mut out = [0u64; LIMBS];
        let mut borrow = false;
        for i in 0..LIMBS {
            let (d, b1) = self.0[i].overflowing_sub(rhs.0[i]);
            let (d, b2) = d.overflowing_sub(borrow as u64);
            out[i] = d;
            borrow = b1 || b2;
        }
        (Self(out), borrow)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        let wide = self.mul_wide(rhs);
        if wide[LIMBS..].iter().all(|&l| l == 0) {
            let mut out = [0u64; LIMBS];
            out.copy_from_slice(&wide[..LIMBS]);
            Some(Self(out))
        } else {
            None
        }
    }

    pub fn checked_mul_u64(&self, rhs: u64) -> Option<Self> {
        let mut out = [0u64; LIMBS];
        let mut carry = 0u64;
        for i in 0..LIMBS {
            let t = self.0[i] as u128 * rhs as u128 + carry as u128;
            out[i] = t as u64;
            carry = (t >> 64) as u64;
        }
        (carry == 0).then_some(Self(out))
    }

    /// Full 512-bit product.
    pub fn mul_wide(&self, rhs: &Self) -> [u64; 2 * LIMBS] {
        let mut out = [0u64; 2 * LIMBS];
        for i in 0..LIMBS {
            if self.0[i] == 0 {
                continue;
            }
            let mut carry = 0u64;
            for j in 0..LIMBS {
                let t = self.0[i] as u128 * rhs.0[j] as u128 + out[i + j] as u128 + carry as u128;
                out[i + j] = t as u64;
                carry = (t >> 64) as u64;
            }
            out[i + LIMBS] = carry;
        }
        out
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero");
        if self < divisor {
            return (Self::ZERO, *self);
        }
        let mut q = [0u64; LIMBS];
        let mut r = [0u64; LIMBS];
        divrem_limbs(&self.0, &divisor.0, &mut q, &mut r);
        (Self(q), Self(r))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn rem_u64(&self, divisor: u64) -> u64 {
        assert!(divisor != 0, "division by zero");
        let mut r = 0u128;
        for i in (0..LIMBS).rev() {
            r = ((r << 64) | self.0[i] as u128) % divisor as u128;
        }
        r as u64
    }

    /// `self * rhs mod m`, exact for all 256-bit operands.
    pub fn mul_mod(&self, rhs: &Self, m: &Self) -> Self {
        assert!(!m.is_zero(), "zero modulus");
        let wide = self.mul_wide(rhs);
        let mut q = [0u64; 2 * LIMBS];
        let mut r = [0u64; LIMBS];
        divrem_limbs(&wide, &m.0, &mut q, &mut r);
        Self(r)
    }

    /// `self + rhs mod m` for operands already reduced below `m`.
    pub fn add_mod(&self, rhs: &Self, m: &Self) -> Self {
        debug_assert!(self < m && rhs < m);
        match self.checked_add(rhs) {
            Some(s) if s < *m => s,
            Some(s) => s - *m,
            // the true sum is 2^256 + s and lies in [m, 2m)
            None => *self - (*m - *rhs),
        }
    }

    /// `self - rhs mod m` for operands already reduced below `m`.
    pub fn sub_mod(&self, rhs: &Self, m: &Self) -> Self {
        debug_assert!(self < m && rhs < m);
        if self >= rhs {
            *self - *rhs
        } else {
            *m - (*rhs - *self)
        }
    }

    pub fn trailing_zeros(&self) -> u32 {
        for i in 0..LIMBS {
            if self.0[i] != 0 {
                return 64 * i as u32 + self.0[i].trailing_zeros();
            }
        }
        Self::BITS
    }

    /// Little-endian encoding into exactly `width` bytes, or `None` if the
    /// value does not fit.
    pub fn to_le_bytes_width(&self, width: usize) -> Option<Vec<u8>> {
        if self.bits() as usize > 8 * width {
            return None;
        }
        let full = self.to_le_bytes();
        let mut out = vec![0u8; width];
        let n = width.min(Self::BYTES);
        out[..n].copy_from_slice(&full[..n]);
        Some(out)
    }

    pub fn to_le_bytes(&self) -> [u8; 32] {
        let mut out = [0u8; 32];
        for (i, limb) in self.0.iter().enumerate() {
            out[8 * i..8 * i + 8].copy_from_slice(&limb.to_le_bytes());
        }
        out
    }

    /// Parses little-endian bytes; `None` if the value needs more than 256 bits.
    pub fn from_le_bytes(bytes: &[u8]) -> Option<Self> {
        if bytes.len() > Self::BYTES && bytes[Self::BYTES..].iter().any(|&b| b != 0) {
            return None;
        }
        let mut limbs = [0u64; LIMBS];
        for (i, &b) in bytes.iter().take(Self::BYTES).enumerate() {
            limbs[i / 8] |= (b as u64) << (8 * (i % 8));
        }
        Some(Self(limbs))
    }
}

/// Knuth algorithm D over 64-bit limbs. `q` must hold `u.len()` limbs and `r`
/// at least the significant limbs of `v`.
fn divrem_limbs(u: &[u64], v: &[u64], q: &mut [u64], r: &mut [u64]) {
    let n = v.iter().rposition(|&l| l != 0).expect("division by zero") + 1;
    q.iter_mut().for_each(|l| *l = 0);
    r.iter_mut().for_each(|l| *l = 0);
    let ulen = match u.iter().rposition(|&l| l != 0) {
        Some(i) => i + 1,
        None => return,
    };

    if n == 1 {
        let d = v[0] as u128;
        let mut rem = 0u128;
        for i in (0..ulen).rev() {
            let cur = (rem << 64) | u[i] as u128;
            q[i] = (cur / d) as u64;
            rem = cur % d;
        }
        r[0] = rem as u64;
        return;
    }
    if ulen < n {
        r[..ulen].copy_from_slice(&u[..ulen]);
        return;
    }

    let shift = v[n - 1].leading_zeros();
    let mut vn = [0u64; LIMBS];
    let mut un = [0u64; 2 * LIMBS + 1];
    shl_into(&v[..n], shift, &mut vn[..n]);
    un[ulen] = shl_into(&u[..ulen], shift, &mut un[..ulen]);

    let vtop = vn[n - 1] as u128;
    let vnext = vn[n - 2] as u128;
    for j in (0..=ulen - n).rev() {
        let num = (un[j + n] as u128) << 64 | un[j + n - 1] as u128;
        let mut qhat = num / vtop;
        let mut rhat = num % vtop;
        while qhat >> 64 != 0 || qhat * vnext > ((rhat << 64) | un[j + n - 2] as u128) {
            qhat -= 1;
            rhat += vtop;
            if rhat >> 64 != 0 {
                break;
            }
        }

        let mut borrow = 0u64;
        let mut carry = 0u64;
        for i in 0..n {
            let p = qhat * vn[i] as u128 + carry as u128;
            carry = (p >> 64) as u64;
            let (t, b1) = un[i + j].overflowing_sub(p as u64);
            let (t, b2) = t.overflowing_sub(borrow);
            un[i + j] = t;
            borrow = b1 as u64 + b2 as u64;
        }
        let (t, b1) = un[j + n].overflowing_sub(carry);
        let (t, b2) = t.overflowing_sub(borrow);
        un[j + n] = t;

        if b1 || b2 {
            qhat -= 1;
            let mut c = 0u128;
            for i in 0..n {
                let s = un[i + j] as u128 + vn[i] as u128 + c;
                un[i + j] = s as u64;
                c = s >> 64;
            }
            un[j + n] = un[j + n].wrapping_add(c as u64);
        }
        if j < q.len() {
            q[j] = qhat as u64;
        }
    }

    for i in 0..n {
        r[i] = if shift == 0 {
            un[i]
        } else {
            (un[i] >> shift) | (un[i + 1] << (64 - shift))
        };
    }
}

/// Shifts `src` left by `shift < 64` bits into `dst`, returning the carry-out limb.
fn shl_into(src: &[u64], shift: u32, dst: &mut [u64]) -> u64 {
    if shift == 0 {
        dst.copy_from_slice(src);
        return 0;
    }
    let mut carry = 0u64;
    for i in 0..src.len() {
        dst[i] = (src[i] << shift) | carry;
        carry = src[i] >> (64 - shift);
    }
    carry
}

impl Ord for WideUint {
    fn cmp(&self, other: &Self) -> Ordering {
        for i in (0..LIMBS).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for WideUint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for WideUint {
    fn from(v: u64) -> Self {
        Self::from_u64(v)
    }
}

impl From<u128> for WideUint {
    fn from(v: u128) -> Self {
        Self::from_u128(v)
    }
}

impl Add for WideUint {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("WideUint addition overflow")
    }
}

impl Sub for WideUint {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).expect("WideUint subtraction underflow")
    }
}

impl Mul for WideUint {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("WideUint multiplication overflow")
    }
}

impl Shl<u32> for WideUint {
    type Output = Self;
    fn shl(self, shift: u32) -> Self {
        if shift >= Self::BITS {
            return Self::ZERO;
        }
        let (limbs, bits) = ((shift / 64) as usize, shift % 64);
        let mut out = [0u64; LIMBS];
        for i in (limbs..LIMBS).rev() {
            out[i] = self.0[i - limbs] << bits;
            if bits > 0 && i > limbs {
                out[i] |= self.0[i - limbs - 1] >> (64 - bits);
            }
        }
        Self(out)
    }
}

impl Shr<u32> for WideUint {
    type Output = Self;
    fn shr(self, shift: u32) -> Self {
        if shift >= Self::BITS {
            return Self::ZERO;
        }
        let (limbs, bits) = ((shift / 64) as usize, shift % 64);
        let mut out = [0u64; LIMBS];
        for i in 0..LIMBS - limbs {
            out[i] = self.0[i + limbs] >> bits;
            if bits > 0 && i + limbs + 1 < LIMBS {
                out[i] |= self.0[i + limbs + 1] << (64 - bits);
            }
        }
        Self(out)
    }
}

impl fmt::Display for WideUint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.pad("0");
        }
        const CHUNK: u64 = 10_000_000_000_000_000_000;
        let chunk = WideUint::from_u64(CHUNK);
        let mut parts = Vec::new();
        let mut v = *self;
        while !v.is_zero() {
            let (q, r) = v.div_rem(&chunk);
            parts.push(r.0[0]);
            v = q;
        }
        let mut s = parts.last().unwrap().to_string();
        for part in parts.iter().rev().skip(1) {
            s.push_str(&format!("{part:019}"));
        }
        f.pad(&s)
    }
}

impl fmt::Debug for WideUint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WideUint({self})")
    }
}

impl fmt::LowerHex for WideUint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.0.iter().rposition(|&l| l != 0).unwrap_or(0);
        let mut s = format!("{:x}", self.0[top]);
        for i in (0..top).rev() {
            s.push_str(&format!("{:016x}", self.0[i]));
        }
        f.pad(&s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid decimal integer: {0:?}")]
pub struct ParseWideUintError(String);

impl FromStr for WideUint {
    type Err = ParseWideUintError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseWideUintError(s.to_owned());
        if s.is_empty() {
            return Err(err());
        }
        let mut v = WideUint::ZERO;
        for c in s.chars() {
            let d = c.to_digit(10).ok_or_else(err)?;
            v = v
                .checked_mul_u64(10)
                .and_then(|v| v.checked_add(&WideUint::from_u64(d as u64)))
                .ok_or_else(err)?;
        }
        Ok(v)
    }
}
