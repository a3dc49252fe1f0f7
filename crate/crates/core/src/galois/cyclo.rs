//! Exact arithmetic in the cyclotomic ring Z[ζ_p].
//!
//! An element is stored in the integral basis 1, ζ, ..., ζ^{p-2}; the relation
//! 1 + ζ + ... + ζ^{p-1} = 0 eliminates ζ^{p-1}. For p = 2 this is just Z.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

const MAX_COEFFS: usize = 6;

/// An exact element of Z[ζ_p] for p in {2, 3, 5, 7}.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u8,
    c: [i64; MAX_COEFFS],
}

impl CycInt {
    pub fn check_p(p: u32) -> Result<()> {
        match p {
            2 | 3 | 5 | 7 => Ok(()),
            _ => Err(Error::UnsupportedCharacteristic(p)),
        }
    }

    /// # Panics
    /// If `p` is not one of 2, 3, 5, 7.
    pub fn zero(p: u32) -> Self {
        Self::check_p(p).expect("unsupported characteristic");
        CycInt { p: p as u8, c: [0; MAX_COEFFS] }
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut z = Self::zero(p);
        z.c[0] = n;
        z
    }

    /// ζ^k.
    pub fn zeta_pow(p: u32, k: u64) -> Self {
        let mut z = Self::zero(p);
        let k = (k % p as u64) as usize;
        if k + 1 < p as usize {
            z.c[k] = 1;
        } else {
            for i in 0..p as usize - 1 {
                z.c[i] = -1;
            }
        }
        z
    }

    /// Σ_k counts[k] ζ^k for a histogram of exponents modulo p.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), p as usize);
        let top = counts[p as usize - 1];
        let mut z = Self::zero(p);
        for i in 0..p as usize - 1 {
            z.c[i] = counts[i] - top;
        }
        z
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    /// Coefficients in the basis 1, ζ, ..., ζ^{p-2}.
    pub fn coeffs(&self) -> &[i64] {
        &self.c[..self.p as usize - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&x| x == 0)
    }

    /// `Some(n)` when the element is the rational integer n.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs()[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    fn expand(&self) -> [i64; MAX_COEFFS + 1] {
        let mut e = [0i64; MAX_COEFFS + 1];
        e[..self.p as usize - 1].copy_from_slice(self.coeffs());
        e
    }

    fn reduce(p: u8, e: &[i64; MAX_COEFFS + 1]) -> Self {
        let top = e[p as usize - 1];
        let mut c = [0i64; MAX_COEFFS];
        for i in 0..p as usize - 1 {
            c[i] = e[i] - top;
        }
        CycInt { p, c }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_p(other)?;
        Ok(*self + *other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_p(other)?;
        Ok(*self * *other)
    }

    fn same_p(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::CharacteristicMismatch(self.p as u32, other.p as u32))
        }
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let e = self.expand();
        let mut f = [0i64; MAX_COEFFS + 1];
        for (k, &v) in e.iter().enumerate().take(p) {
            f[(p - k) % p] = v;
        }
        Self::reduce(self.p, &f)
    }

    /// |a|² = a · conj(a).
    pub fn norm2(&self) -> Self {
        *self * self.conj()
    }

    /// Multiplication by ζ^k.
    pub fn mul_zeta(&self, k: u64) -> Self {
        let p = self.p as usize;
        let k = (k % p as u64) as usize;
        let e = self.expand();
        let mut f = [0i64; MAX_COEFFS + 1];
        for (i, &v) in e.iter().enumerate().take(p) {
            f[(i + k) % p] = v;
        }
        Self::reduce(self.p, &f)
    }

    pub fn scale(&self, n: i64) -> Self {
        let mut z = *self;
        z.c.iter_mut().for_each(|x| *x *= n);
        z
    }

    /// Exact division by a rational integer, if it divides every coefficient.
    pub fn div_exact(&self, n: i64) -> Option<Self> {
        if n == 0 || self.c.iter().any(|&x| x % n != 0) {
            return None;
        }
        let mut z = *self;
        z.c.iter_mut().for_each(|x| *x /= n);
        Some(z)
    }
}

impl Add for CycInt {
    type Output = CycInt;
    fn add(mut self, rhs: CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "characteristic mismatch");
        for i in 0..MAX_COEFFS {
            self.c[i] += rhs.c[i];
        }
        self
    }
}

impl AddAssign for CycInt {
    fn add_assign(&mut self, rhs: CycInt) {
        *self = *self + rhs;
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(self, rhs: CycInt) -> CycInt {
        self + (-rhs)
    }
}

impl SubAssign for CycInt {
    fn sub_assign(&mut self, rhs: CycInt) {
        *self = *self - rhs;
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(mut self) -> CycInt {
        self.c.iter_mut().for_each(|x| *x = -*x);
        self
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, rhs: CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "characteristic mismatch");
        let p = self.p as usize;
        if p == 2 {
            return CycInt::from_int(2, self.c[0] * rhs.c[0]);
        }
        let a = self.expand();
        let b = rhs.expand();
        let mut t = [0i64; MAX_COEFFS + 1];
        for i in 0..p - 1 {
            if a[i] == 0 {
                continue;
            }
            for j in 0..p - 1 {
                t[(i + j) % p] += a[i] * b[j];
            }
        }
        CycInt::reduce(self.p, &t)
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (k, &v) in self.coeffs().iter().enumerate() {
            if v == 0 {
                continue;
            }
            let sign = if v < 0 { "-" } else if first { "" } else { "+" };
            let mag = v.abs();
            let term = match (k, mag) {
                (0, _) => format!("{mag}"),
                (1, 1) => "ζ".to_string(),
                (1, _) => format!("{mag}ζ"),
                (_, 1) => format!("ζ^{k}"),
                _ => format!("{mag}ζ^{k}"),
            };
            if first {
                write!(f, "{sign}{term}")?;
            } else {
                write!(f, " {sign} {term}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_is_integers() {
        let m1 = CycInt::from_int(2, -1);
        assert_eq!((m1 * m1).as_integer(), Some(1));
        assert_eq!(CycInt::zeta_pow(2, 1).as_integer(), Some(-1));
    }

    #[test]
    fn ternary_relations() {
        let z = CycInt::zeta_pow(3, 1);
        let z2 = CycInt::zeta_pow(3, 2);
        assert_eq!((z + z2).as_integer(), Some(-1));
        let one_plus = CycInt::from_int(3, 1) + z;
        assert_eq!(one_plus.norm2().as_integer(), Some(1));
        assert_eq!((z * z2).as_integer(), Some(1));
        assert_eq!(z.conj(), z2);
    }

    #[test]
    fn zeta_powers_multiply() {
        for p in [3u32, 5, 7] {
            for i in 0..p as u64 {
                for j in 0..p as u64 {
                    let lhs = CycInt::zeta_pow(p, i) * CycInt::zeta_pow(p, j);
                    assert_eq!(lhs, CycInt::zeta_pow(p, i + j));
                    assert_eq!(CycInt::zeta_pow(p, i).mul_zeta(j), lhs);
                }
            }
            let counts = vec![1i64; p as usize];
            assert!(CycInt::from_exponent_counts(p, &counts).is_zero());
        }
    }

    #[test]
    fn mismatched_characteristic() {
        let a = CycInt::from_int(3, 1);
        let b = CycInt::from_int(5, 1);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
    }
}
