//! Small integer helpers shared across modules.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn big_pow(base: u64, e: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), e as usize)
}

pub fn ipow(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

/// `Some(s)` when `value = base^s` exactly.
pub fn exact_log(value: u64, base: u64) -> Option<u32> {
    if value == 0 || base < 2 {
        return None;
    }
    let (mut v, mut s) = (value, 0u32);
    while v % base == 0 {
        v /= base;
        s += 1;
    }
    (v == 1).then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn logs() {
        assert_eq!(exact_log(64, 2), Some(6));
        assert_eq!(exact_log(1, 3), Some(0));
        assert_eq!(exact_log(12, 2), None);
    }
}
