use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::WeightDistribution;
use crate::arith::{big_pow, binomial};
use crate::error::{Error, Result};

/// K_j(i) for length n over an alphabet of size q, from the defining sum.
pub fn krawtchouk(n: u64, q: u64, j: u64, i: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for s in 0..=j.min(i) {
        if j - s > n - i {
            continue;
        }
        let term = BigInt::from(binomial(i, s))
            * BigInt::from(binomial(n - i, j - s))
            * BigInt::from(big_pow(q - 1, j - s));
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// K_0(i), ..., K_n(i) by the three-term recurrence in j.
fn krawtchouk_column(n: u64, q: u64, i: u64) -> Vec<BigInt> {
    let mut col = Vec::with_capacity(n as usize + 1);
    col.push(BigInt::one());
    if n == 0 {
        return col;
    }
    col.push(BigInt::from((q - 1) * n) - BigInt::from(q * i));
    for j in 1..n {
        let a = BigInt::from((q - 1) * (n - j) + j) - BigInt::from(q * i);
        let b = BigInt::from((q - 1) * (n - j + 1));
        let next = (a * &col[j as usize] - b * &col[j as usize - 1]) / BigInt::from(j + 1);
        col.push(next);
    }
    col
}

/// Weight distribution of the dual code: B_j = q^{-k} Σ_i A_i K_j(i).
pub fn macwilliams(wd: &WeightDistribution) -> Result<WeightDistribution> {
    let (n, q) = (wd.n() as u64, wd.q() as u64);
    let mut sums = vec![BigInt::zero(); n as usize + 1];
    for (i, a) in wd.pairs() {
        let a = BigInt::from(a);
        for (s, kj) in sums.iter_mut().zip(krawtchouk_column(n, q, i as u64)) {
            *s += &a * kj;
        }
    }
    let size = BigInt::from(wd.total());
    let mut counts = Vec::with_capacity(sums.len());
    for (j, s) in sums.into_iter().enumerate() {
        let (quot, rem) = (&s / &size, &s % &size);
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::NonIntegral(format!("B_{j} = {s}/{size}")));
        }
        let (_, mag) = quot.into_parts();
        counts.push(mag);
    }
    Ok(WeightDistribution::new(wd.n(), wd.n().saturating_sub(wd.k()), wd.q(), counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn recurrence_matches_sum() {
        for (n, q) in [(7u64, 2u64), (6, 3), (5, 4)] {
            for i in 0..=n {
                let col = krawtchouk_column(n, q, i);
                for j in 0..=n {
                    assert_eq!(col[j as usize], krawtchouk(n, q, j, i), "n={n} q={q} j={j} i={i}");
                }
            }
        }
    }

    #[test]
    fn hamming_simplex_pair() {
        let simplex = WeightDistribution::from_pairs(7, 3, 2, [(0, 1u32.into()), (4, 7u32.into())]);
        let ham = macwilliams(&simplex).unwrap();
        let expect: Vec<(usize, BigUint)> =
            vec![(0, 1u32.into()), (3, 7u32.into()), (4, 7u32.into()), (7, 1u32.into())];
        assert_eq!(ham.pairs(), expect);
        assert_eq!(ham.k(), 4);
        assert_eq!(macwilliams(&ham).unwrap(), simplex);
    }

    #[test]
    fn rejects_non_code() {
        let bogus = WeightDistribution::from_pairs(3, 1, 2, [(0, 1u32.into()), (1, 2u32.into())]);
        assert!(matches!(macwilliams(&bogus), Err(Error::NonIntegral(_))));
    }
}
