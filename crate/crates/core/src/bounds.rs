//! Classical bounds and structural verdicts for linear codes.
//!
//! For each bound the report carries d* (the largest distance allowed at the
//! given n, k) and k* (the largest dimension allowed at the given n, d). A code
//! is optimal when it attains the maximum and almost optimal when it is one short.
//! The sphere packing bound only sees the packing radius ⌊(d-1)/2⌋, so its
//! distance verdict compares radii rather than distances.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{big_pow, binomial};
use crate::error::{Error, Result};
use crate::galois::Elem;
use crate::linearcode::{for_each_codeword, LinearCode, WeightDistribution};

/// Codeword count up to which minimality is decided by pairwise support inclusion.
pub const EXACT_MINIMALITY_BUDGET: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimality {
    Optimal,
    AlmostOptimal,
    NotOptimal,
    /// The parameters break the bound, so no code with them exists.
    Violated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdict {
    pub holds: bool,
    /// The bound holds with equality (a perfect code for the sphere packing bound).
    pub tight: bool,
    pub d_max: u64,
    pub k_max: u64,
    pub distance: Optimality,
    pub dimension: Optimality,
}

fn check_params(n: u64, k: u64, d: u64, q: u64) -> Result<()> {
    if q < 2 || k == 0 || k > n || d == 0 || d > n {
        return Err(Error::InvalidParams(format!("no bound check for n={n}, k={k}, d={d}, q={q}")));
    }
    Ok(())
}

fn classify(holds: bool, value: u64, max: u64) -> Optimality {
    match () {
        _ if !holds => Optimality::Violated,
        _ if value == max => Optimality::Optimal,
        _ if value + 1 == max => Optimality::AlmostOptimal,
        _ => Optimality::NotOptimal,
    }
}

/// The largest x in 1..=hi with ok(x), assuming ok is monotone decreasing; 0 if none.
fn largest_passing(hi: u64, ok: impl Fn(u64) -> bool) -> u64 {
    (1..=hi).take_while(|&x| ok(x)).last().unwrap_or(0)
}

/// Cumulative sphere volumes Σ_{i ≤ t} C(n, i)(q-1)^i for t = 0, 1, ..., stopping
/// at radius `radius` or as soon as a volume exceeds `cap`.
fn sphere_volumes(n: u64, q: u64, radius: u64, cap: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut term = BigUint::from(1u32);
    let mut total = BigUint::zero();
    for i in 0..=radius.min(n) {
        if i > 0 {
            term = term * (n - i + 1) * (q - 1) / i;
        }
        total += &term;
        out.push(total.clone());
        if &total > cap {
            break;
        }
    }
    out
}

/// q^k Σ_{i ≤ ⌊(d-1)/2⌋} C(n, i)(q-1)^i ≤ q^n.
pub fn hamming_check(n: u64, k: u64, d: u64, q: u64) -> Result<BoundVerdict> {
    check_params(n, k, d, q)?;
    let qn = big_pow(q, n);
    let vols = sphere_volumes(n, q, (n - 1) / 2, &qn);
    // None when the sphere alone already exceeds q^n.
    let lhs = |k: u64, d: u64| vols.get(((d - 1) / 2) as usize).map(|v| big_pow(q, k) * v);
    let passes = |k: u64, d: u64| lhs(k, d).is_some_and(|v| v <= qn);
    let holds = passes(k, d);
    let d_max = largest_passing(n, |x| passes(k, x));
    let k_max = largest_passing(n, |x| passes(x, d));
    Ok(BoundVerdict {
        holds,
        tight: lhs(k, d).is_some_and(|v| v == qn),
        d_max,
        k_max,
        distance: classify(holds, (d - 1) / 2, d_max.saturating_sub(1) / 2),
        dimension: classify(holds, k, k_max),
    })
}

fn griesmer_sum(k: u64, d: u64, q: u64) -> BigUint {
    let d = BigUint::from(d);
    let mut sum = BigUint::zero();
    for i in 0..k {
        let qi = big_pow(q, i);
        if qi >= d {
            // Every remaining term is 1.
            return sum + (k - i);
        }
        sum += (&d + &qi - 1u32) / qi;
    }
    sum
}

/// n ≥ Σ_{i < k} ⌈d / q^i⌉.
pub fn griesmer_check(n: u64, k: u64, d: u64, q: u64) -> Result<BoundVerdict> {
    check_params(n, k, d, q)?;
    let nb = BigUint::from(n);
    let sum = griesmer_sum(k, d, q);
    let holds = sum <= nb;
    let d_max = largest_passing(n, |x| griesmer_sum(k, x, q) <= nb);
    let k_max = largest_passing(n, |x| griesmer_sum(x, d, q) <= nb);
    Ok(BoundVerdict {
        holds,
        tight: sum == nb,
        d_max,
        k_max,
        distance: classify(holds, d, d_max),
        dimension: classify(holds, k, k_max),
    })
}

/// d ≤ n - k + 1.
pub fn singleton_holds(n: u64, k: u64, d: u64) -> bool {
    d + k <= n + 1
}

/// Outcome of the power-moment check: the first identity (1-based) that fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlessCheck {
    pub holds: bool,
    pub first_violated: Option<u32>,
}

/// The first four power-moment identities between a code's distribution `a`
/// and its dual's `b`, for r = 0..=3:
///
/// Σ_i i^r A_i = Σ_ν S(r, ν) ν! q^{k-ν} Σ_{j ≤ ν} (-1)^j C(n-j, ν-j) (q-1)^{ν-j} B_j
///
/// with S the Stirling numbers of the second kind. Both sides are scaled by
/// q^3 so everything stays integral.
pub fn pless_verify(a: &WeightDistribution, b: &WeightDistribution) -> PlessCheck {
    let n = a.n() as u64;
    let q = a.q() as u64;
    let qk = BigInt::from(big_pow(q, a.k() as u64));
    let consistent = a.n() == b.n() && a.q() == b.q();
    // q^3 Σ_i C(i, ν) A_i from the dual side.
    let binomial_moment = |nu: u64| -> BigInt {
        let mut acc = BigInt::zero();
        for j in 0..=nu.min(n) {
            let term = BigInt::from(binomial(n - j, nu - j)) * BigInt::from(big_pow(q - 1, nu - j)) * BigInt::from(b.count(j as usize));
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc * &qk * BigInt::from(big_pow(q, 3 - nu))
    };
    // S(r, ν) ν! for r, ν ≤ 3.
    const SURJECTIONS: [[i64; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 2, 0], [0, 1, 6, 6]];
    let q3 = BigInt::from(big_pow(q, 3));
    for r in 0..4u32 {
        let lhs: BigInt =
            a.pairs().into_iter().map(|(i, c)| BigInt::from(i as u64).pow(r) * BigInt::from(c)).sum::<BigInt>() * &q3;
        let rhs: BigInt = (0..=r as u64)
            .filter(|&nu| SURJECTIONS[r as usize][nu as usize] != 0)
            .map(|nu| binomial_moment(nu) * SURJECTIONS[r as usize][nu as usize])
            .sum();
        if !consistent || lhs != rhs {
            return PlessCheck { holds: false, first_violated: Some(r + 1) };
        }
    }
    PlessCheck { holds: true, first_violated: None }
}

/// The sufficient condition w_min / w_max > (q-1)/q for every codeword to be minimal.
pub fn minimal_by_ratio(wd: &WeightDistribution) -> Option<bool> {
    let (lo, hi) = (wd.min_distance()?, wd.max_weight()?);
    let q = wd.q() as u64;
    Some(lo as u64 * q > hi as u64 * (q - 1))
}

/// Whether every nonzero codeword is minimal, by scanning pairs of supports.
/// A code fails exactly when one support strictly contains another.
pub fn minimal_exact(c: &LinearCode, budget: u64) -> Result<bool> {
    let words = c.n().div_ceil(64);
    let mut supports: Vec<Vec<u64>> = Vec::new();
    for_each_codeword(c, budget.min(EXACT_MINIMALITY_BUDGET), |w| {
        if w.iter().all(|x| x.is_zero()) {
            return;
        }
        let mut s = vec![0u64; words];
        for (i, x) in w.iter().enumerate() {
            if *x != Elem::ZERO {
                s[i / 64] |= 1 << (i % 64);
            }
        }
        supports.push(s);
    })?;
    supports.sort();
    supports.dedup();
    let strictly_inside = |u: &[u64], v: &[u64]| u != v && u.iter().zip(v).all(|(a, b)| a & !b == 0);
    Ok(!supports.par_iter().any(|v| supports.iter().any(|u| strictly_inside(u, v))))
}

/// Every nonzero weight is a multiple of `modulus`.
pub fn divisible(wd: &WeightDistribution, modulus: usize) -> bool {
    modulus > 0 && wd.support().iter().all(|&w| w % modulus == 0)
}

/// G·G^T = 0.
pub fn self_orthogonal(c: &LinearCode) -> bool {
    c.is_self_orthogonal()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub singleton_ok: bool,
    pub hamming: Option<BoundVerdict>,
    pub griesmer: Option<BoundVerdict>,
    /// Present when the dual distribution was available.
    pub pless: Option<PlessCheck>,
    pub minimal_ab: Option<bool>,
    pub minimal_exact: Option<bool>,
    /// All weights ≡ 0 (mod 4); only meaningful for binary codes.
    pub doubly_even: bool,
    pub self_orthogonal: bool,
}

/// Every verdict for a code with a known distribution (and optionally its dual's).
pub fn bound_report(c: &LinearCode, wd: &WeightDistribution, dual: Option<&WeightDistribution>) -> Result<BoundReport> {
    let (n, k, q) = (c.n() as u64, c.k() as u64, c.q() as u64);
    let d = wd.min_distance().map(|d| d as u64);
    let (hamming, griesmer, singleton_ok) = match d {
        Some(d) if k > 0 => (Some(hamming_check(n, k, d, q)?), Some(griesmer_check(n, k, d, q)?), singleton_holds(n, k, d)),
        _ => (None, None, true),
    };
    let small = BigUint::from(EXACT_MINIMALITY_BUDGET) >= wd.total();
    Ok(BoundReport {
        singleton_ok,
        hamming,
        griesmer,
        pless: dual.map(|b| pless_verify(wd, b)),
        minimal_ab: minimal_by_ratio(wd),
        minimal_exact: if small && k > 0 { Some(minimal_exact(c, EXACT_MINIMALITY_BUDGET)?) } else { None },
        doubly_even: q == 2 && divisible(wd, 4),
        self_orthogonal: self_orthogonal(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{FieldCtx, Level};
    use crate::linearcode::{macwilliams, weight_distribution};

    fn pairs(n: usize, k: usize, items: &[(usize, u32)]) -> WeightDistribution {
        WeightDistribution::from_pairs(n, k, 2, items.iter().map(|&(w, c)| (w, c.into())))
    }

    #[test]
    fn hamming_code_is_perfect() {
        let v = hamming_check(7, 4, 3, 2).unwrap();
        assert!(v.holds && v.tight);
        assert_eq!((v.d_max, v.k_max), (4, 4));
        // d = 4 gives the same packing radius, so d = 3 is already optimal.
        assert_eq!(v.distance, Optimality::Optimal);
        assert_eq!(v.dimension, Optimality::Optimal);
    }

    #[test]
    fn dual_of_33_code() {
        let h = hamming_check(33, 26, 3, 2).unwrap();
        assert!(h.holds);
        assert_eq!((h.d_max, h.k_max), (4, 27));
        assert_eq!(h.distance, Optimality::Optimal);
        assert_eq!(h.dimension, Optimality::AlmostOptimal);
        let g = griesmer_check(33, 26, 3, 2).unwrap();
        assert!(g.holds);
        assert_eq!(g.k_max, 30);
    }

    #[test]
    fn dual_of_257_code() {
        let h = hamming_check(257, 247, 4, 2).unwrap();
        assert_eq!((h.d_max, h.k_max), (4, 248));
        assert_eq!(h.distance, Optimality::Optimal);
        assert_eq!(h.dimension, Optimality::AlmostOptimal);
    }

    #[test]
    fn full_space_meets_singleton() {
        assert!(singleton_holds(5, 5, 1));
        assert!(!singleton_holds(5, 5, 2));
        assert!(hamming_check(5, 5, 1, 3).unwrap().tight);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(hamming_check(3, 4, 1, 2).is_err());
        assert!(griesmer_check(3, 1, 0, 2).is_err());
    }

    #[test]
    fn pless_on_repetition() {
        let rep = pairs(3, 1, &[(0, 1), (3, 1)]);
        let even = pairs(3, 2, &[(0, 1), (2, 3)]);
        assert!(pless_verify(&rep, &even).holds);
        assert!(pless_verify(&even, &rep).holds);
        let bad = pairs(3, 1, &[(0, 1), (3, 2)]);
        assert_eq!(pless_verify(&bad, &even).first_violated, Some(1));
    }

    #[test]
    fn pless_over_gf3() {
        let ctx = FieldCtx::new(3, 1, 1).unwrap();
        let rows = vec![vec![Elem(1), Elem(1), Elem(1), Elem(0)], vec![Elem(0), Elem(1), Elem(2), Elem(1)]];
        let c = LinearCode::from_rows(&ctx, Level::Prime, 4, rows).unwrap();
        let wd = weight_distribution(&c).unwrap();
        assert!(pless_verify(&wd, &macwilliams(&wd).unwrap()).holds);
    }

    #[test]
    fn simplex_is_minimal() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let rows: Vec<Vec<Elem>> =
            (0..3).map(|b| (1u32..8).map(|x| Elem((x >> b) & 1)).collect()).collect();
        let c = LinearCode::from_rows(&ctx, Level::Prime, 7, rows).unwrap();
        let wd = weight_distribution(&c).unwrap();
        assert_eq!(minimal_by_ratio(&wd), Some(true));
        assert!(minimal_exact(&c, 1 << 10).unwrap());
        let rep_plus = LinearCode::from_rows(
            &ctx,
            Level::Prime,
            3,
            vec![vec![Elem(1), Elem(0), Elem(0)], vec![Elem(0), Elem(1), Elem(0)]],
        )
        .unwrap();
        assert!(!minimal_exact(&rep_plus, 1 << 10).unwrap());
    }

    #[test]
    fn divisibility() {
        assert!(divisible(&pairs(8, 1, &[(0, 1), (8, 1)]), 4));
        assert!(!divisible(&pairs(8, 2, &[(0, 1), (2, 1), (6, 1), (8, 1)]), 4));
        assert!(divisible(&pairs(8, 0, &[(0, 1)]), 4));
    }
}
