//! Row-space enumeration in modular Gray-code order.
//!
//! A code over GF(q), q = p^e, is spanned over GF(p) by the k·e generators
//! β_j·g_i. Counting t = 0, 1, ... in base p and setting the Gray digits
//! h_i = b_i − b_{i+1} (mod p), each increment of t raises exactly one digit
//! h_j by one, so consecutive codewords differ by one generator.

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{LinearCode, WeightDistribution};
use crate::error::{Error, Result};
use crate::galois::Elem;

pub const DEFAULT_BUDGET: u64 = 1 << 26;

const CHUNKS: u64 = 256;

struct Generators {
    p: u32,
    rows: Vec<Vec<Elem>>,
    total: u64,
}

fn generators(c: &LinearCode, budget: u64) -> Result<Generators> {
    let ctx = c.ctx();
    let p = ctx.p();
    let scalars = ctx.prime_basis(c.level());
    let mut rows = Vec::new();
    for g in c.basis() {
        for &b in &scalars {
            rows.push(g.iter().map(|&x| ctx.mul(b, x)).collect());
        }
    }
    let needed = (p as u128).checked_pow(rows.len() as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::Budget { needed, budget });
    }
    Ok(Generators { p, rows, total: needed as u64 })
}

fn gray_digits(t: u64, p: u32, len: usize) -> Vec<u32> {
    let mut b = Vec::with_capacity(len + 1);
    let mut rest = t;
    for _ in 0..len {
        b.push((rest % p as u64) as u32);
        rest /= p as u64;
    }
    b.push(0);
    (0..len).map(|i| (b[i] + p - b[i + 1]) % p).collect()
}

/// Index of the generator added when stepping from t to t+1.
fn step_index(t: u64, p: u32) -> usize {
    if p == 2 {
        return t.trailing_ones() as usize;
    }
    let (mut rest, mut j) = (t, 0);
    while rest % p as u64 == p as u64 - 1 {
        rest /= p as u64;
        j += 1;
    }
    j
}

fn first_word(c: &LinearCode, g: &Generators, t: u64) -> Vec<Elem> {
    let ctx = c.ctx();
    let mut w = vec![Elem::ZERO; c.n()];
    for (h, row) in gray_digits(t, g.p, g.rows.len()).into_iter().zip(&g.rows) {
        if h == 0 {
            continue;
        }
        for (x, &y) in w.iter_mut().zip(row) {
            *x = ctx.add(*x, ctx.mul_int(y, h));
        }
    }
    w
}

fn chunk_bounds(total: u64) -> Vec<(u64, u64)> {
    let chunks = CHUNKS.min(total).max(1);
    (0..chunks)
        .map(|i| (total * i / chunks, total * (i + 1) / chunks))
        .filter(|(a, b)| a < b)
        .collect()
}

fn histogram_binary(c: &LinearCode, g: &Generators) -> Vec<u64> {
    let n = c.n();
    let words = n.div_ceil(64);
    let pack = |w: &[Elem]| {
        let mut b = vec![0u64; words];
        for (i, x) in w.iter().enumerate() {
            if !x.is_zero() {
                b[i / 64] |= 1 << (i % 64);
            }
        }
        b
    };
    let gens: Vec<Vec<u64>> = g.rows.iter().map(|r| pack(r)).collect();
    let parts: Vec<Vec<u64>> = chunk_bounds(g.total)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut hist = vec![0u64; n + 1];
            let mut cur = pack(&first_word(c, g, lo));
            let mut t = lo;
            loop {
                let wt: u32 = cur.iter().map(|x| x.count_ones()).sum();
                hist[wt as usize] += 1;
                if t + 1 == hi {
                    break;
                }
                let j = step_index(t, 2);
                for (a, b) in cur.iter_mut().zip(&gens[j]) {
                    *a ^= b;
                }
                t += 1;
            }
            hist
        })
        .collect();
    merge(parts, n)
}

fn histogram_general(c: &LinearCode, g: &Generators) -> Vec<u64> {
    let n = c.n();
    let ctx = c.ctx();
    let sparse: Vec<Vec<(usize, Elem)>> = g
        .rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, &x)| (i, x)).collect())
        .collect();
    let parts: Vec<Vec<u64>> = chunk_bounds(g.total)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut hist = vec![0u64; n + 1];
            let mut cur = first_word(c, g, lo);
            let mut wt = cur.iter().filter(|x| !x.is_zero()).count();
            let mut t = lo;
            loop {
                hist[wt] += 1;
                if t + 1 == hi {
                    break;
                }
                for &(i, y) in &sparse[step_index(t, g.p)] {
                    let old = cur[i];
                    let new = ctx.add(old, y);
                    cur[i] = new;
                    match (old.is_zero(), new.is_zero()) {
                        (true, false) => wt += 1,
                        (false, true) => wt -= 1,
                        _ => {}
                    }
                }
                t += 1;
            }
            hist
        })
        .collect();
    merge(parts, n)
}

fn merge(parts: Vec<Vec<u64>>, n: usize) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    for part in parts {
        for (h, x) in hist.iter_mut().zip(part) {
            *h += x;
        }
    }
    hist
}

pub fn weight_distribution(c: &LinearCode) -> Result<WeightDistribution> {
    weight_distribution_with_budget(c, DEFAULT_BUDGET)
}

/// Exact weight distribution by full enumeration of at most `budget` codewords.
pub fn weight_distribution_with_budget(c: &LinearCode, budget: u64) -> Result<WeightDistribution> {
    let g = generators(c, budget)?;
    let hist = if c.q() == 2 { histogram_binary(c, &g) } else { histogram_general(c, &g) };
    Ok(WeightDistribution::new(c.n(), c.k(), c.q(), hist.into_iter().map(BigUint::from).collect()))
}

/// Visits every codeword once, sequentially, in Gray-code order.
pub fn for_each_codeword(c: &LinearCode, budget: u64, mut f: impl FnMut(&[Elem])) -> Result<()> {
    let g = generators(c, budget)?;
    let ctx = c.ctx();
    let mut cur = vec![Elem::ZERO; c.n()];
    for t in 0..g.total {
        f(&cur);
        if t + 1 == g.total {
            break;
        }
        for (x, &y) in cur.iter_mut().zip(&g.rows[step_index(t, g.p)]) {
            *x = ctx.add(*x, y);
        }
    }
    Ok(())
}

/// All codewords in Gray-code order.
pub fn codewords(c: &LinearCode, budget: u64) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    for_each_codeword(c, budget, |w| out.push(w.to_vec()))?;
    Ok(out)
}
