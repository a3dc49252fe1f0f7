//! Linear codes over a field of the tower.
//!
//! Symbols are top-field [`Elem`]s restricted to the code's level. Every code
//! keeps the generator matrix it was built from together with its reduced
//! row echelon form, so `k` is always the true rank.

mod enumerate;
mod io;
mod macwilliams;
mod weights;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx, Level};

pub use enumerate::{
    codewords, for_each_codeword, weight_distribution, weight_distribution_with_budget, DEFAULT_BUDGET,
};
pub use io::GeneratorJson;
pub use macwilliams::{krawtchouk, macwilliams};
pub use weights::WeightDistribution;
pub(crate) use weights::count_value;

#[derive(Clone, Debug)]
pub struct LinearCode {
    ctx: Arc<FieldCtx>,
    level: Level,
    n: usize,
    gen: Vec<Vec<Elem>>,
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl PartialEq for LinearCode {
    /// Equality of row spaces.
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.level == other.level && self.n == other.n && self.basis == other.basis
    }
}

impl LinearCode {
    /// Builds the row space of `rows` over the given level.
    pub fn from_rows(ctx: &Arc<FieldCtx>, level: Level, n: usize, rows: Vec<Vec<Elem>>) -> Result<LinearCode> {
        for row in &rows {
            if row.len() != n {
                return Err(Error::LengthMismatch(row.len(), n));
            }
            if let Some(bad) = row.iter().find(|&&x| !ctx.in_level(x, level)) {
                return Err(Error::InvalidParams(format!("symbol {} is not in the {level:?} field", bad.0)));
            }
        }
        let (basis, pivots) = rref(ctx, level, n, rows.clone());
        Ok(LinearCode { ctx: ctx.clone(), level, n, gen: rows, basis, pivots })
    }

    pub fn zero(ctx: &Arc<FieldCtx>, level: Level, n: usize) -> LinearCode {
        Self::from_rows(ctx, level, n, Vec::new()).expect("empty generator")
    }

    pub fn whole_space(ctx: &Arc<FieldCtx>, level: Level, n: usize) -> LinearCode {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
            .collect();
        Self::from_rows(ctx, level, n, rows).expect("identity generator")
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn level(&self) -> Level {
        self.level
    }
    /// Size of the symbol field.
    pub fn q(&self) -> u32 {
        self.ctx.level_size(self.level)
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.basis.len()
    }
    /// The generator matrix as supplied.
    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.gen
    }
    /// Reduced row echelon basis.
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Message times basis.
    pub fn encode(&self, msg: &[Elem]) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; self.n];
        for (&c, row) in msg.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = self.ctx.add(*o, self.ctx.mul(c, g));
            }
        }
        out
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut v = word.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc];
            if c.is_zero() {
                continue;
            }
            for (x, &g) in v.iter_mut().zip(row) {
                *x = self.ctx.sub(*x, self.ctx.mul(c, g));
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    /// Deletes coordinate `pos`.
    pub fn puncture(&self, pos: usize) -> Result<LinearCode> {
        if pos >= self.n {
            return Err(Error::OutOfRange { pos, len: self.n });
        }
        let rows = self
            .gen
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(i, _)| i != pos).map(|(_, &x)| x).collect())
            .collect();
        Self::from_rows(&self.ctx, self.level, self.n - 1, rows)
    }

    /// The Euclidean dual, from the null space of the echelon basis.
    pub fn dual(&self) -> LinearCode {
        let ctx = &self.ctx;
        let mut is_pivot = vec![false; self.n];
        for &pc in &self.pivots {
            is_pivot[pc] = true;
        }
        let rows: Vec<Vec<Elem>> = (0..self.n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Elem::ZERO; self.n];
                v[f] = Elem::ONE;
                for (row, &pc) in self.basis.iter().zip(&self.pivots) {
                    v[pc] = ctx.neg(row[f]);
                }
                v
            })
            .collect();
        Self::from_rows(ctx, self.level, self.n, rows).expect("null space rows are well formed")
    }

    /// Whether every row of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.ctx == other.ctx
            && self.q() == other.q()
            && self.n == other.n
            && self.basis.iter().all(|r| other.contains(r))
    }

    /// Whether G·G^T = 0.
    pub fn is_self_orthogonal(&self) -> bool {
        self.gen.iter().all(|a| self.gen.iter().all(|b| self.dot(a, b).is_zero()))
    }

    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(Elem::ZERO, |acc, (&x, &y)| self.ctx.add(acc, self.ctx.mul(x, y)))
    }

    /// Minimum distance, by enumeration of the code or, when that exceeds the
    /// budget, by MacWilliams from an enumeration of the dual.
    pub fn min_distance(&self, budget: u64) -> Result<Option<usize>> {
        match weight_distribution_with_budget(self, budget) {
            Ok(wd) => Ok(wd.min_distance()),
            Err(Error::Budget { .. }) => {
                let dual_wd = weight_distribution_with_budget(&self.dual(), budget)?;
                Ok(macwilliams(&dual_wd)?.min_distance())
            }
            Err(e) => Err(e),
        }
    }

    /// The GF(q)-code obtained by expanding every entry of the generator matrix
    /// in the polynomial basis of GF(q^m) over GF(q).
    pub fn subfield_code(&self) -> Result<LinearCode> {
        self.subfield_code_with_basis(&self.ctx.polynomial_basis())
    }

    pub fn subfield_code_with_basis(&self, basis: &[Elem]) -> Result<LinearCode> {
        if self.level != Level::Top {
            return Err(Error::InvalidParams("subfield codes start from a code over GF(q^m)".into()));
        }
        let coords = self.ctx.coordinates(basis)?;
        let m = basis.len();
        let mut rows = Vec::with_capacity(self.gen.len() * m);
        for row in &self.gen {
            for l in 0..m {
                rows.push(row.iter().map(|x| coords[x.0 as usize][l]).collect());
            }
        }
        Self::from_rows(&self.ctx, Level::Sub, self.n, rows)
    }
}

fn rref(ctx: &FieldCtx, level: Level, n: usize, rows: Vec<Vec<Elem>>) -> (Vec<Vec<Elem>>, Vec<usize>) {
    if ctx.level_size(level) == 2 {
        return rref_binary(n, rows);
    }
    let mut rows = rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = ctx.inv(rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let c = row[col];
            for (x, &g) in row.iter_mut().zip(&pivot_row) {
                if !g.is_zero() {
                    *x = ctx.sub(*x, ctx.mul(c, g));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn rref_binary(n: usize, rows: Vec<Vec<Elem>>) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let words = n.div_ceil(64);
    let mut bits: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut b = vec![0u64; words];
            for (i, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    b[i / 64] |= 1 << (i % 64);
                }
            }
            b
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        if r == bits.len() {
            break;
        }
        let (w, mask) = (col / 64, 1u64 << (col % 64));
        let Some(sel) = (r..bits.len()).find(|&i| bits[i][w] & mask != 0) else {
            continue;
        };
        bits.swap(r, sel);
        let pivot_row = bits[r].clone();
        for (i, row) in bits.iter_mut().enumerate() {
            if i != r && row[w] & mask != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    bits.truncate(r);
    let out = bits
        .iter()
        .map(|b| (0..n).map(|i| Elem(((b[i / 64] >> (i % 64)) & 1) as u32)).collect())
        .collect();
    (out, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn rank_and_dual_of_hamming() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let g = vec![
            e(&[1, 0, 0, 0, 0, 1, 1]),
            e(&[0, 1, 0, 0, 1, 0, 1]),
            e(&[0, 0, 1, 0, 1, 1, 0]),
            e(&[0, 0, 0, 1, 1, 1, 1]),
            e(&[1, 1, 0, 0, 1, 1, 0]),
        ];
        let c = LinearCode::from_rows(&ctx, Level::Prime, 7, g).unwrap();
        assert_eq!(c.k(), 4);
        let d = c.dual();
        assert_eq!(d.k(), 3);
        for a in c.basis() {
            for b in d.basis() {
                assert!(c.dot(a, b).is_zero());
            }
        }
        assert_eq!(d.dual(), c);
        assert!(c.is_subcode_of(&c));
    }

    #[test]
    fn whole_space_and_zero() {
        let ctx = FieldCtx::new(3, 1, 1).unwrap();
        let w = LinearCode::whole_space(&ctx, Level::Prime, 4);
        assert_eq!(w.dual().k(), 0);
        assert_eq!(LinearCode::zero(&ctx, Level::Prime, 4).dual(), w);
    }

    #[test]
    fn puncture_repetition() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let c = LinearCode::from_rows(&ctx, Level::Prime, 5, vec![e(&[1; 5])]).unwrap();
        let p = c.puncture(0).unwrap();
        assert_eq!((p.n(), p.k()), (4, 1));
        assert_eq!(c.puncture(5).unwrap_err(), Error::OutOfRange { pos: 5, len: 5 });
    }

    #[test]
    fn subfield_of_whole_space() {
        let ctx = FieldCtx::new(2, 1, 3).unwrap();
        let w = LinearCode::whole_space(&ctx, Level::Top, 5);
        let s = w.subfield_code().unwrap();
        assert_eq!(s, LinearCode::whole_space(&ctx, Level::Sub, 5));
    }

    #[test]
    fn rejects_symbols_outside_level() {
        let ctx = FieldCtx::new(2, 1, 2).unwrap();
        assert!(LinearCode::from_rows(&ctx, Level::Prime, 2, vec![e(&[2, 1])]).is_err());
    }
}
