use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::arith::big_pow;

/// Number of codewords of each Hamming weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    k: usize,
    q: u32,
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    /// `counts[w]` codewords of weight w; missing weights count zero.
    pub fn new(n: usize, k: usize, q: u32, mut counts: Vec<BigUint>) -> WeightDistribution {
        counts.resize(n + 1, BigUint::zero());
        WeightDistribution { n, k, q, counts }
    }

    pub fn from_pairs(n: usize, k: usize, q: u32, pairs: impl IntoIterator<Item = (usize, BigUint)>) -> Self {
        let mut counts = vec![BigUint::zero(); n + 1];
        for (w, c) in pairs {
            counts[w] += c;
        }
        Self::new(n, k, q, counts)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, w: usize) -> BigUint {
        self.counts.get(w).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Σ counts = q^k and counts[0] = 1.
    pub fn is_consistent(&self) -> bool {
        self.total() == big_pow(self.q as u64, self.k as u64) && self.counts[0] == BigUint::from(1u32)
    }

    /// Weights with a nonzero count, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.n).filter(|&w| !self.counts[w].is_zero()).collect()
    }

    /// (weight, count) pairs with nonzero count, ascending by weight.
    pub fn pairs(&self) -> Vec<(usize, BigUint)> {
        self.support().into_iter().map(|w| (w, self.counts[w].clone())).collect()
    }

    pub fn min_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&w| !self.counts[w].is_zero())
    }

    pub fn max_weight(&self) -> Option<usize> {
        (1..=self.n).rev().find(|&w| !self.counts[w].is_zero())
    }

    /// Number of distinct nonzero weights.
    pub fn num_weights(&self) -> usize {
        self.support().into_iter().filter(|&w| w > 0).count()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,count\n");
        for (w, c) in self.pairs() {
            let _ = writeln!(s, "{w},{c}");
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| Weight | Multiplicity |\n|---:|---:|\n");
        for (w, c) in self.pairs() {
            let _ = writeln!(s, "| {w} | {c} |");
        }
        s
    }
}

/// Serializes a big count as a JSON number when it fits in u64, otherwise as a string.
pub(crate) fn count_value(c: &BigUint) -> serde_json::Value {
    match c.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let table: Vec<(usize, serde_json::Value)> =
            self.pairs().iter().map(|(w, c)| (*w, count_value(c))).collect();
        let mut st = serializer.serialize_struct("WeightDistribution", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("table", &table)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports() {
        let wd = WeightDistribution::from_pairs(3, 1, 2, [(0, 1u32.into()), (3, 1u32.into())]);
        assert!(wd.is_consistent());
        assert_eq!(wd.to_csv(), "weight,count\n0,1\n3,1\n");
        assert!(wd.to_markdown().contains("| 3 | 1 |"));
        assert_eq!(wd.min_distance(), Some(3));
        let json = serde_json::to_string(&wd).unwrap();
        assert_eq!(json, r#"{"n":3,"k":1,"q":2,"table":[[0,1],[3,1]]}"#);
    }
}
