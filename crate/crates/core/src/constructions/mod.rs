//! Code families built from defining sets of functions, and their weight predictors.
//!
//! * [`scalar`]: the length-(#D+1) code over GF(q^m) with D = {f(x)+g(y)+h(z) = 0}
//!   for three scalar functions, its subfield code and closed-form weights.
//! * [`vectorial`]: the same idea for two vectorial functions, D = {f(x)+g(y) = 0}.
//! * [`generic`]: the first and second generic constructions C(f) and C_F.
//!
//! Every predictor refuses (with [`Error::Hypothesis`]) when the function
//! classes it needs are not present; the brute-force enumerators always work.

pub mod generic;
pub mod scalar;
pub mod vectorial;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::FnSpec;
use crate::walsh::component_values;
use crate::galois::chars::sum_of_exponents;
use crate::galois::{CycInt, Elem, FieldCtx, Level};
use crate::linearcode::WeightDistribution;

pub use generic::{
    first_generic_code, first_generic_table, first_generic_table_linear_reading, predict_first_generic,
    second_generic_code,
};
pub use scalar::{
    lambda_binary_walsh, lambda_norm_even, lambda_norm_odd, lambda_scalar, phi_scalar, predict_scalar,
    scalar_theorem_table, scalar_weight, ScalarSums, ScalarTriple,
};
pub use vectorial::{
    lambda_bar, lambda_bar_walsh, phi_bar, predict_vectorial, vectorial_theorem_table, VectorialPair,
    VectorialSums,
};

/// Solutions of the defining equation, in lexicographic order of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet<const A: usize> {
    tuples: Vec<[Elem; A]>,
}

impl<const A: usize> DefiningSet<A> {
    pub fn tuples(&self) -> &[[Elem; A]] {
        &self.tuples
    }
    pub fn size(&self) -> usize {
        self.tuples.len()
    }
}

/// One row of a predicted weight table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedRow {
    pub weight: u64,
    pub multiplicity: BigUint,
    /// Which case of the formula produced the row.
    pub case: String,
}

/// A weight table derived from a closed form rather than enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedDistribution {
    pub source: String,
    pub n: u64,
    pub k: u64,
    pub q: u32,
    pub rows: Vec<PredictedRow>,
}

impl PredictedDistribution {
    pub fn total(&self) -> BigUint {
        self.rows.iter().map(|r| &r.multiplicity).sum()
    }

    /// Rows merged by weight.
    pub fn to_distribution(&self) -> WeightDistribution {
        let pairs = self
            .rows
            .iter()
            .filter(|r| !r.multiplicity.is_zero())
            .map(|r| (r.weight as usize, r.multiplicity.clone()));
        WeightDistribution::from_pairs(self.n as usize, self.k as usize, self.q, pairs)
    }

    pub fn matches(&self, observed: &WeightDistribution) -> bool {
        observed.n() == self.n as usize && self.to_distribution().counts() == observed.counts()
    }
}

impl Serialize for PredictedDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let table: Vec<(u64, serde_json::Value, &str)> = self
            .rows
            .iter()
            .map(|r| (r.weight, crate::linearcode::count_value(&r.multiplicity), r.case.as_str()))
            .collect();
        let mut st = serializer.serialize_struct("PredictedDistribution", 5)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("table", &table)?;
        st.end()
    }
}

pub(crate) fn row(weight: u64, multiplicity: BigUint, case: &str) -> PredictedRow {
    PredictedRow { weight, multiplicity, case: case.to_string() }
}

/// 2^e as a big integer.
pub(crate) fn two(e: u64) -> BigUint {
    BigUint::from(1u32) << e
}

/// δ(b) = 1 when Tr_{q^m/q}(b) ≠ 0.
pub fn delta(ctx: &FieldCtx, b: Elem) -> u64 {
    u64::from(!ctx.trace(b, Level::Sub).is_zero())
}

/// The tower of a function on the top field.
pub(crate) fn field_of(f: &FnSpec) -> Result<&Arc<FieldCtx>> {
    f.ctx().ok_or_else(|| Error::Incompatible(format!("{} is not defined on a field", f.name())))
}

pub(crate) fn same_field(fs: &[&FnSpec]) -> Result<Arc<FieldCtx>> {
    let ctx = field_of(fs[0])?;
    for f in &fs[1..] {
        if field_of(f)? != ctx {
            return Err(Error::Incompatible("functions live on different fields".into()));
        }
    }
    Ok(ctx.clone())
}

/// Exact rational value of a cyclotomic integer that must lie in Z.
pub(crate) fn integral(x: &CycInt, what: &str) -> Result<i128> {
    x.as_integer().map(i128::from).ok_or_else(|| Error::NonIntegral(format!("{what} = {x}")))
}

pub(crate) fn exact_div(num: i128, den: i128, what: &str) -> Result<i128> {
    if num % den != 0 {
        return Err(Error::NonIntegral(format!("{what}: {num}/{den}")));
    }
    Ok(num / den)
}

/// A(ω, β) = Σ_x ζ^{⟨ω, F(x)⟩ + Tr(βx)} for every nonzero ω of the codomain
/// and every β of the top field: row `i` belongs to the i-th nonzero ω.
pub(crate) struct AmplitudeTable {
    pub omegas: Vec<Elem>,
    size: usize,
    values: Vec<CycInt>,
}

impl AmplitudeTable {
    pub fn new(f: &FnSpec) -> Result<AmplitudeTable> {
        let ctx = field_of(f)?;
        let omegas: Vec<Elem> = f.codomain().elements().into_iter().filter(|w| !w.is_zero()).collect();
        let size = ctx.size() as usize;
        let mut values = Vec::with_capacity(omegas.len() * size);
        for &w in &omegas {
            // component_values holds W(ω, λ) with the sign of λ flipped.
            let w_vals = component_values(f, w)?;
            values.extend(ctx.elements().map(|beta| w_vals[ctx.neg(beta).0 as usize]));
        }
        Ok(AmplitudeTable { omegas, size, values })
    }

    pub fn get(&self, omega_idx: usize, beta: Elem) -> CycInt {
        self.values[omega_idx * self.size + beta.0 as usize]
    }
}

/// Σ_x ζ^{⟨s, F(x)⟩} for every nonzero s of the codomain, keyed by s.
pub(crate) fn output_sums(f: &FnSpec) -> Result<BTreeMap<Elem, CycInt>> {
    let p = f.p();
    CycInt::check_p(p)?;
    let cod = f.codomain();
    Ok(cod
        .elements()
        .into_iter()
        .filter(|s| !s.is_zero())
        .map(|s| (s, sum_of_exponents(p, f.table().iter().map(|&y| cod.pair(s, y)))))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicted_rows_merge() {
        let pd = PredictedDistribution {
            source: "t".into(),
            n: 4,
            k: 1,
            q: 2,
            rows: vec![row(0, 1u32.into(), "zero"), row(4, 1u32.into(), "a"), row(4, 0u32.into(), "b")],
        };
        assert_eq!(pd.total(), BigUint::from(2u32));
        let wd = pd.to_distribution();
        assert!(wd.is_consistent());
        assert!(pd.matches(&wd));
    }
}
