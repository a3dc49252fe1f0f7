//! The first generic construction C(f) = {(Tr(a f(x) + bx))_x} and the second
//! generic construction C_F = {(⟨a, F(x)⟩)_x}, both over the prime field.

use super::{row, two, PredictedDistribution};
use crate::error::{Error, Result};
use crate::functions::{FnKind, FnSpec, Space};
use crate::galois::{Elem, FieldCtx, Level};
use crate::linearcode::LinearCode;
use crate::walsh::spectrum_summary;

/// A basis of the space over GF(p).
fn prime_basis(space: &Space) -> Vec<Elem> {
    match space {
        Space::Field(c) => c.prime_basis(Level::Top),
        Space::Subfield(c) => c.prime_basis(Level::Sub),
        Space::Product(a, b) => {
            let mut out: Vec<Elem> = prime_basis(a).into_iter().map(|u| space.join(u, Elem::ZERO)).collect();
            out.extend(prime_basis(b).into_iter().map(|v| space.join(Elem::ZERO, v)));
            out
        }
    }
}

fn prime_ctx(space: &Space) -> std::sync::Arc<FieldCtx> {
    match space {
        Space::Field(c) | Space::Subfield(c) => c.clone(),
        Space::Product(a, _) => prime_ctx(a),
    }
}

/// C(f) over GF(p) for f on GF(p^m): the trace code of the rows (x) and (f(x)).
pub fn first_generic_code(f: &FnSpec) -> Result<LinearCode> {
    let ctx = super::field_of(f)?;
    if f.kind() != FnKind::Vectorial || f.codomain() != f.domain() {
        return Err(Error::Incompatible("the first generic construction needs f: GF(p^m) → GF(p^m)".into()));
    }
    let mut rows = Vec::new();
    for beta in ctx.prime_basis(Level::Top) {
        rows.push(ctx.elements().map(|x| Elem(ctx.abs_trace(ctx.mul(beta, x)))).collect());
        rows.push(f.table().iter().map(|&y| Elem(ctx.abs_trace(ctx.mul(beta, y)))).collect());
    }
    LinearCode::from_rows(ctx, Level::Prime, ctx.size() as usize, rows)
}

/// C_F over GF(p), spanned by the component codewords (⟨a, F(x)⟩)_x.
pub fn second_generic_code(f: &FnSpec) -> Result<LinearCode> {
    let cod = f.codomain();
    let ctx = prime_ctx(f.domain());
    let rows = prime_basis(cod)
        .into_iter()
        .map(|a| f.table().iter().map(|&y| Elem(cod.pair(a, y))).collect())
        .collect();
    LinearCode::from_rows(&ctx, Level::Prime, f.domain().size() as usize, rows)
}

/// Distribution of C(F) for F on GF(2^m) normalized with uniform amplitude s,
/// m + s even and s ≤ m - 2. The side multiplicities carry 2^{(m-s-2)/2}.
pub fn first_generic_table(m: u32, s: u32) -> Result<PredictedDistribution> {
    first_generic_rows(m, s, two)
}

/// The same table with the side term read as 2·(m-s-2)/2 = m-s-2; kept so the
/// two readings can be compared against enumeration.
pub fn first_generic_table_linear_reading(m: u32, s: u32) -> Result<PredictedDistribution> {
    first_generic_rows(m, s, |e| (2 * e).into())
}

fn first_generic_rows(
    m: u32,
    s: u32,
    side_term: impl Fn(u64) -> num_bigint::BigUint,
) -> Result<PredictedDistribution> {
    if !(m + s).is_multiple_of(2) || s + 2 > m {
        return Err(Error::Hypothesis(format!("no table for m={m}, s={s}: need m + s even and s ≤ m - 2")));
    }
    let (m, s) = (m as u64, s as u64);
    let half = 1u64 << (m - 1);
    let e = 1u64 << ((m + s) / 2 - 1);
    let comps = two(m) - 1u32;
    let t = side_term((m - s - 2) / 2);
    let rows = vec![
        row(0, 1u32.into(), "zero"),
        row(half - e, &comps * (two(m - s - 1) + &t), "W_F(a,b) > 0"),
        row(half, two(2 * m) + two(m - s) - two(2 * m - s) - 1u32, "a = 0 or W_F(a,b) = 0"),
        row(half + e, &comps * (two(m - s - 1) - &t), "W_F(a,b) < 0"),
    ];
    Ok(PredictedDistribution { source: "first-generic-table".into(), n: 1 << m, k: 2 * m, q: 2, rows })
}

/// Checks the hypotheses of [`first_generic_table`] for C(F) and returns the table.
pub fn predict_first_generic(f: &FnSpec) -> Result<PredictedDistribution> {
    let ctx = super::field_of(f)?;
    if ctx.p() != 2 || ctx.r() != 1 {
        return Err(Error::Hypothesis("the table covers GF(2^m) only".into()));
    }
    if !f.is_normalized() {
        return Err(Error::Hypothesis(format!("{} is not normalized", f.name())));
    }
    let s = spectrum_summary(f)?
        .s()
        .ok_or_else(|| Error::Hypothesis(format!("{} has no single amplitude", f.name())))?;
    first_generic_table(ctx.m(), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::VectorialPair;
    use crate::functions::{fn_identity, fn_invert, fn_power, fn_zero};
    use crate::linearcode::weight_distribution;

    #[test]
    fn identity_code_has_dimension_m() {
        let ctx = FieldCtx::new(2, 1, 4).unwrap();
        assert_eq!(first_generic_code(&fn_identity(&ctx)).unwrap().k(), 4);
    }

    #[test]
    fn zero_function_gives_zero_code() {
        let ctx = FieldCtx::new(3, 1, 2).unwrap();
        assert_eq!(second_generic_code(&fn_zero(&ctx)).unwrap().k(), 0);
    }

    #[test]
    fn inverse_cube_code_is_the_constant_free_subcode() {
        for m in [3, 5] {
            let ctx = FieldCtx::new(2, 1, m).unwrap();
            let g = fn_power(&ctx, 3);
            let c = first_generic_code(&fn_invert(&g).unwrap()).unwrap();
            let pair = VectorialPair::new(&fn_identity(&ctx), &g).unwrap();
            let sub = pair.subcode_without_constant().unwrap();
            assert!(c.is_subcode_of(&sub) && sub.is_subcode_of(&c));
            assert_eq!(c.k(), 2 * m as usize);
        }
    }

    #[test]
    fn cube_tables_against_enumeration() {
        for m in [3u32, 5, 7] {
            let ctx = FieldCtx::new(2, 1, m).unwrap();
            let ginv = fn_invert(&fn_power(&ctx, 3)).unwrap();
            let wd = weight_distribution(&first_generic_code(&ginv).unwrap()).unwrap();
            let table = predict_first_generic(&ginv).unwrap();
            assert!(table.matches(&wd), "m={m}");
            let linear = first_generic_table_linear_reading(m, 1).unwrap();
            assert_eq!(linear.matches(&wd), m != 3, "m={m}");
        }
    }

    #[test]
    fn second_generic_cube_weights() {
        let ctx = FieldCtx::new(2, 1, 5).unwrap();
        let wd = weight_distribution(&second_generic_code(&fn_power(&ctx, 3)).unwrap()).unwrap();
        // x³ permutes GF(32), so every component is balanced.
        assert_eq!(wd.support(), vec![0, 16]);
    }
}
