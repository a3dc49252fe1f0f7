//! CSS codes from pairs of classical codes and the classical conditions for
//! transversal phase gates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::FnSpec;
use crate::galois::Elem;
use crate::linearcode::{for_each_codeword, weight_distribution_with_budget, LinearCode};
use crate::walsh::component_values;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum CssDistance {
    Exact(u64),
    /// min(d(C_X), d(C_Z)), used when the cosets are too large to enumerate.
    LowerBound(u64),
    /// No logical qubits, so there is nothing to measure.
    Undefined,
}

#[derive(Clone, Debug)]
pub struct CssCode {
    pub cx: LinearCode,
    pub cz: LinearCode,
    pub n_phys: usize,
    pub k_logical: usize,
    pub distance: CssDistance,
}

/// Smallest weight of a codeword of `c` outside `avoid`, or None if c ⊆ avoid.
fn min_weight_outside(c: &LinearCode, avoid: &LinearCode, budget: u64) -> Result<Option<u64>> {
    let mut best: Option<u64> = None;
    for_each_codeword(c, budget, |w| {
        let wt = w.iter().filter(|x| !x.is_zero()).count() as u64;
        if wt > 0 && best.is_none_or(|b| wt < b) && !avoid.contains(w) {
            best = Some(wt);
        }
    })?;
    Ok(best)
}

/// Validates C_Z^⊥ ⊆ C_X and computes k = dim C_X + dim C_Z - N and the distance.
pub fn css_build(cx: &LinearCode, cz: &LinearCode, budget: u64) -> Result<CssCode> {
    if cx.n() != cz.n() {
        return Err(Error::LengthMismatch(cx.n(), cz.n()));
    }
    if cx.ctx() != cz.ctx() || cx.q() != cz.q() {
        return Err(Error::Incompatible("C_X and C_Z live over different fields".into()));
    }
    let (cx_perp, cz_perp) = (cx.dual(), cz.dual());
    if !cz_perp.is_subcode_of(cx) {
        return Err(Error::InclusionViolated);
    }
    let n = cx.n();
    let k_logical = cx.k() + cz.k() - n;
    let distance = if k_logical == 0 {
        CssDistance::Undefined
    } else {
        match (min_weight_outside(cx, &cz_perp, budget), min_weight_outside(cz, &cx_perp, budget)) {
            (Ok(a), Ok(b)) => CssDistance::Exact(a.into_iter().chain(b).min().expect("k > 0 leaves a logical operator")),
            (Err(Error::Budget { .. }), _) | (_, Err(Error::Budget { .. })) => {
                let dx = cx.min_distance(budget).ok().flatten();
                let dz = cz.min_distance(budget).ok().flatten();
                CssDistance::LowerBound(dx.into_iter().chain(dz).min().unwrap_or(1) as u64)
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    };
    Ok(CssCode { cx: cx.clone(), cz: cz.clone(), n_phys: n, k_logical, distance })
}

/// Every codeword weight is a multiple of 4 (binary codes only).
pub fn css_t_check(cx: &LinearCode, budget: u64) -> Result<bool> {
    let p = cx.ctx().p();
    if p != 2 || cx.q() != 2 {
        return Err(Error::CharacteristicMismatch(2, cx.q()));
    }
    let wd = weight_distribution_with_budget(cx, budget)?;
    Ok(wd.support().iter().all(|w| w % 4 == 0))
}

/// Σ_i c_i^k ≡ 0 (mod p) for every codeword, with symbols lifted to 0..p-1.
/// k must divide p - 1; for p = 2 the exponent 2 is also accepted (even weight).
pub fn phase_moment_check(cx: &LinearCode, k: u32, budget: u64) -> Result<bool> {
    let p = cx.ctx().p();
    if cx.q() != p {
        return Err(Error::Incompatible("the moment condition needs a code over the prime field".into()));
    }
    if k == 0 || (!(p - 1).is_multiple_of(k) && !(p == 2 && k == 2)) {
        return Err(Error::InvalidParams(format!("k = {k} does not divide p - 1 = {}", p - 1)));
    }
    let powers: Vec<u64> = (0..p as u64).map(|c| c.pow(k) % p as u64).collect();
    let mut ok = true;
    for_each_codeword(cx, budget, |w| {
        if ok {
            let s: u64 = w.iter().map(|x| powers[x.0 as usize]).sum();
            ok = s.is_multiple_of(p as u64);
        }
    })?;
    Ok(ok)
}

/// wt(c_a) = 2^{n-1} - W_F(a, 0)/2 for the component codeword (⟨a, F(x)⟩)_x.
pub fn component_weight(f: &FnSpec, a: Elem) -> Result<u64> {
    if f.p() != 2 {
        return Err(Error::CharacteristicMismatch(2, f.p()));
    }
    if a.is_zero() {
        return Err(Error::Degenerate("the component for a = 0 is the zero codeword".into()));
    }
    let w = component_values(f, a)?[0]
        .as_integer()
        .ok_or_else(|| Error::NonIntegral("binary Walsh value".into()))?;
    let half = (f.domain().size() / 2) as i64;
    Ok((half - w / 2) as u64)
}

/// The Hamming weight of (⟨a, F(x)⟩)_x by counting.
pub fn component_weight_direct(f: &FnSpec, a: Elem) -> u64 {
    let cod = f.codomain();
    f.table().iter().filter(|&&y| cod.pair(a, y) != 0).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{first_generic_code, second_generic_code};
    use crate::functions::{fn_gold, fn_power, fn_zero};
    use crate::galois::{FieldCtx, Level};

    const BUDGET: u64 = 1 << 20;

    #[test]
    fn whole_space_pair() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let all = LinearCode::whole_space(&ctx, Level::Prime, 4);
        let css = css_build(&all, &all, BUDGET).unwrap();
        assert_eq!(css.k_logical, 4);
        assert_eq!(css.distance, CssDistance::Exact(1));
    }

    #[test]
    fn component_code_with_its_dual() {
        let ctx = FieldCtx::new(2, 1, 5).unwrap();
        let cf = second_generic_code(&fn_power(&ctx, 3)).unwrap();
        let css = css_build(&cf, &cf.dual(), BUDGET).unwrap();
        assert_eq!(css.k_logical, 0);
        assert_eq!(css.distance, CssDistance::Undefined);
    }

    #[test]
    fn rejects_missing_inclusion() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let c = LinearCode::from_rows(&ctx, Level::Prime, 3, vec![vec![Elem(1), Elem(1), Elem(0)]]).unwrap();
        assert!(matches!(css_build(&c, &c, BUDGET), Err(Error::InclusionViolated)));
    }

    #[test]
    fn t_divisibility_depends_on_length() {
        let big = FieldCtx::new(2, 1, 5).unwrap();
        assert!(css_t_check(&second_generic_code(&fn_gold(&big, 1).unwrap()).unwrap(), BUDGET).unwrap());
        // x³ permutes GF(8), so its components are balanced and C_F is constant-weight 4;
        // adding the linear terms exposes the weights 4 ± 2.
        let small = FieldCtx::new(2, 1, 3).unwrap();
        let gold = fn_gold(&small, 1).unwrap();
        assert!(css_t_check(&second_generic_code(&gold).unwrap(), BUDGET).unwrap());
        assert!(!css_t_check(&first_generic_code(&gold).unwrap(), BUDGET).unwrap());
        assert!(css_t_check(&LinearCode::zero(&small, Level::Prime, 8), BUDGET).unwrap());
    }

    #[test]
    fn ternary_square_moments() {
        let ctx = FieldCtx::new(3, 1, 3).unwrap();
        let cf = second_generic_code(&fn_power(&ctx, 2)).unwrap();
        assert!(phase_moment_check(&cf, 2, BUDGET).unwrap());
        assert!(matches!(phase_moment_check(&cf, 3, BUDGET), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn component_weights_match_counts() {
        let ctx = FieldCtx::new(2, 1, 5).unwrap();
        for f in [fn_power(&ctx, 3), fn_power(&ctx, 7), fn_zero(&ctx)] {
            for a in ctx.elements().skip(1) {
                assert_eq!(component_weight(&f, a).unwrap(), component_weight_direct(&f, a));
            }
        }
        assert!(matches!(component_weight(&fn_zero(&ctx), Elem::ZERO), Err(Error::Degenerate(_))));
    }
}
