//! Additive-character sums over the top field, as exact cyclotomic integers.
//!
//! χ_b(x) = ζ_p^{Tr(bx)} with Tr the absolute trace; χ_1 is the canonical character.

use super::{CycInt, Elem, FieldCtx, Level};
use crate::error::{Error, Result};

/// χ_1(x) = ζ_p^{Tr(x)}.
pub fn additive_char(ctx: &FieldCtx, x: Elem) -> CycInt {
    CycInt::zeta_pow(ctx.p(), ctx.abs_trace(x) as u64)
}

/// Σ_x ζ_p^{e(x)} for digit exponents e.
pub(crate) fn sum_of_exponents(p: u32, exps: impl Iterator<Item = u32>) -> CycInt {
    let mut counts = vec![0i64; p as usize];
    for e in exps {
        counts[(e % p) as usize] += 1;
    }
    CycInt::from_exponent_counts(p, &counts)
}

fn check_odd(ctx: &FieldCtx) -> Result<()> {
    CycInt::check_p(ctx.p())?;
    if ctx.p() == 2 {
        return Err(Error::InvalidParams("quadratic Gauss sums need odd characteristic".into()));
    }
    Ok(())
}

/// G(η, χ_b) = Σ_{c ≠ 0} η(c) χ_b(c) over the top field, by direct summation.
pub fn gauss_sum(ctx: &FieldCtx, b: Elem) -> Result<CycInt> {
    check_odd(ctx)?;
    let p = ctx.p();
    let mut counts = vec![0i64; p as usize];
    for c in ctx.elements().skip(1) {
        let e = ctx.abs_trace(ctx.mul(b, c)) as usize;
        counts[e] += ctx.quadratic_char(c, Level::Top) as i64;
    }
    Ok(CycInt::from_exponent_counts(p, &counts))
}

/// G(η, χ_1) from the classical evaluation: (-1)^{e-1} √q for p ≡ 1 (mod 4)
/// and (-1)^{e-1} i^e √q for p ≡ 3 (mod 4), where q = p^e. Both cases equal
/// (-1)^{e-1} g^e with g the prime-field Gauss sum, a square root of ±p.
pub fn gauss_sum_closed(ctx: &FieldCtx) -> Result<CycInt> {
    check_odd(ctx)?;
    let p = ctx.p();
    let mut g = CycInt::zero(p);
    for c in 1..p {
        let eta = if legendre(c, p) { 1 } else { -1 };
        g += CycInt::zeta_pow(p, c as u64).scale(eta);
    }
    let e = ctx.degree();
    let mut acc = CycInt::from_int(p, 1);
    for _ in 0..e {
        acc = acc * g;
    }
    Ok(if e.is_multiple_of(2) { -acc } else { acc })
}

fn legendre(c: u32, p: u32) -> bool {
    (1..p).any(|x| x * x % p == c)
}

/// Σ_c χ_b(a2 c² + a1 c + a0), by direct summation.
pub fn weil_sum(ctx: &FieldCtx, b: Elem, a2: Elem, a1: Elem, a0: Elem) -> CycInt {
    let exps = ctx.elements().map(|c| {
        let v = ctx.add(ctx.add(ctx.mul(a2, ctx.mul(c, c)), ctx.mul(a1, c)), a0);
        ctx.abs_trace(ctx.mul(b, v))
    });
    sum_of_exponents(ctx.p(), exps)
}

/// The quadratic Weil sum in closed form (b ≠ 0, a2 ≠ 0). Odd q:
/// χ_b(a0 − a1²/(4a2)) η(a2) G(η, χ_b), with G(η, χ_b) = η(b) G(η, χ_1).
/// Even q: q χ_b(a0) when a2 = b a1², and 0 otherwise.
pub fn weil_sum_closed(ctx: &FieldCtx, b: Elem, a2: Elem, a1: Elem, a0: Elem) -> Result<CycInt> {
    if b.is_zero() || a2.is_zero() {
        return Err(Error::InvalidParams("the closed form needs b ≠ 0 and a2 ≠ 0".into()));
    }
    let p = ctx.p();
    if p == 2 {
        return Ok(if a2 == ctx.mul(b, ctx.mul(a1, a1)) {
            additive_char(ctx, ctx.mul(b, a0)).scale(ctx.size() as i64)
        } else {
            CycInt::zero(2)
        });
    }
    let four_a2 = ctx.mul_int(a2, 4 % p);
    let shift = ctx.div(ctx.mul(a1, a1), four_a2).expect("a2 ≠ 0");
    let chi = additive_char(ctx, ctx.mul(b, ctx.sub(a0, shift)));
    let eta = ctx.quadratic_char(a2, Level::Top) * ctx.quadratic_char(b, Level::Top);
    Ok((chi * gauss_sum_closed(ctx)?).scale(eta as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_sum_over_gf3() {
        let ctx = FieldCtx::new(3, 1, 1).unwrap();
        let g = gauss_sum(&ctx, Elem::ONE).unwrap();
        assert_eq!((g * g).as_integer(), Some(-3));
        assert_eq!(g, gauss_sum_closed(&ctx).unwrap());
    }

    #[test]
    fn even_weil_sum() {
        let ctx = FieldCtx::new(2, 1, 2).unwrap();
        // c² + c over GF(4) takes values in GF(2) with Tr = 0 always.
        let s = weil_sum(&ctx, Elem::ONE, Elem::ONE, Elem::ONE, Elem::ZERO);
        assert_eq!(s.as_integer(), Some(4));
        assert_eq!(weil_sum_closed(&ctx, Elem::ONE, Elem::ONE, Elem::ONE, Elem::ZERO).unwrap(), s);
    }
}
