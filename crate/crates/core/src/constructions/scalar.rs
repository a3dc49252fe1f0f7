//! Codes from three scalar functions f, g, h: GF(q^m) → GF(q).
//!
//! D = {(x, y, z) : f(x) + g(y) + h(z) = 0}. The code over GF(q^m) has the
//! generator with rows (0 | 1…1), (1 | x_t), (0 | y_t), (0 | z_t), and its
//! subfield code is {c_{a,b,c,d} = (Tr(b), a + Tr(bx + cy + dz))_{t ∈ D}}
//! with a ∈ GF(q) and b, c, d ∈ GF(q^m). Tr is the relative trace to GF(q).
//!
//! The weight of c_{a,b,c,d} is expressed through two character sums:
//!
//! * Φ = Σ_{s ∈ GF(q)*} S_f(s) S_g(s) S_h(s), S_f(s) = Σ_x ζ^{Tr_{q/p}(s f(x))};
//! * Λ_{a,b,c,d} = Σ_{s ∈ GF(q)*} χ(sa) Σ_{ω ∈ GF(q)*} A_f(ω, sb) A_g(ω, sc) A_h(ω, sd),
//!   A_f(ω, β) = Σ_x ζ^{Tr_{q/p}(ω f(x)) + Tr(βx)} with the absolute trace.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{
    delta, exact_div, integral, row, same_field, two, AmplitudeTable, DefiningSet, PredictedDistribution,
};
use crate::error::{Error, Result};
use crate::functions::{fn_trace, fn_trace_square, FnKind, FnSpec};
use crate::galois::chars::{gauss_sum_closed, sum_of_exponents};
use crate::galois::{CycInt, Elem, FieldCtx, Level};
use crate::linearcode::{LinearCode, WeightDistribution};
use crate::walsh::spectrum_summary;

/// Three scalar functions on one field together with their defining set.
#[derive(Clone, Debug)]
pub struct ScalarTriple {
    ctx: Arc<FieldCtx>,
    f: FnSpec,
    g: FnSpec,
    h: FnSpec,
    set: DefiningSet<3>,
}

impl ScalarTriple {
    pub fn new(f: &FnSpec, g: &FnSpec, h: &FnSpec) -> Result<ScalarTriple> {
        for fun in [f, g, h] {
            if fun.kind() != FnKind::Scalar {
                return Err(Error::Incompatible(format!("{} is not a scalar function", fun.name())));
            }
        }
        let ctx = same_field(&[f, g, h])?;
        let set = defining_set(&ctx, f, g, h);
        Ok(ScalarTriple { ctx, f: f.clone(), g: g.clone(), h: h.clone(), set })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn functions(&self) -> [&FnSpec; 3] {
        [&self.f, &self.g, &self.h]
    }
    pub fn defining_set(&self) -> &DefiningSet<3> {
        &self.set
    }

    /// Length of the full code, #D + 1.
    pub fn length(&self) -> usize {
        self.set.size() + 1
    }

    /// The code over GF(q^m). Its dimension is the true rank, which may be below 4.
    pub fn build(&self) -> Result<LinearCode> {
        let n = self.length();
        let mut rows = vec![Vec::with_capacity(n); 4];
        for (i, first) in [Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO].into_iter().enumerate() {
            rows[i].push(first);
        }
        for &[x, y, z] in self.set.tuples() {
            rows[0].push(Elem::ONE);
            rows[1].push(x);
            rows[2].push(y);
            rows[3].push(z);
        }
        LinearCode::from_rows(&self.ctx, Level::Top, n, rows)
    }

    /// The subfield codeword c_{a,b,c,d}, first coordinate included.
    pub fn codeword(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> Vec<Elem> {
        let ctx = &*self.ctx;
        let mut word = Vec::with_capacity(self.length());
        word.push(ctx.trace(b, Level::Sub));
        for &[x, y, z] in self.set.tuples() {
            let v = ctx.add(ctx.add(ctx.mul(b, x), ctx.mul(c, y)), ctx.mul(d, z));
            word.push(ctx.add(a, ctx.trace(v, Level::Sub)));
        }
        word
    }

    /// Distribution over all q^{3m+1} message tuples by direct enumeration.
    pub fn brute_distribution(&self, punctured: bool) -> WeightDistribution {
        let ctx = &*self.ctx;
        let n = self.length() - usize::from(punctured);
        let columns: [Vec<Elem>; 3] =
            std::array::from_fn(|j| self.set.tuples().iter().map(|t| t[j]).collect());
        let hist = trace_histograms(ctx, &columns, |b, counts, hist| {
            let shift = if punctured { 0 } else { delta(ctx, b) as usize };
            for &a in ctx.sub_elements() {
                let zeros = counts[ctx.neg(a).0 as usize] as usize;
                hist[self.set.size() - zeros + shift] += 1;
            }
        });
        let k = 3 * self.ctx.m() as usize + 1;
        WeightDistribution::new(n, k, self.ctx.q(), hist.into_iter().map(BigUint::from).collect())
    }

    pub fn sums(&self) -> Result<ScalarSums> {
        ScalarSums::new(self)
    }

    /// Distribution from the character-sum weight formula, one evaluation per message.
    pub fn formula_distribution(&self, punctured: bool) -> Result<WeightDistribution> {
        let sums = self.sums()?;
        let ctx = &*self.ctx;
        let n = self.length() - usize::from(punctured);
        let tops: Vec<Elem> = ctx.elements().collect();
        let hists: Result<Vec<Vec<u64>>> = tops
            .par_iter()
            .map(|&b| {
                let mut hist = vec![0u64; n + 1];
                for &c in &tops {
                    for &d in &tops {
                        for &a in ctx.sub_elements() {
                            let w = sums.weight(a, b, c, d, punctured)? as usize;
                            *hist.get_mut(w).ok_or(Error::OutOfRange { pos: w, len: n + 1 })? += 1;
                        }
                    }
                }
                Ok(hist)
            })
            .collect();
        let hist = merge(hists?, n + 1);
        let k = 3 * ctx.m() as usize + 1;
        Ok(WeightDistribution::new(n, k, ctx.q(), hist.into_iter().map(BigUint::from).collect()))
    }

    /// Messages whose formula weight differs from the direct Hamming weight.
    pub fn formula_mismatches(&self) -> Result<Vec<[Elem; 4]>> {
        let sums = self.sums()?;
        let ctx = &*self.ctx;
        let mut bad = Vec::new();
        for b in ctx.elements() {
            for c in ctx.elements() {
                for d in ctx.elements() {
                    for &a in ctx.sub_elements() {
                        let direct = self.codeword(a, b, c, d).iter().filter(|x| !x.is_zero()).count() as u64;
                        if sums.weight(a, b, c, d, false)? != direct {
                            bad.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        Ok(bad)
    }
}

fn defining_set(ctx: &FieldCtx, f: &FnSpec, g: &FnSpec, h: &FnSpec) -> DefiningSet<3> {
    let mut by_value: Vec<Vec<Elem>> = vec![Vec::new(); ctx.size() as usize];
    for z in ctx.elements() {
        by_value[h.eval(z).0 as usize].push(z);
    }
    let mut tuples = Vec::new();
    for x in ctx.elements() {
        for y in ctx.elements() {
            let need = ctx.neg(ctx.add(f.eval(x), g.eval(y)));
            tuples.extend(by_value[need.0 as usize].iter().map(|&z| [x, y, z]));
        }
    }
    DefiningSet { tuples }
}

/// For every b (in parallel) and every remaining tuple of multipliers, counts how
/// often each value Tr(Σ_j m_j col_j[t]) occurs and hands the counts to `visit`,
/// which adds to a weight histogram.
pub(crate) fn trace_histograms<const A: usize>(
    ctx: &FieldCtx,
    columns: &[Vec<Elem>; A],
    visit: impl Fn(Elem, &[u64], &mut Vec<u64>) + Sync,
) -> Vec<u64> {
    let len = columns[0].len();
    let tops: Vec<Elem> = ctx.elements().collect();
    let traced = |mult: Elem, col: &[Elem]| -> Vec<Elem> {
        col.iter().map(|&x| ctx.trace(ctx.mul(mult, x), Level::Sub)).collect()
    };
    let hists: Vec<Vec<u64>> = tops
        .par_iter()
        .map(|&b| {
            let mut hist = vec![0u64; len + 2];
            let mut counts = vec![0u64; ctx.size() as usize];
            let base = traced(b, &columns[0]);
            let mut stack = vec![base];
            let mut idx = [0usize; A];
            // Odometer over the multipliers of columns 1..A.
            loop {
                while stack.len() < A {
                    let j = stack.len();
                    let t = traced(tops[idx[j]], &columns[j]);
                    let next: Vec<Elem> = stack[j - 1].iter().zip(&t).map(|(&u, &v)| ctx.add(u, v)).collect();
                    stack.push(next);
                }
                for &s in ctx.sub_elements() {
                    counts[s.0 as usize] = 0;
                }
                for &v in &stack[A - 1] {
                    counts[v.0 as usize] += 1;
                }
                visit(b, &counts, &mut hist);
                let mut j = A - 1;
                loop {
                    if j == 0 {
                        return hist;
                    }
                    stack.pop();
                    idx[j] += 1;
                    if idx[j] < tops.len() {
                        break;
                    }
                    idx[j] = 0;
                    j -= 1;
                }
            }
        })
        .collect();
    merge(hists, len + 2)
}

pub(crate) fn merge(hists: Vec<Vec<u64>>, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for h in hists {
        for (o, v) in out.iter_mut().zip(h) {
            *o += v;
        }
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Precomputed Φ and the amplitude tables behind Λ.
pub struct ScalarSums {
    ctx: Arc<FieldCtx>,
    phi: CycInt,
    tables: [AmplitudeTable; 3],
}

impl ScalarSums {
    pub fn new(t: &ScalarTriple) -> Result<ScalarSums> {
        let [f, g, h] = t.functions();
        Ok(ScalarSums {
            ctx: t.ctx.clone(),
            phi: phi_scalar(f, g, h)?,
            tables: [AmplitudeTable::new(f)?, AmplitudeTable::new(g)?, AmplitudeTable::new(h)?],
        })
    }

    pub fn phi(&self) -> CycInt {
        self.phi
    }

    pub fn lambda(&self, a: Elem, b: Elem, c: Elem, d: Elem) -> CycInt {
        let ctx = &*self.ctx;
        let p = ctx.p();
        let omegas = &self.tables[0].omegas;
        let mut acc = CycInt::zero(p);
        for &s in omegas {
            let (sb, sc, sd) = (ctx.mul(s, b), ctx.mul(s, c), ctx.mul(s, d));
            let mut inner = CycInt::zero(p);
            for w in 0..omegas.len() {
                inner += self.tables[0].get(w, sb) * self.tables[1].get(w, sc) * self.tables[2].get(w, sd);
            }
            acc += inner.mul_zeta(sub_trace(ctx, ctx.mul(s, a)) as u64);
        }
        acc
    }

    /// #D = q^{3m-1} + Φ/q.
    pub fn defining_set_size(&self) -> Result<u64> {
        let (q, m) = (self.ctx.q() as i128, self.ctx.m());
        let phi = integral(&self.phi, "Φ")?;
        Ok((q.pow(3 * m - 1) + exact_div(phi, q, "Φ/q")?) as u64)
    }

    pub fn weight(&self, a: Elem, b: Elem, c: Elem, d: Elem, punctured: bool) -> Result<u64> {
        let lambda = self.lambda(a, b, c, d);
        scalar_weight(&self.ctx, &self.phi, &lambda, [a, b, c, d], punctured)
    }
}

fn sub_trace(ctx: &FieldCtx, x: Elem) -> u32 {
    ctx.trace_between(x, Level::Sub, Level::Prime).0
}

/// Weight of c_{a,b,c,d} from Φ and Λ:
/// δ(b) + q^{3m-2}(q-1) + ((q-1)Φ - Λ)/q² when (b, c, d) ≠ 0,
/// q^{3m-1} + Φ/q when only a ≠ 0, and 0 for the zero message.
/// The punctured code drops δ(b).
pub fn scalar_weight(
    ctx: &FieldCtx,
    phi: &CycInt,
    lambda: &CycInt,
    [a, b, c, d]: [Elem; 4],
    punctured: bool,
) -> Result<u64> {
    let (q, m) = (ctx.q() as i128, ctx.m());
    let phi = integral(phi, "Φ")?;
    let w = if b.is_zero() && c.is_zero() && d.is_zero() {
        if a.is_zero() {
            0
        } else {
            q.pow(3 * m - 1) + exact_div(phi, q, "Φ/q")?
        }
    } else {
        let lambda = integral(lambda, "Λ")?;
        let dl = if punctured { 0 } else { delta(ctx, b) as i128 };
        dl + q.pow(3 * m - 2) * (q - 1) + exact_div((q - 1) * phi - lambda, q * q, "((q-1)Φ-Λ)/q²")?
    };
    u64::try_from(w).map_err(|_| Error::NonIntegral(format!("negative weight {w}")))
}

/// Φ = Σ_{s ∈ GF(q)*} S_f(s) S_g(s) S_h(s).
pub fn phi_scalar(f: &FnSpec, g: &FnSpec, h: &FnSpec) -> Result<CycInt> {
    let ctx = same_field(&[f, g, h])?;
    let (sf, sg, sh) = (super::output_sums(f)?, super::output_sums(g)?, super::output_sums(h)?);
    let mut acc = CycInt::zero(ctx.p());
    for (s, vf) in &sf {
        acc += *vf * sg[s] * sh[s];
    }
    Ok(acc)
}

/// Λ_{a,b,c,d} by the raw double sum.
pub fn lambda_scalar(f: &FnSpec, g: &FnSpec, h: &FnSpec, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<CycInt> {
    let t = ScalarTriple::new(f, g, h)?;
    Ok(ScalarSums::new(&t)?.lambda(a, b, c, d))
}

fn in_sub_star(ctx: &FieldCtx, x: Elem) -> bool {
    !x.is_zero() && ctx.in_level(x, Level::Sub)
}

/// Σ_z χ(s(u - b N(z)) + Tr(s d z)) for s ∈ GF(q), the residual norm sum.
fn norm_residual(ctx: &FieldCtx, s: Elem, u: Elem, b: Elem, d: Elem) -> CycInt {
    let exps = ctx.elements().map(|z| {
        let inner = ctx.sub(u, ctx.mul(b, ctx.norm(z, Level::Sub)));
        sub_trace(ctx, ctx.mul(s, inner)) + ctx.abs_trace(ctx.mul(ctx.mul(s, d), z))
    });
    sum_of_exponents(ctx.p(), exps)
}

/// Λ for f = Tr, g = Tr(y²), h = Norm and q even: zero unless b, c ∈ GF(q)*,
/// otherwise q^{2m} Σ_z χ(s(a + Tr(dz) + b N(z))) with s = b/c².
pub fn lambda_norm_even(ctx: &FieldCtx, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<CycInt> {
    if ctx.p() != 2 {
        return Err(Error::Hypothesis("this closed form needs even q".into()));
    }
    if !in_sub_star(ctx, b) || !in_sub_star(ctx, c) {
        return Ok(CycInt::zero(2));
    }
    let s = ctx.div(b, ctx.mul(c, c)).expect("c ≠ 0");
    let qm = ctx.size() as i64;
    Ok(norm_residual(ctx, s, a, b, d).scale(qm * qm))
}

/// Λ for f = Tr, g = Tr(y²), h = Norm, q odd and m even: zero unless b ∈ GF(q)*,
/// otherwise G q^m Σ_{s ∈ GF(q)*} Σ_z χ(s(a + Tr(c²/(4b)) + Tr(dz) - b N(z)))
/// with G the quadratic Gauss sum of GF(q^m).
pub fn lambda_norm_odd(ctx: &FieldCtx, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<CycInt> {
    if ctx.p() == 2 || !ctx.m().is_multiple_of(2) {
        return Err(Error::Hypothesis("this closed form needs odd q and even m".into()));
    }
    let p = ctx.p();
    if !in_sub_star(ctx, b) {
        return Ok(CycInt::zero(p));
    }
    let four_b = ctx.mul_int(b, 4 % p);
    let u = ctx.add(a, ctx.trace(ctx.div(ctx.mul(c, c), four_b).expect("b ≠ 0"), Level::Sub));
    let mut acc = CycInt::zero(p);
    for &s in ctx.sub_elements().iter().filter(|s| !s.is_zero()) {
        acc += norm_residual(ctx, s, u, b, d);
    }
    Ok((acc * gauss_sum_closed(ctx)?).scale(ctx.size() as i64))
}

/// Λ for q = 2, f = Tr, g = Tr(y²) and any h: (-1)^a 2^{2m} W_h(d) when b = c = 1, else 0.
pub fn lambda_binary_walsh(h: &FnSpec, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<CycInt> {
    let ctx = super::field_of(h)?;
    if ctx.q() != 2 {
        return Err(Error::Hypothesis("this closed form needs q = 2".into()));
    }
    if b != Elem::ONE || c != Elem::ONE {
        return Ok(CycInt::zero(2));
    }
    let w = crate::walsh::walsh_scalar(h, d)?;
    let sign = if a.is_zero() { 1 } else { -1 };
    Ok(w.scale(sign * (ctx.size() as i64).pow(2)))
}

/// The tabulated distribution for q = 2, f = Tr, g = Tr(y²) and h normalized
/// s-plateaued (s = 0 is bent), with m + s even.
pub fn scalar_theorem_table(m: u32, s: u32, punctured: bool) -> Result<PredictedDistribution> {
    if m == 0 || s > m || !(m + s).is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("no table for m={m}, s={s}: m + s must be even")));
    }
    let (m, s) = (m as u64, s as u64);
    let w0 = 1u64 << (3 * m - 2);
    let e = 1u64 << ((5 * m + s - 4) / 2);
    let side = two(m - s);
    let mut rows = vec![row(0, 1u32.into(), "zero")];
    let source;
    if punctured {
        source = "scalar-triple-punctured-table";
        rows.push(row(w0 - e, side.clone(), "b=c=1, W_h(d)>0 against (-1)^a"));
        rows.push(row(w0, two(3 * m + 1) - two(m - s + 1) - 2u32, "generic"));
        rows.push(row(w0 + e, side, "b=c=1, W_h(d)<0 against (-1)^a"));
    } else if m % 2 == 0 {
        source = "scalar-triple-table-even-m";
        rows.push(row(w0 - e, side.clone(), "b=c=1, W_h(d)>0 against (-1)^a"));
        rows.push(row(w0, two(3 * m) - two(m - s + 1) - 2u32, "Tr(b)=0"));
        rows.push(row(w0 + 1, two(3 * m), "Tr(b)≠0"));
        rows.push(row(w0 + e, side, "b=c=1, W_h(d)<0 against (-1)^a"));
    } else {
        source = "scalar-triple-table-odd-m";
        rows.push(row(1 + w0 - e, side.clone(), "b=c=1, W_h(d)>0 against (-1)^a"));
        rows.push(row(w0, two(3 * m) - 2u32, "Tr(b)=0"));
        rows.push(row(w0 + 1, two(3 * m) - two(m - s + 1), "Tr(b)≠0, not b=c=1"));
        rows.push(row(1 + w0 + e, side, "b=c=1, W_h(d)<0 against (-1)^a"));
    }
    rows.push(row(2 * w0, 1u32.into(), "a=1, b=c=d=0"));
    let n = (2 * w0) + u64::from(!punctured);
    Ok(PredictedDistribution { source: source.into(), n, k: 3 * m + 1, q: 2, rows })
}

/// The tabulated distribution when the triple meets its hypotheses
/// (q = 2, f = Tr, g = Tr(y²), h normalized with a uniform amplitude s and m + s even).
/// Other triples fall back to the character-sum formula evaluated per message.
pub fn predict_scalar(t: &ScalarTriple, punctured: bool) -> Result<PredictedDistribution> {
    let ctx = &t.ctx;
    let standard = ctx.q() == 2
        && t.f.table() == fn_trace(ctx).table()
        && t.g.table() == fn_trace_square(ctx).table();
    if standard {
        let spec = spectrum_summary(&t.h)?;
        if let Some(s) = spec.s() {
            if (ctx.m() + s).is_multiple_of(2) {
                if !t.h.is_normalized() {
                    return Err(Error::Hypothesis(format!("{} is not normalized", t.h.name())));
                }
                return scalar_theorem_table(ctx.m(), s, punctured);
            }
        }
    }
    let wd = t.formula_distribution(punctured)?;
    let rows = wd.pairs().into_iter().map(|(w, c)| row(w as u64, c, "character-sum formula")).collect();
    Ok(PredictedDistribution {
        source: "scalar-triple-formula".into(),
        n: wd.n() as u64,
        k: wd.k() as u64,
        q: wd.q(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{fn_norm, fn_scalar_zero, fn_trace_power};
    use crate::linearcode::weight_distribution;

    fn norm_triple(p: u32, r: u32, m: u32) -> ScalarTriple {
        let ctx = FieldCtx::new(p, r, m).unwrap();
        ScalarTriple::new(&fn_trace(&ctx), &fn_trace_square(&ctx), &fn_norm(&ctx)).unwrap()
    }

    #[test]
    fn norm_triple_over_gf4() {
        let t = norm_triple(2, 1, 2);
        assert_eq!(t.defining_set().size(), 32);
        let sums = t.sums().unwrap();
        assert!(sums.phi().is_zero());
        assert_eq!(sums.defining_set_size().unwrap(), 32);
        let code = t.build().unwrap();
        assert_eq!((code.n(), code.k()), (33, 4));
        let brute = t.brute_distribution(false);
        let expect: Vec<(usize, BigUint)> = [(0, 1u32), (8, 4), (16, 54), (17, 64), (24, 4), (32, 1)]
            .into_iter()
            .map(|(w, c)| (w, c.into()))
            .collect();
        assert_eq!(brute.pairs(), expect);
        assert!(predict_scalar(&t, false).unwrap().matches(&brute));
        assert!(t.formula_mismatches().unwrap().is_empty());
    }

    #[test]
    fn lambda_examples() {
        let t = norm_triple(2, 1, 2);
        let ctx = t.ctx().clone();
        let sums = t.sums().unwrap();
        let one = Elem::ONE;
        assert_eq!(sums.lambda(Elem::ZERO, one, one, Elem::ZERO).as_integer(), Some(-32));
        assert_eq!(sums.lambda(one, one, one, Elem::ZERO).as_integer(), Some(32));
        for b in ctx.elements().filter(|&b| b != one) {
            assert!(sums.lambda(Elem::ZERO, b, one, one).is_zero());
        }
    }

    #[test]
    fn trace_route_matches_subfield_code() {
        let t = norm_triple(2, 1, 2);
        let sub = t.build().unwrap().subfield_code().unwrap();
        assert_eq!(sub.k(), 7);
        assert_eq!(weight_distribution(&sub).unwrap(), t.brute_distribution(false));
        let ctx = t.ctx();
        for (a, b, c, d) in [(1u32, 2u32, 3u32, 1u32), (0, 1, 0, 2)] {
            assert!(sub.contains(&t.codeword(Elem(a), Elem(b), Elem(c), Elem(d))));
        }
        assert_eq!(ctx.q(), 2);
    }

    #[test]
    fn all_zero_functions_cover_everything() {
        let ctx = FieldCtx::new(3, 1, 1).unwrap();
        let z = fn_scalar_zero(&ctx);
        let t = ScalarTriple::new(&z, &z, &z).unwrap();
        assert_eq!(t.length(), 28);
        let sums = t.sums().unwrap();
        assert_eq!(sums.phi().as_integer(), Some(2 * 27));
    }

    #[test]
    fn closed_forms_match_raw_sums() {
        for (p, r, m) in [(2, 1, 2), (2, 2, 2), (2, 1, 3), (3, 1, 2)] {
            let t = norm_triple(p, r, m);
            let ctx = t.ctx().clone();
            let sums = t.sums().unwrap();
            let subs = ctx.sub_elements().to_vec();
            for &a in &subs {
                for b in ctx.elements() {
                    for c in ctx.elements() {
                        for d in ctx.elements().step_by(3) {
                            let raw = sums.lambda(a, b, c, d);
                            let closed = if p == 2 {
                                lambda_norm_even(&ctx, a, b, c, d).unwrap()
                            } else {
                                lambda_norm_odd(&ctx, a, b, c, d).unwrap()
                            };
                            assert_eq!(raw, closed, "p={p} r={r} m={m} {a:?} {b:?} {c:?} {d:?}");
                            if ctx.q() == 2 {
                                assert_eq!(raw, lambda_binary_walsh(&fn_norm(&ctx), a, b, c, d).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn plateaued_cube_m3() {
        let ctx = FieldCtx::new(2, 1, 3).unwrap();
        let h = fn_trace_power(&ctx, 3);
        assert_eq!(spectrum_summary(&h).unwrap().s(), Some(1));
        let t = ScalarTriple::new(&fn_trace(&ctx), &fn_trace_square(&ctx), &h).unwrap();
        assert_eq!(t.length(), 257);
        let table = predict_scalar(&t, false).unwrap();
        assert_eq!(table.total(), BigUint::from(1024u32));
        assert!(table.matches(&t.brute_distribution(false)));
        let punct = predict_scalar(&t, true).unwrap();
        assert!(punct.matches(&t.brute_distribution(true)));
        assert!(t.formula_mismatches().unwrap().is_empty());
    }

    #[test]
    fn table_refuses_odd_parity() {
        assert!(matches!(scalar_theorem_table(3, 0, false), Err(Error::Hypothesis(_))));
    }
}
