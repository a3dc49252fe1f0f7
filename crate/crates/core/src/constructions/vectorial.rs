//! Codes from two vectorial functions f, g: GF(q^m) → GF(q^m).
//!
//! D = {(x, y) : f(x) + g(y) = 0}. The subfield code is
//! {c_{a,b,c} = (Tr(b), a + Tr(bx + cy))_{t ∈ D}} with a ∈ GF(q), b, c ∈ GF(q^m),
//! and the punctured code drops the first coordinate.
//!
//! * Φ̄ = Σ_{s ∈ GF(q^m)*} S_f(s) S_g(s), S_f(s) = Σ_x ζ^{Tr(s f(x))};
//! * Λ̄_{a,b,c} = Σ_{s ∈ GF(q)*} χ(sa) Σ_{ω ∈ GF(q^m)*} B_f(ω, sb) B_g(ω, sc),
//!   B_f(ω, β) = Σ_x ζ^{Tr(ω f(x) + βx)}.

use std::sync::Arc;

use num_bigint::BigUint;

use super::scalar::trace_histograms;
use super::{delta, exact_div, integral, output_sums, row, same_field, two, AmplitudeTable, DefiningSet};
use super::PredictedDistribution;
use crate::error::{Error, Result};
use crate::functions::{fn_compose, fn_invert, FnKind, FnSpec};
use crate::galois::{CycInt, Elem, FieldCtx, Level};
use crate::linearcode::{LinearCode, WeightDistribution};
use crate::walsh::{spectrum_summary, walsh_vectorial};

#[derive(Clone, Debug)]
pub struct VectorialPair {
    ctx: Arc<FieldCtx>,
    f: FnSpec,
    g: FnSpec,
    set: DefiningSet<2>,
}

impl VectorialPair {
    pub fn new(f: &FnSpec, g: &FnSpec) -> Result<VectorialPair> {
        for fun in [f, g] {
            if fun.kind() != FnKind::Vectorial || fun.codomain() != fun.domain() {
                return Err(Error::Incompatible(format!("{} must map GF(q^m) to itself", fun.name())));
            }
        }
        let ctx = same_field(&[f, g])?;
        let mut by_value: Vec<Vec<Elem>> = vec![Vec::new(); ctx.size() as usize];
        for y in ctx.elements() {
            by_value[ctx.neg(g.eval(y)).0 as usize].push(y);
        }
        let tuples = ctx
            .elements()
            .flat_map(|x| by_value[f.eval(x).0 as usize].iter().map(move |&y| [x, y]))
            .collect();
        Ok(VectorialPair { ctx, f: f.clone(), g: g.clone(), set: DefiningSet { tuples } })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }
    pub fn functions(&self) -> [&FnSpec; 2] {
        [&self.f, &self.g]
    }
    pub fn defining_set(&self) -> &DefiningSet<2> {
        &self.set
    }
    pub fn length(&self) -> usize {
        self.set.size() + 1
    }

    /// The code over GF(q^m) with rows (0 | 1…1), (1 | x_t), (0 | y_t).
    pub fn build(&self) -> Result<LinearCode> {
        let n = self.length();
        let mut rows = vec![vec![Elem::ZERO], vec![Elem::ONE], vec![Elem::ZERO]];
        for &[x, y] in self.set.tuples() {
            rows[0].push(Elem::ONE);
            rows[1].push(x);
            rows[2].push(y);
        }
        LinearCode::from_rows(&self.ctx, Level::Top, n, rows)
    }

    /// The subfield codeword c_{a,b,c}, first coordinate included.
    pub fn codeword(&self, a: Elem, b: Elem, c: Elem) -> Vec<Elem> {
        let ctx = &*self.ctx;
        let mut word = vec![ctx.trace(b, Level::Sub)];
        for &[x, y] in self.set.tuples() {
            let v = ctx.add(ctx.mul(b, x), ctx.mul(c, y));
            word.push(ctx.add(a, ctx.trace(v, Level::Sub)));
        }
        word
    }

    /// The punctured code's sub-code {c_{0,b,c}} over GF(q).
    pub fn subcode_without_constant(&self) -> Result<LinearCode> {
        let ctx = &*self.ctx;
        let mut rows = Vec::new();
        for beta in ctx.prime_basis(Level::Top) {
            for j in 0..2 {
                rows.push(self.set.tuples().iter().map(|t| ctx.trace(ctx.mul(beta, t[j]), Level::Sub)).collect());
            }
        }
        LinearCode::from_rows(&self.ctx, Level::Sub, self.set.size(), rows)
    }

    /// Distribution over all q^{2m+1} messages by direct enumeration.
    pub fn brute_distribution(&self, punctured: bool) -> WeightDistribution {
        self.brute(punctured, false)
    }

    /// Distribution over the q^{2m} messages with a = 0.
    pub fn brute_distribution_without_constant(&self, punctured: bool) -> WeightDistribution {
        self.brute(punctured, true)
    }

    fn brute(&self, punctured: bool, only_zero_a: bool) -> WeightDistribution {
        let ctx = &*self.ctx;
        let n = self.length() - usize::from(punctured);
        let columns: [Vec<Elem>; 2] = std::array::from_fn(|j| self.set.tuples().iter().map(|t| t[j]).collect());
        let hist = trace_histograms(ctx, &columns, |b, counts, hist| {
            let shift = if punctured { 0 } else { delta(ctx, b) as usize };
            for &a in ctx.sub_elements().iter().filter(|a| !only_zero_a || a.is_zero()) {
                let zeros = counts[ctx.neg(a).0 as usize] as usize;
                hist[self.set.size() - zeros + shift] += 1;
            }
        });
        let k = 2 * ctx.m() as usize + usize::from(!only_zero_a);
        WeightDistribution::new(n, k, ctx.q(), hist.into_iter().map(BigUint::from).collect())
    }

    pub fn sums(&self) -> Result<VectorialSums> {
        VectorialSums::new(self)
    }

    /// Messages whose formula weight differs from the direct Hamming weight.
    pub fn formula_mismatches(&self) -> Result<Vec<[Elem; 3]>> {
        let sums = self.sums()?;
        let ctx = &*self.ctx;
        let mut bad = Vec::new();
        for b in ctx.elements() {
            for c in ctx.elements() {
                for &a in ctx.sub_elements() {
                    let direct = self.codeword(a, b, c).iter().filter(|x| !x.is_zero()).count() as u64;
                    if sums.weight(a, b, c, false)? != direct {
                        bad.push([a, b, c]);
                    }
                }
            }
        }
        Ok(bad)
    }
}

/// Precomputed Φ̄ and the amplitude tables behind Λ̄.
pub struct VectorialSums {
    ctx: Arc<FieldCtx>,
    phi: CycInt,
    tables: [AmplitudeTable; 2],
}

impl VectorialSums {
    pub fn new(t: &VectorialPair) -> Result<VectorialSums> {
        Ok(VectorialSums {
            ctx: t.ctx.clone(),
            phi: phi_bar(&t.f, &t.g)?,
            tables: [AmplitudeTable::new(&t.f)?, AmplitudeTable::new(&t.g)?],
        })
    }

    pub fn phi(&self) -> CycInt {
        self.phi
    }

    pub fn lambda(&self, a: Elem, b: Elem, c: Elem) -> CycInt {
        let ctx = &*self.ctx;
        let p = ctx.p();
        let mut acc = CycInt::zero(p);
        for &s in ctx.sub_elements().iter().filter(|s| !s.is_zero()) {
            let (sb, sc) = (ctx.mul(s, b), ctx.mul(s, c));
            let mut inner = CycInt::zero(p);
            for w in 0..self.tables[0].omegas.len() {
                inner += self.tables[0].get(w, sb) * self.tables[1].get(w, sc);
            }
            acc += inner.mul_zeta(ctx.trace_between(ctx.mul(s, a), Level::Sub, Level::Prime).0 as u64);
        }
        acc
    }

    /// #D = q^m + Φ̄/q^m.
    pub fn defining_set_size(&self) -> Result<u64> {
        let qm = self.ctx.size() as i128;
        Ok((qm + exact_div(integral(&self.phi, "Φ̄")?, qm, "Φ̄/q^m")?) as u64)
    }

    /// δ(b) + q^{m-1}(q-1) + ((q-1)Φ̄ - Λ̄)/q^{m+1} when (b, c) ≠ 0,
    /// q^m + Φ̄/q^m when only a ≠ 0, and 0 for the zero message.
    pub fn weight(&self, a: Elem, b: Elem, c: Elem, punctured: bool) -> Result<u64> {
        let ctx = &*self.ctx;
        let (q, m) = (ctx.q() as i128, ctx.m());
        let phi = integral(&self.phi, "Φ̄")?;
        let w = if b.is_zero() && c.is_zero() {
            if a.is_zero() {
                0
            } else {
                q.pow(m) + exact_div(phi, q.pow(m), "Φ̄/q^m")?
            }
        } else {
            let lambda = integral(&self.lambda(a, b, c), "Λ̄")?;
            let dl = if punctured { 0 } else { delta(ctx, b) as i128 };
            dl + q.pow(m - 1) * (q - 1) + exact_div((q - 1) * phi - lambda, q.pow(m + 1), "((q-1)Φ̄-Λ̄)/q^{m+1}")?
        };
        u64::try_from(w).map_err(|_| Error::NonIntegral(format!("negative weight {w}")))
    }
}

/// Φ̄ = Σ_{s ≠ 0} S_f(s) S_g(s).
pub fn phi_bar(f: &FnSpec, g: &FnSpec) -> Result<CycInt> {
    let ctx = same_field(&[f, g])?;
    let (sf, sg) = (output_sums(f)?, output_sums(g)?);
    let mut acc = CycInt::zero(ctx.p());
    for (s, v) in &sf {
        acc += *v * sg[s];
    }
    Ok(acc)
}

/// Λ̄_{a,b,c} by the raw double sum.
pub fn lambda_bar(f: &FnSpec, g: &FnSpec, a: Elem, b: Elem, c: Elem) -> Result<CycInt> {
    Ok(VectorialPair::new(f, g)?.sums()?.lambda(a, b, c))
}

/// Λ̄ through the Walsh spectrum of h = f⁻¹∘g for q = 2 and f a permutation:
/// (-1)^a (2^m W_h(b, c) - 2^{2m}[b = c = 0]), with b the output mask and c the
/// input mask.
pub fn lambda_bar_walsh(f: &FnSpec, g: &FnSpec, a: Elem, b: Elem, c: Elem) -> Result<CycInt> {
    let ctx = same_field(&[f, g])?;
    if ctx.q() != 2 {
        return Err(Error::Hypothesis("the Walsh form of Λ̄ needs q = 2".into()));
    }
    let h = fn_compose(&fn_invert(f)?, g)?;
    let size = ctx.size() as i64;
    let mut v = walsh_vectorial(&h, b, c)?.scale(size);
    if b.is_zero() && c.is_zero() {
        v -= CycInt::from_int(2, size * size);
    }
    Ok(if a.is_zero() { v } else { -v })
}

/// The punctured code's distribution for q = 2, f a permutation and
/// h = f⁻¹∘g normalized with uniform amplitude s, m + s even.
pub fn vectorial_theorem_table(m: u32, s: u32) -> Result<PredictedDistribution> {
    if m == 0 || s > m || !(m + s).is_multiple_of(2) {
        return Err(Error::Hypothesis(format!("no table for m={m}, s={s}: m + s must be even")));
    }
    let (m, s) = (m as u64, s as u64);
    let half = 1u64 << (m - 1);
    let e = 1u64 << ((m + s) / 2 - 1);
    let side = two(2 * m - s) - two(m - s);
    let middle = (two(m + 1) - 2u32) * (two(m) - two(m - s) + 1u32);
    let rows = vec![
        row(0, 1u32.into(), "zero"),
        row(half - e, side.clone(), "(-1)^a W_h(b,c) > 0"),
        row(half, middle, "W_h(b,c) = 0"),
        row(half + e, side, "(-1)^a W_h(b,c) < 0"),
        row(1 << m, 1u32.into(), "a=1, b=c=0"),
    ];
    Ok(PredictedDistribution { source: "vectorial-pair-table".into(), n: 1 << m, k: 2 * m + 1, q: 2, rows })
}

/// Checks the hypotheses of [`vectorial_theorem_table`] and returns the table.
pub fn predict_vectorial(t: &VectorialPair) -> Result<PredictedDistribution> {
    let ctx = &t.ctx;
    if ctx.q() != 2 {
        return Err(Error::Hypothesis("the table covers q = 2 only".into()));
    }
    if !t.f.is_permutation() {
        return Err(Error::Hypothesis(format!("{} is not a permutation", t.f.name())));
    }
    let h = fn_compose(&fn_invert(&t.f)?, &t.g)?;
    if !h.is_normalized() {
        return Err(Error::Hypothesis("f⁻¹∘g is not normalized".into()));
    }
    let s = spectrum_summary(&h)?
        .s()
        .ok_or_else(|| Error::Hypothesis("f⁻¹∘g is not plateaued with a single amplitude".into()))?;
    vectorial_theorem_table(ctx.m(), s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{fn_identity, fn_power, fn_zero};

    fn cube_pair(m: u32) -> VectorialPair {
        let ctx = FieldCtx::new(2, 1, m).unwrap();
        VectorialPair::new(&fn_identity(&ctx), &fn_power(&ctx, 3)).unwrap()
    }

    #[test]
    fn identity_pair_is_the_diagonal() {
        let ctx = FieldCtx::new(2, 1, 3).unwrap();
        let id = fn_identity(&ctx);
        let t = VectorialPair::new(&id, &id).unwrap();
        assert!(t.defining_set().tuples().iter().all(|&[x, y]| x == y));
        assert_eq!(t.length(), 9);
    }

    #[test]
    fn zero_pair_sums() {
        let ctx = FieldCtx::new(3, 1, 1).unwrap();
        let z = fn_zero(&ctx);
        assert_eq!(phi_bar(&z, &z).unwrap().as_integer(), Some(2 * 9));
    }

    #[test]
    fn cube_m3_distribution() {
        let t = cube_pair(3);
        let sums = t.sums().unwrap();
        assert!(sums.phi().is_zero());
        assert_eq!(sums.defining_set_size().unwrap(), 8);
        let brute = t.brute_distribution(true);
        let expect: Vec<(usize, BigUint)> =
            [(0, 1u32), (2, 28), (4, 70), (6, 28), (8, 1)].into_iter().map(|(w, c)| (w, c.into())).collect();
        assert_eq!(brute.pairs(), expect);
        assert!(predict_vectorial(&t).unwrap().matches(&brute));
        assert!(t.formula_mismatches().unwrap().is_empty());
    }

    #[test]
    fn walsh_form_of_lambda() {
        for m in [3, 4] {
            let t = cube_pair(m);
            let [f, g] = t.functions();
            let sums = t.sums().unwrap();
            let ctx = t.ctx().clone();
            for a in [Elem::ZERO, Elem::ONE] {
                for b in ctx.elements() {
                    for c in ctx.elements() {
                        assert_eq!(sums.lambda(a, b, c), lambda_bar_walsh(f, g, a, b, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn m5_table() {
        let table = vectorial_theorem_table(5, 1).unwrap();
        let got: Vec<(u64, u64)> =
            table.rows.iter().map(|r| (r.weight, r.multiplicity.clone().try_into().unwrap())).collect();
        assert_eq!(got, vec![(0, 1), (12, 496), (16, 1054), (20, 496), (32, 1)]);
        assert_eq!(table.total(), BigUint::from(2048u32));
        let t = cube_pair(5);
        assert!(table.matches(&t.brute_distribution(true)));
    }

    #[test]
    fn degenerate_amplitude_is_nonnegative() {
        let table = vectorial_theorem_table(4, 4).unwrap();
        assert_eq!(table.total(), BigUint::from(512u32));
    }
}
