//! Exact Walsh transforms and amplitude classification.
//!
//! Convention: W_F(v, λ) = Σ_x ζ_p^{⟨v, F(x)⟩ − ⟨λ, x⟩}, with the output mask
//! v first and the input mask λ second. For a scalar function there is a
//! single component, the one with ⟨1, y⟩ = Tr_{q/p}(y).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::exact_log;
use crate::error::{Error, Result};
use crate::functions::{FnKind, FnSpec};
use crate::galois::{CycInt, Elem};

/// In-place Hadamard transform of a length-2^n sequence.
pub fn fast_wht(values: &mut [i64]) -> Result<()> {
    let n = values.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::BadLength(n));
    }
    let mut h = 1;
    while h < n {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    Ok(())
}

/// Hadamard transform of a ±1 sequence.
pub fn fast_wht_signs(signs: &[i64]) -> Result<Vec<i64>> {
    let mut v = signs.to_vec();
    fast_wht(&mut v)?;
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "s", rename_all = "snake_case")]
pub enum AmplitudeClass {
    /// Every |W|² equals the domain size.
    Bent,
    /// Every component is s-plateaued with the same s > 0.
    Plateaued(u32),
    /// Vectorial, p = 2, equal odd input and output dimension, 1-plateaued.
    AlmostBent,
    /// Every component is plateaued but the amplitudes differ.
    ComponentPlateaued,
    Unclassified,
}

#[derive(Clone, Debug)]
enum Values {
    None,
    Binary(Vec<i32>),
    General(Vec<CycInt>),
}

/// Walsh values of all components with their classification.
#[derive(Clone, Debug)]
pub struct WalshSpectrum {
    pub p: u32,
    pub domain_size: u64,
    /// q for scalar functions, p for vectorial ones: |W|² = size · base^s.
    pub base: u64,
    /// Output masks in increasing index order (the single mask 1 for scalars).
    pub components: Vec<Elem>,
    pub class: AmplitudeClass,
    /// Per-component amplitude s, `None` when the component is not plateaued.
    pub component_s: Vec<Option<u32>>,
    pub support_count: u64,
    /// |W|² → number of (v, λ) pairs, for rational |W|².
    pub histogram: BTreeMap<i64, u64>,
    pub irrational_count: u64,
    values: Values,
}

impl WalshSpectrum {
    pub fn component_index(&self, v: Elem) -> Option<usize> {
        self.components.binary_search(&v).ok()
    }

    /// W(components[comp], λ). Panics if the spectrum was computed as a summary.
    pub fn value(&self, comp: usize, lambda: Elem) -> CycInt {
        let idx = comp * self.domain_size as usize + lambda.0 as usize;
        match &self.values {
            Values::Binary(v) => CycInt::from_int(2, v[idx] as i64),
            Values::General(v) => v[idx],
            Values::None => panic!("spectrum values were not retained"),
        }
    }

    /// The common amplitude s when there is one.
    pub fn s(&self) -> Option<u32> {
        match self.class {
            AmplitudeClass::Bent => Some(0),
            AmplitudeClass::AlmostBent => Some(1),
            AmplitudeClass::Plateaued(s) => Some(s),
            _ => None,
        }
    }

    /// Number of λ with W(v, λ) = 0, per component.
    pub fn zero_counts(&self) -> Vec<u64> {
        (0..self.components.len())
            .map(|c| {
                (0..self.domain_size as u32)
                    .filter(|&l| self.value(c, Elem(l)).is_zero())
                    .count() as u64
            })
            .collect()
    }
}

/// ⟨v, F(x)⟩ for every x.
fn output_exponents(f: &FnSpec, v: Elem) -> Vec<u32> {
    let cod = f.codomain();
    f.table().iter().map(|&y| cod.pair(v, y)).collect()
}

fn component_binary(f: &FnSpec, v: Elem, dual: &[u32]) -> Result<Vec<i64>> {
    let signs: Vec<i64> = output_exponents(f, v).iter().map(|&e| 1 - 2 * e as i64).collect();
    let s = fast_wht_signs(&signs)?;
    Ok(dual.iter().map(|&u| s[u as usize]).collect())
}

fn component_general(f: &FnSpec, v: Elem) -> Vec<CycInt> {
    let p = f.p();
    let dom = f.domain();
    let e = output_exponents(f, v);
    (0..dom.size())
        .map(|l| {
            let mut counts = vec![0i64; p as usize];
            for (x, &ex) in e.iter().enumerate() {
                let k = (ex + p - dom.pair(Elem(l), Elem(x as u32))) % p;
                counts[k as usize] += 1;
            }
            CycInt::from_exponent_counts(p, &counts)
        })
        .collect()
}

/// All values W(v, λ) for one output mask, indexed by λ.
pub fn component_values(f: &FnSpec, v: Elem) -> Result<Vec<CycInt>> {
    let p = f.p();
    CycInt::check_p(p)?;
    if p == 2 {
        let dual = f.domain().dual_table();
        Ok(component_binary(f, v, &dual)?.into_iter().map(|w| CycInt::from_int(2, w)).collect())
    } else {
        Ok(component_general(f, v))
    }
}

fn single_value(f: &FnSpec, v: Elem, lambda: Elem) -> Result<CycInt> {
    let p = f.p();
    CycInt::check_p(p)?;
    let dom = f.domain();
    let mut counts = vec![0i64; p as usize];
    for (x, &y) in f.table().iter().enumerate() {
        let k = (f.codomain().pair(v, y) + p - dom.pair(lambda, Elem(x as u32))) % p;
        counts[k as usize] += 1;
    }
    Ok(CycInt::from_exponent_counts(p, &counts))
}

/// W_f(λ) = Σ_x ζ^{Tr_{q/p}(f(x)) − Tr_{q^n/p}(λx)} for a scalar f.
pub fn walsh_scalar(f: &FnSpec, lambda: Elem) -> Result<CycInt> {
    if f.kind() != FnKind::Scalar {
        return Err(Error::InvalidParams("walsh_scalar needs a scalar function".into()));
    }
    single_value(f, Elem::ONE, lambda)
}

/// W_F(v, λ) = Σ_x ζ^{⟨v, F(x)⟩ − ⟨λ, x⟩}.
pub fn walsh_vectorial(f: &FnSpec, v: Elem, lambda: Elem) -> Result<CycInt> {
    if f.kind() != FnKind::Vectorial {
        return Err(Error::InvalidParams("walsh_vectorial needs a vectorial function".into()));
    }
    single_value(f, v, lambda)
}

/// Full spectrum with all values retained.
pub fn spectrum_full(f: &FnSpec) -> Result<WalshSpectrum> {
    analyze(f, true)
}

/// Classification and histogram without retaining the values.
pub fn spectrum_summary(f: &FnSpec) -> Result<WalshSpectrum> {
    analyze(f, false)
}

struct ComponentStats {
    s: Option<u32>,
    support: u64,
    histogram: BTreeMap<i64, u64>,
    irrational: u64,
}

fn stats_of(sq: impl Iterator<Item = Option<i64>>, size: u64, base: u64) -> ComponentStats {
    let mut histogram = BTreeMap::new();
    let mut irrational = 0u64;
    let mut support = 0u64;
    for a in sq {
        match a {
            Some(a) => {
                *histogram.entry(a).or_insert(0) += 1;
                if a != 0 {
                    support += 1;
                }
            }
            None => {
                irrational += 1;
                support += 1;
            }
        }
    }
    let nonzero: Vec<i64> = histogram.keys().copied().filter(|&a| a != 0).collect();
    let s = if irrational == 0 && nonzero.len() == 1 && (nonzero[0] as u64).is_multiple_of(size) {
        exact_log(nonzero[0] as u64 / size, base)
    } else {
        None
    };
    ComponentStats { s, support, histogram, irrational }
}

fn analyze(f: &FnSpec, keep: bool) -> Result<WalshSpectrum> {
    let p = f.p();
    CycInt::check_p(p)?;
    let size = f.domain().size() as u64;
    let (components, base) = match f.kind() {
        FnKind::Scalar => (vec![Elem::ONE], f.codomain().size() as u64),
        FnKind::Vectorial => {
            let comps: Vec<Elem> = f.codomain().elements().into_iter().filter(|v| !v.is_zero()).collect();
            (comps, p as u64)
        }
    };

    let (stats, values): (Vec<ComponentStats>, Values) = if p == 2 {
        let dual = f.domain().dual_table();
        let per: Vec<(ComponentStats, Vec<i32>)> = components
            .par_iter()
            .map(|&v| {
                let w = component_binary(f, v, &dual)?;
                let st = stats_of(w.iter().map(|&x| Some(x * x)), size, base);
                let kept = if keep { w.iter().map(|&x| x as i32).collect() } else { Vec::new() };
                Ok((st, kept))
            })
            .collect::<Result<_>>()?;
        let (st, vals): (Vec<_>, Vec<_>) = per.into_iter().unzip();
        let values = if keep { Values::Binary(vals.concat()) } else { Values::None };
        (st, values)
    } else {
        let per: Vec<(ComponentStats, Vec<CycInt>)> = components
            .par_iter()
            .map(|&v| {
                let w = component_general(f, v);
                let st = stats_of(w.iter().map(|x| x.norm2().as_integer()), size, base);
                (st, if keep { w } else { Vec::new() })
            })
            .collect();
        let (st, vals): (Vec<_>, Vec<_>) = per.into_iter().unzip();
        let values = if keep { Values::General(vals.concat()) } else { Values::None };
        (st, values)
    };

    let component_s: Vec<Option<u32>> = stats.iter().map(|c| c.s).collect();
    let mut histogram = BTreeMap::new();
    let mut irrational_count = 0;
    let mut support_count = 0;
    for st in &stats {
        for (&k, &c) in &st.histogram {
            *histogram.entry(k).or_insert(0) += c;
        }
        irrational_count += st.irrational;
        support_count += st.support;
    }

    let class = if component_s.iter().all(|s| s.is_some()) {
        let first = component_s[0].expect("checked");
        if component_s.iter().all(|&s| s == Some(first)) {
            let (dn, dm) = (f.domain().dim(), f.codomain().dim());
            if first == 0 {
                AmplitudeClass::Bent
            } else if first == 1 && f.kind() == FnKind::Vectorial && p == 2 && dn == dm && dn % 2 == 1 {
                AmplitudeClass::AlmostBent
            } else {
                AmplitudeClass::Plateaued(first)
            }
        } else {
            AmplitudeClass::ComponentPlateaued
        }
    } else {
        AmplitudeClass::Unclassified
    };

    Ok(WalshSpectrum {
        p,
        domain_size: size,
        base,
        components,
        class,
        component_s,
        support_count,
        histogram,
        irrational_count,
        values,
    })
}
