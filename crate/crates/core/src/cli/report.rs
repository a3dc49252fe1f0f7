//! Deterministic reports. Nothing here reads the clock or depends on thread
//! scheduling, so equal inputs give byte-identical JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::{bound_report, griesmer_check, hamming_check, BoundReport, BoundVerdict};
use crate::constructions::{
    predict_scalar, predict_vectorial, PredictedDistribution, ScalarTriple, VectorialPair,
};
use crate::error::{Error, Result};
use crate::functions::FnSpec;
use crate::galois::FieldDescriptor;
use crate::linearcode::{macwilliams, weight_distribution_with_budget, LinearCode, WeightDistribution};
use crate::quantum::{css_build, css_t_check, phase_moment_check, CssDistance};
use crate::walsh::{spectrum_summary, AmplitudeClass};

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

const ELEMENT_ORDER: &str =
    "index = polynomial-basis coefficients read as base-p digits, constant term least significant";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub element_order: &'static str,
}

impl Provenance {
    pub fn current() -> Self {
        Provenance { tool: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION"), element_order: ELEMENT_ORDER }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub family: String,
    pub functions: Vec<String>,
    pub punctured: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub source: String,
    pub matches: bool,
    pub table: PredictedDistribution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    /// Codewords whose closed-form weight differs from the counted weight.
    pub formula_mismatches: usize,
    /// The closed-form distribution equals the enumerated one.
    pub formula_matches_enumeration: bool,
    /// Enumerating the trace representation and the generator matrix agree.
    pub trace_matches_matrix: bool,
}

impl OracleCheck {
    pub fn pass(&self) -> bool {
        self.formula_mismatches == 0 && self.formula_matches_enumeration && self.trace_matches_matrix
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualSummary {
    pub params: Params,
    pub hamming: Option<BoundVerdict>,
    pub griesmer: Option<BoundVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub schema_version: u32,
    pub construction: Construction,
    pub field: FieldDescriptor,
    /// The code over GF(q^m) before the subfield code is taken, when there is one.
    pub top_code: Option<Params>,
    pub params: Params,
    /// Dimension the construction would have if every message gave a distinct codeword.
    pub nominal_k: usize,
    pub degenerate: bool,
    pub observed: WeightDistribution,
    pub prediction: Option<Prediction>,
    pub prediction_refused: Option<String>,
    pub dual: Option<DualSummary>,
    pub bounds: BoundReport,
    pub oracle: Option<OracleCheck>,
    pub provenance: Provenance,
}

impl CodeReport {
    /// A prediction or an oracle comparison disagreed with enumeration.
    pub fn mismatch(&self) -> bool {
        self.prediction.as_ref().is_some_and(|p| !p.matches) || self.oracle.as_ref().is_some_and(|o| !o.pass())
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let c = &self.construction;
        let _ = writeln!(s, "## {} ({})\n", c.family, c.functions.join(", "));
        let fd = &self.field;
        let _ = writeln!(s, "- field: GF({}^{}) over GF({}^{}), modulus {:?}", fd.p, fd.r * fd.m, fd.p, fd.r, fd.modulus);
        if let Some(t) = &self.top_code {
            let _ = writeln!(s, "- code over the extension: [{}, {}]", t.n, t.k);
        }
        let _ = writeln!(s, "- parameters: {}", fmt_params(&self.params));
        if self.degenerate {
            let _ = writeln!(s, "- degenerate: rank {} below the nominal {}", self.params.k, self.nominal_k);
        }
        if let Some(d) = &self.dual {
            let _ = writeln!(s, "- dual: {}", fmt_params(&d.params));
        }
        match (&self.prediction, &self.prediction_refused) {
            (Some(p), _) => {
                let _ = writeln!(s, "- prediction `{}`: {}", p.source, if p.matches { "matches" } else { "MISMATCH" });
            }
            (None, Some(r)) => {
                let _ = writeln!(s, "- prediction refused: {r}");
            }
            _ => {}
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(s, "- oracle: {}", if o.pass() { "agrees" } else { "DISAGREES" });
        }
        let b = &self.bounds;
        if let Some(h) = &b.hamming {
            let _ = writeln!(s, "- sphere packing: distance {:?}, dimension {:?}", h.distance, h.dimension);
        }
        if let Some(g) = &b.griesmer {
            let _ = writeln!(s, "- Griesmer: distance {:?}, dimension {:?}", g.distance, g.dimension);
        }
        let _ = writeln!(
            s,
            "- minimal (ratio test): {:?}, doubly even: {}, self-orthogonal: {}\n",
            b.minimal_ab, b.doubly_even, b.self_orthogonal
        );
        s.push_str(&self.observed.to_markdown());
        s
    }
}

fn fmt_params(p: &Params) -> String {
    match p.d {
        Some(d) => format!("[{}, {}, {}]", p.n, p.k, d),
        None => format!("[{}, {}]", p.n, p.k),
    }
}

/// Divides a message-indexed histogram by the kernel size so it counts codewords.
pub fn collapse(brute: WeightDistribution, k: usize) -> Result<WeightDistribution> {
    let nominal = brute.k();
    if k > nominal {
        return Err(Error::Degenerate(format!("rank {k} exceeds the {nominal} message symbols")));
    }
    let kernel = BigUint::from(brute.q()).pow((nominal - k) as u32);
    let mut counts = Vec::with_capacity(brute.counts().len());
    for c in brute.counts() {
        if !(c % &kernel).is_zero() {
            return Err(Error::NonIntegral("codeword multiplicity".into()));
        }
        counts.push(c / &kernel);
    }
    Ok(WeightDistribution::new(brute.n(), k, brute.q(), counts))
}

fn check_budget(q: u32, k: usize, budget: u64) -> Result<()> {
    let needed = BigUint::from(q).pow(k as u32);
    match needed.to_u64() {
        Some(v) if v <= budget => Ok(()),
        _ => Err(Error::Budget { needed: needed.to_u128().unwrap_or(u128::MAX), budget }),
    }
}

fn dual_summary(code: &LinearCode, observed: &WeightDistribution) -> Result<Option<(DualSummary, WeightDistribution)>> {
    if code.k() == 0 || code.k() == code.n() {
        return Ok(None);
    }
    let dual = macwilliams(observed)?;
    let (n, k, q) = (code.n() as u64, (code.n() - code.k()) as u64, code.q() as u64);
    let d = dual.min_distance();
    let (hamming, griesmer) = match d {
        Some(d) => (Some(hamming_check(n, k, d as u64, q)?), Some(griesmer_check(n, k, d as u64, q)?)),
        None => (None, None),
    };
    let params = Params { n: n as usize, k: k as usize, d };
    Ok(Some((DualSummary { params, hamming, griesmer }, dual)))
}

/// Shared tail of every code report.
pub(crate) struct Assembly {
    pub construction: Construction,
    pub field: FieldDescriptor,
    pub top_code: Option<Params>,
    pub nominal_k: usize,
    pub predicted: Option<Result<PredictedDistribution>>,
    pub oracle: Option<OracleCheck>,
}

pub(crate) fn assemble(code: &LinearCode, observed: WeightDistribution, a: Assembly) -> Result<CodeReport> {
    let (prediction, prediction_refused) = match a.predicted {
        None => (None, None),
        Some(Ok(table)) => {
            let matches = table.matches(&observed);
            (Some(Prediction { source: table.source.clone(), matches, table }), None)
        }
        Some(Err(Error::Hypothesis(msg))) => (None, Some(msg)),
        Some(Err(e)) => return Err(e),
    };
    let dual = dual_summary(code, &observed)?;
    let bounds = bound_report(code, &observed, dual.as_ref().map(|(_, wd)| wd))?;
    Ok(CodeReport {
        schema_version: SCHEMA_VERSION,
        construction: a.construction,
        field: a.field,
        top_code: a.top_code,
        params: Params { n: code.n(), k: code.k(), d: observed.min_distance().filter(|&d| d > 0) },
        nominal_k: a.nominal_k,
        degenerate: code.k() < a.nominal_k,
        observed,
        prediction,
        prediction_refused,
        dual: dual.map(|(s, _)| s),
        bounds,
        oracle: a.oracle,
        provenance: Provenance::current(),
    })
}

fn top_params(top: &LinearCode, budget: u64) -> Params {
    Params { n: top.n(), k: top.k(), d: top.min_distance(budget).ok().flatten() }
}

/// The subfield code of the scalar triple, enumerated through its trace form.
pub fn scalar_report(t: &ScalarTriple, punctured: bool, oracle: bool, budget: u64) -> Result<CodeReport> {
    let ctx = t.ctx();
    let nominal_k = 3 * ctx.m() as usize + 1;
    check_budget(ctx.q(), nominal_k, budget)?;
    let top = t.build()?;
    let mut sub = top.subfield_code()?;
    if punctured {
        sub = sub.puncture(0)?;
    }
    let brute = t.brute_distribution(punctured);
    let oracle = if oracle {
        let formula = t.formula_distribution(punctured)?;
        Some(OracleCheck {
            formula_mismatches: t.formula_mismatches()?.len(),
            formula_matches_enumeration: formula == brute,
            trace_matches_matrix: false,
        })
    } else {
        None
    };
    let observed = collapse(brute, sub.k())?;
    let oracle = match oracle {
        Some(mut o) => {
            o.trace_matches_matrix = weight_distribution_with_budget(&sub, budget)? == observed;
            Some(o)
        }
        None => None,
    };
    let names = t.functions().map(|f| f.name().to_string()).to_vec();
    let assembly = Assembly {
        construction: Construction { family: "scalar-triple".into(), functions: names, punctured },
        field: ctx.descriptor(),
        top_code: Some(top_params(&top, budget)),
        nominal_k,
        predicted: Some(predict_scalar(t, punctured)),
        oracle,
    };
    assemble(&sub, observed, assembly)
}

/// The subfield code of the vectorial pair, enumerated through its trace form.
pub fn vectorial_report(t: &VectorialPair, punctured: bool, oracle: bool, budget: u64) -> Result<CodeReport> {
    let ctx = t.ctx();
    let nominal_k = 2 * ctx.m() as usize + 1;
    check_budget(ctx.q(), nominal_k, budget)?;
    let top = t.build()?;
    let mut sub = top.subfield_code()?;
    if punctured {
        sub = sub.puncture(0)?;
    }
    let brute = t.brute_distribution(punctured);
    let formula_mismatches = if oracle { Some(t.formula_mismatches()?.len()) } else { None };
    let observed = collapse(brute, sub.k())?;
    let oracle = match formula_mismatches {
        Some(formula_mismatches) => Some(OracleCheck {
            formula_mismatches,
            formula_matches_enumeration: formula_mismatches == 0,
            trace_matches_matrix: weight_distribution_with_budget(&sub, budget)? == observed,
        }),
        None => None,
    };
    // The tables describe the punctured code only.
    let predicted = if punctured { Some(predict_vectorial(t)) } else { None };
    let names = t.functions().map(|f| f.name().to_string()).to_vec();
    let assembly = Assembly {
        construction: Construction { family: "vectorial-pair".into(), functions: names, punctured },
        field: ctx.descriptor(),
        top_code: Some(top_params(&top, budget)),
        nominal_k,
        predicted,
        oracle,
    };
    assemble(&sub, observed, assembly)
}

/// A code given directly by its generator, with an optional prediction.
pub fn code_report(
    code: &LinearCode,
    family: &str,
    functions: Vec<String>,
    predicted: Option<Result<PredictedDistribution>>,
    budget: u64,
) -> Result<CodeReport> {
    let observed = weight_distribution_with_budget(code, budget)?;
    let assembly = Assembly {
        construction: Construction { family: family.into(), functions, punctured: false },
        field: code.ctx().descriptor(),
        top_code: None,
        nominal_k: code.k(),
        predicted,
        oracle: None,
    };
    assemble(code, observed, assembly)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalshReport {
    pub schema_version: u32,
    pub function: String,
    pub kind: String,
    pub field: Option<FieldDescriptor>,
    pub class: AmplitudeClass,
    pub components: usize,
    /// Amplitude s per component in mask order, null where not plateaued.
    pub component_s: Vec<Option<u32>>,
    /// |W|² → number of (component, λ) pairs.
    pub histogram: BTreeMap<i64, u64>,
    pub irrational_count: u64,
    pub provenance: Provenance,
}

impl WalshReport {
    pub fn new(f: &FnSpec) -> Result<WalshReport> {
        let sp = spectrum_summary(f)?;
        Ok(WalshReport {
            schema_version: SCHEMA_VERSION,
            function: f.name().to_string(),
            kind: format!("{:?}", f.kind()).to_lowercase(),
            field: f.ctx().map(|c| c.descriptor()),
            class: sp.class,
            components: sp.components.len(),
            component_s: sp.component_s.clone(),
            histogram: sp.histogram.clone(),
            irrational_count: sp.irrational_count,
            provenance: Provenance::current(),
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("## Walsh spectrum of {}\n\n- class: {:?}\n- components: {}\n", self.function, self.class, self.components);
        if self.irrational_count > 0 {
            let _ = writeln!(s, "- values with irrational |W|²: {}", self.irrational_count);
        }
        s.push_str("\n| abs(W)² | Count |\n|---:|---:|\n");
        for (v, c) in &self.histogram {
            let _ = writeln!(s, "| {v} | {c} |");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsQuery {
    pub schema_version: u32,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub q: u64,
    pub singleton: bool,
    pub hamming: BoundVerdict,
    pub griesmer: BoundVerdict,
}

impl BoundsQuery {
    pub fn new(n: u64, k: u64, d: u64, q: u64) -> Result<BoundsQuery> {
        Ok(BoundsQuery {
            schema_version: SCHEMA_VERSION,
            n,
            k,
            d,
            q,
            singleton: crate::bounds::singleton_holds(n, k, d),
            hamming: hamming_check(n, k, d, q)?,
            griesmer: griesmer_check(n, k, d, q)?,
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("## Bounds for [{}, {}, {}] over GF({})\n\n", self.n, self.k, self.d, self.q);
        s.push_str("| Bound | Holds | Tight | d* | k* | Distance | Dimension |\n|---|---|---|---:|---:|---|---|\n");
        for (name, v) in [("sphere packing", &self.hamming), ("Griesmer", &self.griesmer)] {
            let _ = writeln!(
                s,
                "| {name} | {} | {} | {} | {} | {:?} | {:?} |",
                v.holds, v.tight, v.d_max, v.k_max, v.distance, v.dimension
            );
        }
        let _ = writeln!(s, "\nSingleton holds: {}", self.singleton);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseVerdict {
    pub k: u32,
    pub holds: bool,
}

/// Validity and gate conditions of a CSS pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CssReport {
    pub schema_version: u32,
    pub css_valid: bool,
    /// Why the pair is not a valid CSS pair.
    pub reason: Option<String>,
    #[serde(rename = "N")]
    pub n: usize,
    pub k: Option<usize>,
    pub d_or_bound: Option<CssDistance>,
    pub t_transversal: Option<bool>,
    pub phase_transversal: Option<PhaseVerdict>,
}

/// Which transversal-gate condition to evaluate on C_X.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateCheck {
    T,
    Phase(u32),
}

impl CssReport {
    pub fn new(cx: &LinearCode, cz: &LinearCode, check: Option<GateCheck>, budget: u64) -> Result<CssReport> {
        let (css_valid, reason, k, d) = match css_build(cx, cz, budget) {
            Ok(css) => (true, None, Some(css.k_logical), Some(css.distance)),
            Err(Error::InclusionViolated) => (false, Some(Error::InclusionViolated.to_string()), None, None),
            Err(e) => return Err(e),
        };
        let t_transversal = match check {
            Some(GateCheck::T) => Some(css_t_check(cx, budget)?),
            _ => None,
        };
        let phase_transversal = match check {
            Some(GateCheck::Phase(k)) => Some(PhaseVerdict { k, holds: phase_moment_check(cx, k, budget)? }),
            _ => None,
        };
        Ok(CssReport {
            schema_version: SCHEMA_VERSION,
            css_valid,
            reason,
            n: cx.n(),
            k,
            d_or_bound: d,
            t_transversal,
            phase_transversal,
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("## CSS pair of length {}\n\n- valid: {}\n", self.n, self.css_valid);
        if let Some(r) = &self.reason {
            let _ = writeln!(s, "- reason: {r}");
        }
        if let Some(k) = self.k {
            let _ = writeln!(s, "- logical qudits: {k}");
        }
        if let Some(d) = &self.d_or_bound {
            let _ = writeln!(s, "- distance: {d:?}");
        }
        if let Some(t) = self.t_transversal {
            let _ = writeln!(s, "- T condition (weights ≡ 0 mod 4): {t}");
        }
        if let Some(p) = &self.phase_transversal {
            let _ = writeln!(s, "- phase condition (k = {}): {}", p.k, p.holds);
        }
        s
    }
}
