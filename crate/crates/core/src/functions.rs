//! Scalar and vectorial functions materialized as evaluation tables.
//!
//! A scalar function maps GF(q^m) to GF(q); a vectorial function maps one
//! F_p-space to another. Every space carries the pairing used by the Walsh
//! transform: the absolute trace form Tr(ab) on fields and the sum of the
//! factor pairings on products.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::galois::{Elem, FieldCtx, Level};
use crate::walsh::{spectrum_summary, AmplitudeClass};

/// An F_p-vector space with a nondegenerate pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    /// The top field of a tower.
    Field(Arc<FieldCtx>),
    /// The intermediate field GF(q) of a tower (codomain of scalar functions).
    Subfield(Arc<FieldCtx>),
    /// A ⊕ B, with element index a + b·|A|.
    Product(Box<Space>, Box<Space>),
}

impl Space {
    pub fn p(&self) -> u32 {
        match self {
            Space::Field(c) | Space::Subfield(c) => c.p(),
            Space::Product(a, _) => a.p(),
        }
    }

    pub fn size(&self) -> u32 {
        match self {
            Space::Field(c) => c.size(),
            Space::Subfield(c) => c.q(),
            Space::Product(a, b) => a.size() * b.size(),
        }
    }

    /// Dimension over GF(p).
    pub fn dim(&self) -> u32 {
        match self {
            Space::Field(c) => c.degree(),
            Space::Subfield(c) => c.r(),
            Space::Product(a, b) => a.dim() + b.dim(),
        }
    }

    /// Whether element indices are exactly `0..size`.
    pub fn is_contiguous(&self) -> bool {
        match self {
            Space::Field(_) => true,
            Space::Subfield(c) => c.m() == 1,
            Space::Product(a, b) => a.is_contiguous() && b.is_contiguous(),
        }
    }

    pub fn field(&self) -> Option<&Arc<FieldCtx>> {
        match self {
            Space::Field(c) | Space::Subfield(c) => Some(c),
            Space::Product(..) => None,
        }
    }

    pub fn elements(&self) -> Vec<Elem> {
        match self {
            Space::Subfield(c) => c.sub_elements().to_vec(),
            _ => (0..self.size()).map(Elem).collect(),
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        match self {
            Space::Field(c) => x.0 < c.size(),
            Space::Subfield(c) => c.in_level(x, Level::Sub),
            Space::Product(..) => x.0 < self.size(),
        }
    }

    pub fn split(&self, x: Elem) -> (Elem, Elem) {
        match self {
            Space::Product(a, _) => (Elem(x.0 % a.size()), Elem(x.0 / a.size())),
            _ => panic!("split on a non-product space"),
        }
    }

    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        match self {
            Space::Product(a, _) => Elem(x.0 + y.0 * a.size()),
            _ => panic!("join on a non-product space"),
        }
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match self {
            Space::Field(c) | Space::Subfield(c) => c.add(x, y),
            Space::Product(a, b) => {
                let ((x1, x2), (y1, y2)) = (self.split(x), self.split(y));
                self.join(a.add(x1, y1), b.add(x2, y2))
            }
        }
    }

    pub fn neg(&self, x: Elem) -> Elem {
        match self {
            Space::Field(c) | Space::Subfield(c) => c.neg(x),
            Space::Product(a, b) => {
                let (x1, x2) = self.split(x);
                self.join(a.neg(x1), b.neg(x2))
            }
        }
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// The pairing ⟨x, y⟩ ∈ GF(p), returned as an integer in 0..p.
    pub fn pair(&self, x: Elem, y: Elem) -> u32 {
        match self {
            Space::Field(c) => c.abs_trace(c.mul(x, y)),
            Space::Subfield(c) => c.trace_between(c.mul(x, y), Level::Sub, Level::Prime).0,
            Space::Product(a, b) => {
                let ((x1, x2), (y1, y2)) = (self.split(x), self.split(y));
                (a.pair(x1, y1) + b.pair(x2, y2)) % self.p()
            }
        }
    }

    /// For a contiguous space: entry λ is the digit vector u (as an index)
    /// with ⟨λ, x⟩ = Σ_j u_j x_j.
    pub fn dual_table(&self) -> Vec<u32> {
        match self {
            Space::Field(c) => c.trace_dual_table().to_vec(),
            _ => {
                assert!(self.is_contiguous());
                let p = self.p();
                let units: Vec<Elem> = (0..self.dim()).map(|j| Elem(p.pow(j))).collect();
                (0..self.size())
                    .map(|l| units.iter().rev().fold(0u32, |acc, &e| acc * p + self.pair(Elem(l), e)))
                    .collect()
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Space::Field(c) => format!("GF({}^{})", c.p(), c.degree()),
            Space::Subfield(c) => format!("GF({}^{})", c.p(), c.r()),
            Space::Product(a, b) => format!("{} x {}", a.describe(), b.describe()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FnKind {
    Scalar,
    Vectorial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FnMeta {
    pub name: String,
    pub exponent: Option<u64>,
    pub normalized: bool,
    pub permutation: bool,
}

/// A function given by its full evaluation table.
#[derive(Clone, Debug)]
pub struct FnSpec {
    kind: FnKind,
    domain: Space,
    codomain: Space,
    table: Vec<Elem>,
    meta: FnMeta,
}

impl PartialEq for FnSpec {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.domain == other.domain
            && self.codomain == other.codomain
            && self.table == other.table
    }
}

impl FnSpec {
    pub fn from_table(
        kind: FnKind,
        domain: Space,
        codomain: Space,
        table: Vec<Elem>,
        name: impl Into<String>,
    ) -> Result<FnSpec> {
        if !domain.is_contiguous() {
            return Err(Error::Incompatible("domain must be a field or a product".into()));
        }
        if table.len() != domain.size() as usize {
            return Err(Error::LengthMismatch(table.len(), domain.size() as usize));
        }
        if domain.p() != codomain.p() {
            return Err(Error::CharacteristicMismatch(domain.p(), codomain.p()));
        }
        if let Some(bad) = table.iter().find(|&&y| !codomain.contains(y)) {
            return Err(Error::InvalidParams(format!("value {} is outside the codomain", bad.0)));
        }
        if kind == FnKind::Scalar {
            match (&domain, &codomain) {
                (Space::Field(a), Space::Subfield(b)) if a == b => {}
                _ => return Err(Error::Incompatible("scalar functions map GF(q^m) to GF(q)".into())),
            }
        }
        let normalized = table[0] == Elem::ZERO;
        let permutation = domain.size() == codomain.size() && is_bijective(&table, codomain.size());
        Ok(FnSpec {
            kind,
            domain,
            codomain,
            table,
            meta: FnMeta { name: name.into(), exponent: None, normalized, permutation },
        })
    }

    fn with_exponent(mut self, d: u64) -> Self {
        self.meta.exponent = Some(d);
        self
    }

    pub fn kind(&self) -> FnKind {
        self.kind
    }
    pub fn domain(&self) -> &Space {
        &self.domain
    }
    pub fn codomain(&self) -> &Space {
        &self.codomain
    }
    pub fn table(&self) -> &[Elem] {
        &self.table
    }
    pub fn meta(&self) -> &FnMeta {
        &self.meta
    }
    pub fn name(&self) -> &str {
        &self.meta.name
    }
    pub fn p(&self) -> u32 {
        self.domain.p()
    }
    pub fn eval(&self, x: Elem) -> Elem {
        self.table[x.0 as usize]
    }
    pub fn is_normalized(&self) -> bool {
        self.meta.normalized
    }
    pub fn is_permutation(&self) -> bool {
        self.meta.permutation
    }

    /// The tower of the domain when the domain is a field.
    pub fn ctx(&self) -> Option<&Arc<FieldCtx>> {
        match &self.domain {
            Space::Field(c) => Some(c),
            _ => None,
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.meta.name = name.into();
        self
    }
}

fn is_bijective(table: &[Elem], size: u32) -> bool {
    let mut seen = vec![false; size as usize];
    for y in table {
        let slot = match seen.get_mut(y.0 as usize) {
            Some(s) => s,
            None => return false,
        };
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

fn scalar(ctx: &Arc<FieldCtx>, name: &str, f: impl Fn(Elem) -> Elem) -> FnSpec {
    let table = ctx.elements().map(f).collect();
    FnSpec::from_table(FnKind::Scalar, Space::Field(ctx.clone()), Space::Subfield(ctx.clone()), table, name)
        .expect("catalog tables are well formed")
}

fn vectorial(ctx: &Arc<FieldCtx>, name: &str, f: impl Fn(Elem) -> Elem) -> FnSpec {
    let table = ctx.elements().map(f).collect();
    FnSpec::from_table(FnKind::Vectorial, Space::Field(ctx.clone()), Space::Field(ctx.clone()), table, name)
        .expect("catalog tables are well formed")
}

/// x ↦ Tr_{q^m/q}(x).
pub fn fn_trace(ctx: &Arc<FieldCtx>) -> FnSpec {
    scalar(ctx, "tr", |x| ctx.trace(x, Level::Sub))
}

/// x ↦ Tr_{q^m/q}(x²).
pub fn fn_trace_square(ctx: &Arc<FieldCtx>) -> FnSpec {
    scalar(ctx, "tr_square", |x| ctx.trace(ctx.mul(x, x), Level::Sub))
}

/// x ↦ Norm_{q^m/q}(x).
pub fn fn_norm(ctx: &Arc<FieldCtx>) -> FnSpec {
    scalar(ctx, "norm", |x| ctx.norm(x, Level::Sub))
}

/// x ↦ Tr_{q^m/q}(x^d).
pub fn fn_trace_power(ctx: &Arc<FieldCtx>, d: u64) -> FnSpec {
    scalar(ctx, &format!("trpower:d={d}"), |x| ctx.trace(ctx.pow(x, d), Level::Sub)).with_exponent(d)
}

pub fn fn_scalar_zero(ctx: &Arc<FieldCtx>) -> FnSpec {
    scalar(ctx, "zero", |_| Elem::ZERO)
}

/// x ↦ Tr_{q^m/q}(F(x)) for F a vectorial function on the top field.
pub fn fn_trace_of(f: &FnSpec) -> Result<FnSpec> {
    match (&f.domain, &f.codomain) {
        (Space::Field(a), Space::Field(b)) if a == b => {
            let name = format!("tr({})", f.name());
            Ok(scalar(a, &name, |x| a.trace(f.eval(x), Level::Sub)))
        }
        _ => Err(Error::Incompatible("trace wrapper needs a function on one field".into())),
    }
}

/// The bent function Tr_{2^k/2}(x^{2^k+1}) on GF(2^{2k}); it equals the
/// Norm for k = 1. Bentness is checked on construction.
pub fn fn_bent_monomial(ctx: &Arc<FieldCtx>) -> Result<FnSpec> {
    if ctx.p() != 2 || ctx.r() != 1 || !ctx.m().is_multiple_of(2) {
        return Err(Error::InvalidParams("bent monomial needs GF(2^m) over GF(2) with m even".into()));
    }
    let k = ctx.m() / 2;
    let d = (1u64 << k) + 1;
    // λ with λ + λ^{2^k} = 1 turns Tr_{2^m/2}(λ y) into Tr_{2^k/2}(y) on GF(2^k).
    let lambda = ctx
        .elements()
        .find(|&l| ctx.add(l, ctx.pow(l, 1u64 << k)) == Elem::ONE)
        .expect("the relative trace is onto");
    let f = scalar(ctx, "bent:monomial", |x| ctx.trace(ctx.mul(lambda, ctx.pow(x, d)), Level::Sub))
        .with_exponent(d);
    match spectrum_summary(&f)?.class {
        AmplitudeClass::Bent => Ok(f),
        other => Err(Error::Hypothesis(format!("bent monomial classified as {other:?}"))),
    }
}

/// x ↦ x^d with 0 ↦ 0.
pub fn fn_power(ctx: &Arc<FieldCtx>, d: u64) -> FnSpec {
    vectorial(ctx, &format!("power:d={d}"), |x| if x.is_zero() { Elem::ZERO } else { ctx.pow(x, d) })
        .with_exponent(d)
}

pub fn fn_identity(ctx: &Arc<FieldCtx>) -> FnSpec {
    vectorial(ctx, "id", |x| x).with_exponent(1)
}

pub fn fn_zero(ctx: &Arc<FieldCtx>) -> FnSpec {
    vectorial(ctx, "zero", |_| Elem::ZERO)
}

fn binary_degree(ctx: &Arc<FieldCtx>, what: &str) -> Result<u32> {
    if ctx.p() != 2 {
        return Err(Error::InvalidParams(format!("{what} is defined over GF(2^m)")));
    }
    Ok(ctx.degree())
}

/// Gold: x^{2^i+1}, gcd(i,m) = 1, 1 ≤ i ≤ (m-1)/2.
pub fn fn_gold(ctx: &Arc<FieldCtx>, i: u32) -> Result<FnSpec> {
    let m = binary_degree(ctx, "gold")?;
    if i < 1 || i > (m.saturating_sub(1)) / 2 || gcd(i as u64, m as u64) != 1 {
        return Err(Error::InvalidParams(format!("gold needs gcd(i,m)=1 and 1<=i<=(m-1)/2, got i={i}, m={m}")));
    }
    let d = (1u64 << i) + 1;
    Ok(fn_power(ctx, d).renamed(format!("gold:i={i}")))
}

/// Kasami: x^{2^{2i}-2^i+1}, gcd(i,m) = 1, 2 ≤ i ≤ (m-1)/2.
pub fn fn_kasami(ctx: &Arc<FieldCtx>, i: u32) -> Result<FnSpec> {
    let m = binary_degree(ctx, "kasami")?;
    if i < 2 || i > (m.saturating_sub(1)) / 2 || gcd(i as u64, m as u64) != 1 {
        return Err(Error::InvalidParams(format!("kasami needs gcd(i,m)=1 and 2<=i<=(m-1)/2, got i={i}, m={m}")));
    }
    let d = (1u64 << (2 * i)) - (1u64 << i) + 1;
    Ok(fn_power(ctx, d).renamed(format!("kasami:i={i}")))
}

/// Welch: x^{2^{(m-1)/2}+3}, m odd.
pub fn fn_welch(ctx: &Arc<FieldCtx>) -> Result<FnSpec> {
    let m = binary_degree(ctx, "welch")?;
    if m % 2 == 0 {
        return Err(Error::InvalidParams(format!("welch needs m odd, got m={m}")));
    }
    let d = (1u64 << ((m - 1) / 2)) + 3;
    Ok(fn_power(ctx, d).renamed("welch"))
}

/// Niho: x^{2^{(m-1)/2}+2^{(m-1)/4}-1} for m ≡ 1 (mod 4) and
/// x^{2^{(m-1)/2}+2^{(3m-1)/4}-1} for m ≡ 3 (mod 4).
pub fn fn_niho(ctx: &Arc<FieldCtx>) -> Result<FnSpec> {
    let m = binary_degree(ctx, "niho")?;
    let d = match m % 4 {
        1 => (1u64 << ((m - 1) / 2)) + (1u64 << ((m - 1) / 4)) - 1,
        3 => (1u64 << ((m - 1) / 2)) + (1u64 << ((3 * m - 1) / 4)) - 1,
        _ => return Err(Error::InvalidParams(format!("niho needs m odd, got m={m}"))),
    };
    Ok(fn_power(ctx, d).renamed("niho"))
}

/// outer ∘ inner.
pub fn fn_compose(outer: &FnSpec, inner: &FnSpec) -> Result<FnSpec> {
    if inner.codomain != outer.domain {
        return Err(Error::Incompatible(format!(
            "cannot compose {} after {}",
            outer.domain.describe(),
            inner.codomain.describe()
        )));
    }
    let table = inner.table.iter().map(|&y| outer.eval(y)).collect();
    let name = format!("{}∘{}", outer.name(), inner.name());
    FnSpec::from_table(outer.kind, inner.domain.clone(), outer.codomain.clone(), table, name)
}

pub fn fn_invert(f: &FnSpec) -> Result<FnSpec> {
    if !f.is_permutation() || !f.codomain.is_contiguous() {
        return Err(Error::NotBijective);
    }
    let mut table = vec![Elem::ZERO; f.table.len()];
    for (x, &y) in f.table.iter().enumerate() {
        table[y.0 as usize] = Elem(x as u32);
    }
    let name = format!("inv({})", f.name());
    FnSpec::from_table(FnKind::Vectorial, f.codomain.clone(), f.domain.clone(), table, name)
}

/// x ↦ f(x) − f(0).
pub fn fn_normalize(f: &FnSpec) -> FnSpec {
    if f.is_normalized() {
        return f.clone();
    }
    let c = f.table[0];
    let table = f.table.iter().map(|&y| f.codomain.sub(y, c)).collect();
    let mut out = FnSpec::from_table(f.kind, f.domain.clone(), f.codomain.clone(), table, format!("{}-f(0)", f.name()))
        .expect("normalization stays in the codomain");
    out.meta.exponent = None;
    out
}

/// F(x,y) = (xπ(y)+φ(y), xπ(y)^{2^i}+ψ(y)) on GF(2^m) × GF(2^m).
pub fn fn_primary_plateaued(ctx: &Arc<FieldCtx>, pi: &FnSpec, phi: &FnSpec, psi: &FnSpec, i: u32) -> Result<FnSpec> {
    let m = binary_degree(ctx, "the primary construction")?;
    let field = Space::Field(ctx.clone());
    for f in [pi, phi, psi] {
        if f.domain != field || f.codomain != field {
            return Err(Error::Incompatible("π, φ, ψ must be functions on GF(2^m)".into()));
        }
    }
    if !pi.is_permutation() {
        return Err(Error::NotBijective);
    }
    if gcd(i as u64, m as u64) != 1 {
        return Err(Error::InvalidParams(format!("gcd(i,m) must be 1, got i={i}, m={m}")));
    }
    let plane = Space::Product(Box::new(field.clone()), Box::new(field));
    let frob = 1u64 << i;
    let table = plane
        .elements()
        .into_iter()
        .map(|xy| {
            let (x, y) = plane.split(xy);
            let py = pi.eval(y);
            let first = ctx.add(ctx.mul(x, py), phi.eval(y));
            let second = ctx.add(ctx.mul(x, ctx.pow(py, frob)), psi.eval(y));
            plane.join(first, second)
        })
        .collect();
    let name = format!("primary({},{},{},i={i})", pi.name(), phi.name(), psi.name());
    FnSpec::from_table(FnKind::Vectorial, plane.clone(), plane, table, name)
}

/// H(x,y) = (F(x), G(y)).
pub fn fn_secondary_plateaued(f: &FnSpec, g: &FnSpec) -> Result<FnSpec> {
    if f.p() != g.p() {
        return Err(Error::CharacteristicMismatch(f.p(), g.p()));
    }
    let dom = Space::Product(Box::new(f.domain.clone()), Box::new(g.domain.clone()));
    let cod = Space::Product(Box::new(f.codomain.clone()), Box::new(g.codomain.clone()));
    if !cod.is_contiguous() {
        return Err(Error::Incompatible("codomains must be fields or products".into()));
    }
    let table = dom
        .elements()
        .into_iter()
        .map(|xy| {
            let (x, y) = dom.split(xy);
            cod.join(f.eval(x), g.eval(y))
        })
        .collect();
    let name = format!("({},{})", f.name(), g.name());
    FnSpec::from_table(FnKind::Vectorial, dom, cod, table, name)
}

// ---- descriptors ----

struct Descriptor<'a> {
    input: &'a str,
    name: &'a str,
    /// (key, value, position of value)
    params: Vec<(&'a str, &'a str, usize)>,
    words: Vec<(&'a str, usize)>,
    inner: Option<(&'a str, usize)>,
}

fn parse_err(input: &str, pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { input: input.to_string(), pos, msg: msg.into() }
}

fn tokenize(input: &str) -> Result<Descriptor<'_>> {
    let trimmed_start = input.len() - input.trim_start().len();
    let s = input.trim();
    if s.is_empty() {
        return Err(parse_err(input, 0, "empty descriptor"));
    }
    if let Some(open) = s.find('(') {
        if !s.ends_with(')') {
            return Err(parse_err(input, trimmed_start + s.len(), "missing ')'"));
        }
        let name = &s[..open];
        return Ok(Descriptor {
            input,
            name,
            params: Vec::new(),
            words: Vec::new(),
            inner: Some((&s[open + 1..s.len() - 1], trimmed_start + open + 1)),
        });
    }
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if ch == ':' || ch == ',' {
            parts.push((&s[start..i], start));
            start = i + 1;
        }
    }
    parts.push((&s[start..], start));
    let (name, _) = parts[0];
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
        return Err(parse_err(input, trimmed_start, format!("invalid function name {name:?}")));
    }
    let mut params = Vec::new();
    let mut words = Vec::new();
    for &(part, pos) in &parts[1..] {
        let pos = pos + trimmed_start;
        if part.is_empty() {
            return Err(parse_err(input, pos, "empty parameter"));
        }
        match part.split_once('=') {
            Some((k, v)) if !k.is_empty() && !v.is_empty() => params.push((k, v, pos + k.len() + 1)),
            Some(_) => return Err(parse_err(input, pos, "expected key=value")),
            None => words.push((part, pos)),
        }
    }
    Ok(Descriptor { input, name, params, words, inner: None })
}

impl Descriptor<'_> {
    fn int(&self, key: &str) -> Result<u64> {
        let (_, v, pos) = self
            .params
            .iter()
            .find(|(k, _, _)| *k == key)
            .ok_or_else(|| parse_err(self.input, self.input.len(), format!("missing parameter {key}")))?;
        v.parse::<u64>()
            .map_err(|_| parse_err(self.input, *pos, format!("parameter {key} must be a nonnegative integer")))
    }

    fn expect_keys(&self, allowed: &[&str]) -> Result<()> {
        for (k, _, pos) in &self.params {
            if !allowed.contains(k) {
                return Err(parse_err(self.input, pos - k.len() - 1, format!("unknown parameter {k}")));
            }
        }
        Ok(())
    }

    fn expect_words(&self, allowed: &[&str]) -> Result<()> {
        for (w, pos) in &self.words {
            if !allowed.contains(w) {
                return Err(parse_err(self.input, *pos, format!("unexpected {w:?}")));
            }
        }
        Ok(())
    }
}

/// Parses a vectorial catalog descriptor such as `gold:i=1`, `power:d=5`,
/// `kasami:i=2`, `welch`, `niho`, `id`, `zero` or `inv`.
pub fn parse_vectorial(desc: &str, ctx: &Arc<FieldCtx>) -> Result<FnSpec> {
    let d = tokenize(desc)?;
    if d.inner.is_some() {
        return Err(parse_err(desc, 0, "wrappers are only valid for scalar functions"));
    }
    d.expect_words(&[])?;
    let small = |v: u64| -> Result<u32> {
        u32::try_from(v).map_err(|_| parse_err(desc, 0, "parameter too large"))
    };
    match d.name {
        "id" => Ok(fn_identity(ctx)),
        "zero" => Ok(fn_zero(ctx)),
        "inv" => Ok(fn_power(ctx, ctx.size() as u64 - 2).renamed("inv")),
        "power" => {
            d.expect_keys(&["d"])?;
            Ok(fn_power(ctx, d.int("d")?))
        }
        "gold" => {
            d.expect_keys(&["i"])?;
            fn_gold(ctx, small(d.int("i")?)?)
        }
        "kasami" => {
            d.expect_keys(&["i"])?;
            fn_kasami(ctx, small(d.int("i")?)?)
        }
        "welch" => fn_welch(ctx),
        "niho" => fn_niho(ctx),
        other => Err(parse_err(desc, 0, format!("unknown vectorial function {other:?}"))),
    }
}

/// Parses a scalar catalog descriptor: `tr`, `tr_square`, `norm`,
/// `bent:monomial`, `zero`, `trpower:d=3`, or `tr(<vectorial descriptor>)`.
pub fn parse_scalar(desc: &str, ctx: &Arc<FieldCtx>) -> Result<FnSpec> {
    let d = tokenize(desc)?;
    if let Some((inner, pos)) = d.inner {
        if d.name != "tr" {
            return Err(parse_err(desc, 0, format!("unknown wrapper {:?}", d.name)));
        }
        let f = parse_vectorial(inner, ctx).map_err(|e| match e {
            Error::Parse { pos: p, msg, .. } => parse_err(desc, pos + p, msg),
            other => other,
        })?;
        return fn_trace_of(&f);
    }
    match d.name {
        "tr" => {
            d.expect_words(&[])?;
            Ok(fn_trace(ctx))
        }
        "tr_square" => Ok(fn_trace_square(ctx)),
        "norm" => Ok(fn_norm(ctx)),
        "zero" => Ok(fn_scalar_zero(ctx)),
        "bent" => {
            d.expect_words(&["monomial"])?;
            fn_bent_monomial(ctx)
        }
        "trpower" => {
            d.expect_keys(&["d"])?;
            Ok(fn_trace_power(ctx, d.int("d")?))
        }
        other => Err(parse_err(desc, 0, format!("unknown scalar function {other:?}"))),
    }
}
