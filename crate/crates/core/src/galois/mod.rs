//! Finite-field towers GF(p) ⊆ GF(q) ⊆ GF(q^m) with q = p^r.
//!
//! Elements of the top field are identified by an index in `0..p^{rm}`: the
//! polynomial-basis coefficients (constant term first) read as base-p digits.
//! Index 0 is zero, index 1 is one, and the prime subfield occupies `0..p`.
//! Elements of the intermediate field GF(q) are ordinary top-field indices
//! that happen to be fixed by x ↦ x^q.

pub mod chars;
mod cyclo;
pub(crate) mod poly;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cyclo::CycInt;

/// Default cap on the number of elements of the top field.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 24;

/// An element of the top field of some [`FieldCtx`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A field of the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// GF(p)
    Prime,
    /// GF(q)
    Sub,
    /// GF(q^m)
    Top,
}

/// Reproducibility descriptor of a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub r: u32,
    pub m: u32,
    /// Coefficients of the modulus, constant term first.
    pub modulus: Vec<u32>,
    pub primitive: u32,
}

/// An immutable field tower with log/antilog tables for the top field.
pub struct FieldCtx {
    p: u32,
    r: u32,
    m: u32,
    degree: u32,
    size: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    /// exp[i] = g^i for 0 <= i < 2(size-1).
    exp: Vec<u32>,
    log: Vec<u32>,
    abs_trace: OnceLock<Vec<u8>>,
    rel_trace: OnceLock<Vec<Elem>>,
    trace_dual: OnceLock<Vec<u32>>,
    sub_elems: OnceLock<Vec<Elem>>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("primitive", &self.primitive.0)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    /// Builds GF(p) ⊆ GF(p^r) ⊆ GF(p^{rm}) with the default size cap.
    pub fn new(p: u32, r: u32, m: u32) -> Result<Arc<FieldCtx>> {
        Self::with_cap(p, r, m, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(p: u32, r: u32, m: u32, cap: u64) -> Result<Arc<FieldCtx>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 || m == 0 {
            return Err(Error::InvalidParams("extension degrees must be at least 1".into()));
        }
        let degree = r
            .checked_mul(m)
            .ok_or_else(|| Error::InvalidParams("degree overflow".into()))?;
        let size = (p as u128).checked_pow(degree).unwrap_or(u128::MAX);
        if size > cap as u128 || size > u32::MAX as u128 {
            return Err(Error::SizeCap { p, degree, cap });
        }
        let size = size as u32;
        let modulus = poly::smallest_irreducible(p, degree);

        let order = size as u64 - 1;
        let factors = prime_factors(order);
        let primitive = (1..size)
            .find(|&g| {
                let gp = poly::decode(g, p, degree as usize);
                factors.iter().all(|&l| {
                    let y = poly::powmod(&gp, order / l, &modulus, p);
                    y != [1]
                })
            })
            .expect("the multiplicative group is cyclic");

        let n1 = (size - 1) as usize;
        let mut exp = vec![0u32; 2 * n1.max(1)];
        let mut log = vec![0u32; size as usize];
        let mut cur = 1u32;
        for i in 0..n1 {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = mul_by_poly(cur, primitive, p, degree, &modulus);
        }
        for i in n1..2 * n1 {
            exp[i] = exp[i - n1];
        }
        if n1 == 0 {
            exp[0] = 1;
        }

        Ok(Arc::new(FieldCtx {
            p,
            r,
            m,
            degree,
            size,
            modulus,
            primitive: Elem(primitive),
            exp,
            log,
            abs_trace: OnceLock::new(),
            rel_trace: OnceLock::new(),
            trace_dual: OnceLock::new(),
            sub_elems: OnceLock::new(),
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    /// q = p^r.
    pub fn q(&self) -> u32 {
        self.p.pow(self.r)
    }
    /// Degree of the top field over GF(p).
    pub fn degree(&self) -> u32 {
        self.degree
    }
    /// Number of elements of the top field.
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            r: self.r,
            m: self.m,
            modulus: self.modulus.clone(),
            primitive: self.primitive.0,
        }
    }

    pub fn level_degree(&self, level: Level) -> u32 {
        match level {
            Level::Prime => 1,
            Level::Sub => self.r,
            Level::Top => self.degree,
        }
    }

    pub fn level_size(&self, level: Level) -> u32 {
        self.p.pow(self.level_degree(level))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    // ---- additive structure ----

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place = place.wrapping_mul(self.p);
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// The integer k (mod p) times a.
    pub fn mul_int(&self, a: Elem, k: u32) -> Elem {
        self.mul(a, Elem(k % self.p))
    }

    // ---- multiplicative structure ----

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let n1 = self.size - 1;
        Some(Elem(self.exp[((n1 - self.log[a.0 as usize]) % n1.max(1)) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n1 = (self.size - 1) as u128;
        let l = (self.log[a.0 as usize] as u128 * e as u128) % n1.max(1);
        Elem(self.exp[l as usize])
    }

    /// Discrete logarithm to the base of the primitive element.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// g^i for the primitive element g.
    pub fn exp(&self, i: u64) -> Elem {
        let n1 = (self.size - 1).max(1) as u64;
        Elem(self.exp[(i % n1) as usize])
    }

    /// x^{p^k}.
    pub fn frobenius(&self, x: Elem, k: u32) -> Elem {
        self.pow(x, (self.p as u64).pow(k % self.degree))
    }

    // ---- subfields ----

    pub fn in_level(&self, x: Elem, level: Level) -> bool {
        match level {
            Level::Prime => x.0 < self.p,
            Level::Top => x.0 < self.size,
            Level::Sub => {
                if x.0 == 0 {
                    return true;
                }
                let step = (self.size - 1) / (self.q() - 1);
                self.log[x.0 as usize].is_multiple_of(step)
            }
        }
    }

    /// Elements of the given level in increasing index order.
    pub fn level_elements(&self, level: Level) -> Vec<Elem> {
        match level {
            Level::Prime => (0..self.p).map(Elem).collect(),
            Level::Top => self.elements().collect(),
            Level::Sub => self.sub_elements().to_vec(),
        }
    }

    /// GF(q) inside the top field, found once as the fixed points of x ↦ x^q.
    pub fn sub_elements(&self) -> &[Elem] {
        self.sub_elems.get_or_init(|| {
            let q = self.q() as u64;
            self.elements().filter(|&x| self.pow(x, q) == x).collect()
        })
    }

    /// Position of a GF(q) element in [`Self::sub_elements`].
    pub fn sub_position(&self, x: Elem) -> Option<usize> {
        self.sub_elements().binary_search(&x).ok()
    }

    /// A generator of the multiplicative group of the given level.
    pub fn level_generator(&self, level: Level) -> Elem {
        let qs = self.level_size(level);
        if qs == 2 {
            return Elem::ONE;
        }
        self.exp(((self.size - 1) / (qs - 1)) as u64)
    }

    /// A basis of the given level as a vector space over GF(p).
    pub fn prime_basis(&self, level: Level) -> Vec<Elem> {
        let g = self.level_generator(level);
        (0..self.level_degree(level)).map(|i| self.pow(g, i as u64)).collect()
    }

    /// The polynomial basis {1, g, ..., g^{m-1}} of GF(q^m) over GF(q).
    pub fn polynomial_basis(&self) -> Vec<Elem> {
        (0..self.m).map(|i| self.pow(self.primitive, i as u64)).collect()
    }

    /// The shifted basis {g, g^2, ..., g^m} of GF(q^m) over GF(q).
    pub fn shifted_basis(&self) -> Vec<Elem> {
        (1..=self.m).map(|i| self.pow(self.primitive, i as u64)).collect()
    }

    // ---- trace and norm ----

    /// Relative trace from `from` down to `to`; `x` must lie in `from`.
    pub fn trace_between(&self, x: Elem, from: Level, to: Level) -> Elem {
        let (df, dt) = (self.level_degree(from), self.level_degree(to));
        assert!(df % dt == 0 && df >= dt, "invalid trace levels");
        let base = self.level_size(to) as u64;
        let mut acc = Elem::ZERO;
        let mut conj = x;
        for _ in 0..df / dt {
            acc = self.add(acc, conj);
            conj = self.pow(conj, base);
        }
        acc
    }

    pub fn norm_between(&self, x: Elem, from: Level, to: Level) -> Elem {
        let (df, dt) = (self.level_degree(from), self.level_degree(to));
        assert!(df % dt == 0 && df >= dt, "invalid norm levels");
        let base = self.level_size(to) as u64;
        let mut acc = Elem::ONE;
        let mut conj = x;
        for _ in 0..df / dt {
            acc = self.mul(acc, conj);
            conj = self.pow(conj, base);
        }
        acc
    }

    /// Trace from the top field.
    pub fn trace(&self, x: Elem, to: Level) -> Elem {
        match to {
            Level::Prime => Elem(self.abs_trace_table()[x.0 as usize] as u32),
            Level::Sub => self.rel_trace_table()[x.0 as usize],
            Level::Top => x,
        }
    }

    /// Norm from the top field.
    pub fn norm(&self, x: Elem, to: Level) -> Elem {
        self.norm_between(x, Level::Top, to)
    }

    /// Absolute trace Tr_{q^m/p} of every element, as digits in 0..p.
    pub fn abs_trace_table(&self) -> &[u8] {
        self.abs_trace.get_or_init(|| {
            self.elements()
                .map(|x| self.trace_between(x, Level::Top, Level::Prime).0 as u8)
                .collect()
        })
    }

    /// Relative trace Tr_{q^m/q} of every element.
    pub fn rel_trace_table(&self) -> &[Elem] {
        self.rel_trace.get_or_init(|| {
            self.elements()
                .map(|x| self.trace_between(x, Level::Top, Level::Sub))
                .collect()
        })
    }

    /// Absolute trace as an integer in 0..p.
    pub fn abs_trace(&self, x: Elem) -> u32 {
        self.abs_trace_table()[x.0 as usize] as u32
    }

    /// For each λ, the digit vector u (packed as an index) with
    /// Tr_{q^m/p}(λx) = Σ_j u_j x_j for every x with digits x_j.
    pub fn trace_dual_table(&self) -> &[u32] {
        self.trace_dual.get_or_init(|| {
            let units: Vec<Elem> = (0..self.degree).map(|j| Elem(self.p.pow(j))).collect();
            self.elements()
                .map(|l| {
                    units
                        .iter()
                        .rev()
                        .fold(0u32, |acc, &e| acc * self.p + self.abs_trace(self.mul(l, e)))
                })
                .collect()
        })
    }

    /// Quadratic character of the given level (odd characteristic): +1 on
    /// nonzero squares, -1 on non-squares, 0 at zero.
    pub fn quadratic_char(&self, x: Elem, level: Level) -> i32 {
        assert!(self.p != 2, "quadratic character needs odd characteristic");
        if x.0 == 0 {
            return 0;
        }
        let step = (self.size - 1) / (self.level_size(level) - 1);
        let local = self.log[x.0 as usize] / step;
        if local.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// GF(q)-coordinates of every top-field element in the given basis:
    /// entry `x` holds (c_1, ..., c_m) with x = Σ c_i β_i.
    pub fn coordinates(&self, basis: &[Elem]) -> Result<Vec<Vec<Elem>>> {
        if basis.len() != self.m as usize {
            return Err(Error::InvalidParams("basis must have m elements".into()));
        }
        let sub = self.sub_elements();
        let q = sub.len();
        let mut table: Vec<Option<Vec<Elem>>> = vec![None; self.size as usize];
        let mut digits = vec![0usize; basis.len()];
        loop {
            let coeffs: Vec<Elem> = digits.iter().map(|&d| sub[d]).collect();
            let x = coeffs
                .iter()
                .zip(basis)
                .fold(Elem::ZERO, |acc, (&c, &b)| self.add(acc, self.mul(c, b)));
            if table[x.0 as usize].is_some() {
                return Err(Error::InvalidParams("elements are not a basis".into()));
            }
            table[x.0 as usize] = Some(coeffs);
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
        Ok(table.into_iter().map(|c| c.expect("basis spans")).collect())
    }
}

fn mul_by_poly(a: u32, b: u32, p: u32, degree: u32, modulus: &[u32]) -> u32 {
    if p == 2 {
        let mut prod: u64 = 0;
        for i in 0..32 {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u64) << i;
            }
        }
        let modbits: u64 = modulus
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i));
        for bit in (degree as u64..64).rev() {
            if (prod >> bit) & 1 == 1 {
                prod ^= modbits << (bit - degree as u64);
            }
        }
        return prod as u32;
    }
    let pa = poly::decode(a, p, degree as usize);
    let pb = poly::decode(b, p, degree as usize);
    poly::encode(&poly::mulmod(&pa, &pb, modulus, p), p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_basics() {
        let f = FieldCtx::new(2, 1, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = Elem(2);
        assert_eq!(f.trace(w, Level::Prime), Elem::ONE);
        assert_eq!(f.norm(w, Level::Prime), Elem::ONE);
        assert_eq!(f.mul(w, w), Elem(3));
        assert_eq!(f.add(w, Elem::ONE), Elem(3));
    }

    #[test]
    fn prime_field() {
        let f = FieldCtx::new(3, 1, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.mul(Elem(2), Elem(2)), Elem(1));
        assert_eq!(f.add(Elem(2), Elem(2)), Elem(1));
        assert_eq!(f.primitive(), Elem(2));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldCtx::new(4, 1, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldCtx::with_cap(2, 1, 10, 512), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn subfield_has_q_elements() {
        let f = FieldCtx::new(2, 2, 3).unwrap();
        assert_eq!(f.sub_elements().len(), 4);
        for &x in f.sub_elements() {
            assert!(f.in_level(x, Level::Sub));
        }
        let g = FieldCtx::new(3, 2, 2).unwrap();
        assert_eq!(g.sub_elements().len(), 9);
        assert_eq!(g.elements().filter(|&x| g.in_level(x, Level::Sub)).count(), 9);
    }

    #[test]
    fn trace_dual_matches_trace() {
        for (p, r, m) in [(2, 1, 5), (3, 1, 3), (2, 2, 2)] {
            let f = FieldCtx::new(p, r, m).unwrap();
            let dual = f.trace_dual_table();
            for l in f.elements() {
                for x in f.elements() {
                    let u = poly::decode(dual[l.0 as usize], p, f.degree() as usize);
                    let xd = poly::decode(x.0, p, f.degree() as usize);
                    let dot: u32 = u.iter().zip(xd.iter()).map(|(a, b)| a * b).sum::<u32>() % p;
                    assert_eq!(dot, f.abs_trace(f.mul(l, x)));
                }
            }
        }
    }
}
