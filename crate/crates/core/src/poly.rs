//! Multivariate monomials, monomial orders, and polynomial arithmetic.
//!
//! Monomials are dense exponent vectors (ambient dimensions here are tiny, so
//! dense comparisons beat sparse bookkeeping). Polynomials are term lists kept
//! strictly sorted descending in their ring's active order, with no zero
//! coefficients stored; the zero polynomial has an empty term list.
//!
//! The degrevlex rule is pinned exactly: `u > v` iff `deg u > deg v`, or the
//! degrees are equal and the last nonzero entry of `u − v` is negative. The
//! elimination order `block(k)` compares the total degree in the first `k`
//! variables, then lex on those `k`, then degrevlex on the rest.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::EngineError;
use crate::scalar::Field;

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

type Exps = SmallVec<[u32; 6]>;

/// A monomial: one exponent per ring variable, with the total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exps,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: impl Into<Exps>) -> Self {
        let exps = exps.into();
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps: Exps = smallvec::smallvec![0; nvars];
        exps[i] = e;
        Monomial { exps, deg: e }
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let exps: Exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::new(exps)
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

// ---------------------------------------------------------------------------
// Monomial orders
// ---------------------------------------------------------------------------

/// A global monomial order. All three variants have 1 as the minimum and are
/// multiplicative, so Gröbner theory applies unchanged.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Elimination order for the first `elim` variables: total degree in those
    /// variables first, ties by lex on them, then degrevlex on the rest.
    Block { elim: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, u: &Monomial, v: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(u.exps(), v.exps(), u.deg(), v.deg()),
            MonomialOrder::Lex => lex(u.exps(), v.exps()),
            MonomialOrder::Block { elim } => {
                let (uf, ur) = u.exps().split_at(elim.min(u.nvars()));
                let (vf, vr) = v.exps().split_at(elim.min(v.nvars()));
                let du: u32 = uf.iter().sum();
                let dv: u32 = vf.iter().sum();
                du.cmp(&dv)
                    .then_with(|| lex(uf, vf))
                    .then_with(|| degrevlex(ur, vr, ur.iter().sum(), vr.iter().sum()))
            }
        }
    }

    pub fn tag(&self) -> String {
        match self {
            MonomialOrder::DegRevLex => "degrevlex".to_string(),
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Block { elim } => format!("block:{elim}"),
        }
    }

    pub fn parse(s: &str) -> Result<Self, EngineError> {
        match s {
            "degrevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => {
                if let Some(k) = s.strip_prefix("block:") {
                    let elim = k
                        .parse()
                        .map_err(|_| EngineError::parse(format!("bad block count `{k}`")))?;
                    Ok(MonomialOrder::Block { elim })
                } else {
                    Err(EngineError::parse(format!("unknown monomial order `{s}`")))
                }
            }
        }
    }
}

fn degrevlex(u: &[u32], v: &[u32], du: u32, dv: u32) -> Ordering {
    match du.cmp(&dv) {
        Ordering::Equal => {}
        other => return other,
    }
    // Equal degrees: u > v iff the last nonzero entry of u − v is negative.
    for i in (0..u.len()).rev() {
        match u[i].cmp(&v[i]) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex(u: &[u32], v: &[u32]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

// ---------------------------------------------------------------------------
// Rings
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct RingInner<F: Field> {
    nvars: usize,
    field: F,
    order: MonomialOrder,
}

/// A polynomial ring context: variable count, coefficient field, active order.
/// Cheap to clone (shared pointer); two rings are interchangeable iff all
/// three components agree. Variables are named `x0..x{n-1}`.
#[derive(Clone, Debug)]
pub struct Ring<F: Field> {
    inner: Arc<RingInner<F>>,
}

impl<F: Field> PartialEq for Ring<F> {
    fn eq(&self, other: &Self) -> bool {
        self.inner.nvars == other.inner.nvars
            && self.inner.field == other.inner.field
            && self.inner.order == other.inner.order
    }
}
impl<F: Field> Eq for Ring<F> {}

impl<F: Field> Ring<F> {
    /// `ring_make`: `num_vars ≥ 1` variables named x0.. over `field`.
    pub fn new(num_vars: usize, field: F, order: MonomialOrder) -> Self {
        assert!(num_vars >= 1, "a ring needs at least one variable");
        Ring {
            inner: Arc::new(RingInner {
                nvars: num_vars,
                field,
                order,
            }),
        }
    }

    pub fn nvars(&self) -> usize {
        self.inner.nvars
    }

    pub fn field(&self) -> &F {
        &self.inner.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.order
    }

    /// Same variables and field, different active order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Ring::new(self.inner.nvars, self.inner.field.clone(), order)
    }

    pub fn var_name(&self, i: usize) -> String {
        format!("x{i}")
    }

    pub fn zero(&self) -> Poly<F> {
        Poly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Poly<F> {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        if self.field().is_zero(&c) {
            return self.zero();
        }
        Poly {
            ring: self.clone(),
            terms: vec![(Monomial::one(self.nvars()), c)],
        }
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        assert!(i < self.nvars());
        Poly {
            ring: self.clone(),
            terms: vec![(Monomial::var(self.nvars(), i, 1), self.field().one())],
        }
    }

    pub fn monomial(&self, m: Monomial, c: F::Elem) -> Poly<F> {
        if self.field().is_zero(&c) {
            return self.zero();
        }
        debug_assert_eq!(m.nvars(), self.nvars());
        Poly {
            ring: self.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Build from arbitrary (monomial, coefficient) pairs: merges duplicates,
    /// drops zeros, sorts descending in the active order.
    pub fn from_terms(&self, terms: Vec<(Monomial, F::Elem)>) -> Poly<F> {
        let mut terms = terms;
        let order = self.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let field = self.field().clone();
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = field.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Poly {
            ring: self.clone(),
            terms: out,
        }
    }

    /// All monomials of total degree `d`, sorted descending in the active
    /// order. Deterministic; used for Hilbert-function counts and the exact
    /// linear algebra in degree profiles.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps: Exps = smallvec::smallvec![0; self.nvars()];
        gen_monomials(self.nvars(), 0, d, &mut exps, &mut out);
        let order = self.order();
        out.sort_by(|a, b| order.cmp(b, a));
        out
    }
}

fn gen_monomials(nvars: usize, i: usize, remaining: u32, exps: &mut Exps, out: &mut Vec<Monomial>) {
    if i == nvars - 1 {
        exps[i] = remaining;
        out.push(Monomial::new(exps.clone()));
        exps[i] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        exps[i] = e;
        gen_monomials(nvars, i + 1, remaining - e, exps, out);
        exps[i] = 0;
    }
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// An exact multivariate polynomial over its ring's field.
#[derive(Clone, Debug)]
pub struct Poly<F: Field> {
    ring: Ring<F>,
    /// Sorted strictly descending in the ring's active order; no zero coeffs.
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}
impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Poly<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial (the −∞ sentinel).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.deg()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.deg();
                self.terms.iter().all(|(m, _)| m.deg() == d)
            }
        }
    }

    /// Leading term in the ring's active order.
    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    /// Leading term under an arbitrary order (re-scans when it differs from
    /// the ring's active order).
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, F::Elem)> {
        if order == self.ring.order() {
            return self.terms.first().cloned();
        }
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .cloned()
    }

    fn assert_same_ring(&self, other: &Self) -> Result<(), EngineError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(EngineError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other).expect("ring mismatch");
        self.merge(other, false, None)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_ring(other).expect("ring mismatch");
        self.merge(other, true, None)
    }

    /// Linear merge of two term lists sorted in the same order; `shift`
    /// multiplies `other` by a monomial first (sort order is preserved because
    /// the order is multiplicative).
    fn merge(&self, other: &Self, negate: bool, shift: Option<(&Monomial, &F::Elem)>) -> Self {
        let field = self.ring.field().clone();
        let order = self.ring.order();
        let mut out: Vec<(Monomial, F::Elem)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let other_term = |j: usize| -> (Monomial, F::Elem) {
            let (m, c) = &other.terms[j];
            match shift {
                None => (m.clone(), c.clone()),
                Some((sm, sc)) => (m.mul(sm), field.mul(c, sc)),
            }
        };
        while i < self.terms.len() && j < other.terms.len() {
            let (om, oc) = other_term(j);
            match order.cmp(&self.terms[i].0, &om) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((om, if negate { field.neg(&oc) } else { oc }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        field.sub(&self.terms[i].1, &oc)
                    } else {
                        field.add(&self.terms[i].1, &oc)
                    };
                    if !field.is_zero(&c) {
                        out.push((om, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        while j < other.terms.len() {
            let (om, oc) = other_term(j);
            out.push((om, if negate { field.neg(&oc) } else { oc }));
            j += 1;
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// The fused reduction step `u·self − v·(mono·g)`, a single merge pass.
    /// This is the hot operation of the division algorithm.
    pub fn axpy_mono(&self, u: &F::Elem, v: &F::Elem, mono: &Monomial, g: &Self) -> Self {
        let scaled = if self.ring.field().is_one(u) {
            self.clone()
        } else {
            self.scalar_mul(u)
        };
        scaled.merge(g, true, Some((mono, v)))
    }

    pub fn neg(&self) -> Self {
        let field = self.ring.field();
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn scalar_mul(&self, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), field.mul(k, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &F::Elem) -> Self {
        let field = self.ring.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), field.mul(k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other).expect("ring mismatch");
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        // Accumulate into a map keyed by exponent vector, then canonical-sort.
        let field = self.ring.field().clone();
        let mut acc: std::collections::HashMap<Monomial, F::Elem> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = field.add(e.get(), &c);
                        if field.is_zero(&s) {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, F::Elem)> = acc.into_iter().collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// `f^k` by repeated squaring; `f^0 = 1`.
    pub fn power(&self, k: u32) -> Self {
        let mut base = self.clone();
        let mut exp = k;
        let mut acc = self.ring.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Canonical rescaling by one nonzero constant (primitive integer form
    /// over ℚ with positive leading coefficient; monic over a prime field).
    pub fn normalize_content(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs: Vec<F::Elem> = self.terms.iter().map(|(_, c)| c.clone()).collect();
        self.ring.field().normalize_content(&mut coeffs);
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .zip(coeffs)
                .map(|((m, _), c)| (m.clone(), c))
                .collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<Self, EngineError> {
        match self.terms.first() {
            None => Ok(self.clone()),
            Some((_, lc)) => {
                let inv = self.ring.field().inv(lc)?;
                Ok(self.scalar_mul(&inv))
            }
        }
    }

    /// Exact division: `self / divisor` when the remainder is zero.
    pub fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        self.assert_same_ring(divisor).expect("ring mismatch");
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let field = self.ring.field().clone();
        let (dm, dc) = divisor.terms.first().unwrap();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = dm.div(&m)?;
            let qc = field.div(&c, dc).ok()?;
            quot.push((q.clone(), qc.clone()));
            rem = rem.merge(divisor, true, Some((&q, &qc)));
        }
        Some(self.ring.from_terms(quot))
    }

    /// The exact power of `var` dividing every term (0 for the zero poly).
    pub fn var_multiplicity(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exp(var))
            .min()
            .unwrap_or(0)
    }

    /// Divide out `var^k`; panics if some term has a smaller power (internal
    /// use follows `var_multiplicity`).
    pub fn divide_by_var_power(&self, var: usize, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps: Exps = m.exps().into();
                assert!(exps[var] >= k, "variable power division not exact");
                exps[var] -= k;
                (Monomial::new(exps), c.clone())
            })
            .collect();
        // Dividing every term by the same monomial preserves relative order.
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Map this polynomial into `target` by sending variable `i` to variable
    /// `var_map[i]`. The map must be injective.
    pub fn embed(&self, target: &Ring<F>, var_map: &[usize]) -> Poly<F> {
        assert_eq!(var_map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps: Exps = smallvec::smallvec![0; target.nvars()];
                for (i, e) in m.exps().iter().enumerate() {
                    exps[var_map[i]] += e;
                }
                (Monomial::new(exps), c.clone())
            })
            .collect();
        target.from_terms(terms)
    }

    /// Substitute `images[i]` for variable `i`. All images must live in
    /// `target`. Exponents are assembled by repeated squaring per variable.
    pub fn substitute(&self, target: &Ring<F>, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].power(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Evaluate at a point (one field element per variable).
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.ring.nvars());
        let field = self.ring.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = field.mul(&t, &point[i]);
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Total order on polynomials of one ring, used for canonical generator
    /// sorting: by leading monomial in the active order, then term by term.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let order = self.ring.order();
        let mut i = 0;
        loop {
            match (self.terms.get(i), other.terms.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    match order.cmp(ma, mb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => i += 1,
                        other => return other,
                    }
                }
            }
        }
    }

    /// Canonical text form: terms sorted descending degrevlex (whatever the
    /// active order), coefficient then `*`, `xi^ei` factors with zero
    /// exponents omitted. Example: `1*x0^1*x1^3 + -2/3*x2^4`.
    pub fn canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let field = self.ring.field();
        let mut terms: Vec<&(Monomial, F::Elem)> = self.terms.iter().collect();
        terms.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(&b.0, &a.0));
        let rendered: Vec<String> = terms
            .iter()
            .map(|(m, c)| {
                let mut s = field.elem_to_string(c);
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        s.push_str(&format!("*x{i}^{e}"));
                    }
                }
                s
            })
            .collect();
        rendered.join(" + ")
    }

    /// Parse the canonical text form (plus harmless generalizations: `-` as a
    /// term separator, omitted coefficients or exponents, extra whitespace).
    pub fn parse(ring: &Ring<F>, input: &str) -> Result<Poly<F>, EngineError> {
        Parser {
            ring,
            bytes: input.as_bytes(),
            pos: 0,
            input,
        }
        .parse()
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser<'a, F: Field> {
    ring: &'a Ring<F>,
    bytes: &'a [u8],
    pos: usize,
    input: &'a str,
}

impl<'a, F: Field> Parser<'a, F> {
    fn parse(mut self) -> Result<Poly<F>, EngineError> {
        let mut acc = self.ring.zero();
        self.skip_ws();
        if self.pos == self.bytes.len() {
            return Err(self.err("empty polynomial"));
        }
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            let _ = self.eat(b'+');
        }
        loop {
            let term = self.parse_term()?;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
            self.skip_ws();
            if self.pos == self.bytes.len() {
                return Ok(acc);
            }
            if self.eat(b'+') {
                self.skip_ws();
                // Allow the canonical "+ -c*..." form.
                negate = self.eat(b'-');
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Err(self.err("expected `+` or `-` between terms"));
            }
        }
    }

    fn parse_term(&mut self) -> Result<Poly<F>, EngineError> {
        self.skip_ws();
        let mut acc: Option<Poly<F>> = None;
        loop {
            let factor = self.parse_factor()?;
            acc = Some(match acc {
                None => factor,
                Some(p) => p.mul(&factor),
            });
            self.skip_ws();
            if self.eat(b'*') {
                continue;
            }
            // Implicit juxtaposition is not part of the grammar; a factor must
            // be followed by *, +, -, or the end of input.
            return Ok(acc.unwrap());
        }
    }

    fn parse_factor(&mut self) -> Result<Poly<F>, EngineError> {
        self.skip_ws();
        match self.bytes.get(self.pos) {
            Some(b'x') => {
                self.pos += 1;
                let idx = self.parse_uint()? as usize;
                if idx >= self.ring.nvars() {
                    return Err(self.err(&format!(
                        "variable x{idx} out of range (ring has {} variables)",
                        self.ring.nvars()
                    )));
                }
                let mut e = 1u32;
                if self.eat(b'^') {
                    e = self.parse_uint()? as u32;
                }
                Ok(self
                    .ring
                    .monomial(Monomial::var(self.ring.nvars(), idx, e), self.ring.field().one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_bigint()?;
                let den = if self.eat(b'/') {
                    self.parse_bigint()?
                } else {
                    BigInt::from(1)
                };
                let c = self.ring.field().from_ratio(&num, &den)?;
                Ok(self.ring.constant(c))
            }
            _ => Err(self.err("expected a coefficient or a variable like x0")),
        }
    }

    fn parse_uint(&mut self) -> Result<u64, EngineError> {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| self.err("number out of range"))
    }

    fn parse_bigint(&mut self) -> Result<BigInt, EngineError> {
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| self.err("bad integer"))
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> EngineError {
        EngineError::parse(format!("{msg} at byte {} of `{}`", self.pos, self.input))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rationals};

    fn ring3() -> Ring<Rationals> {
        Ring::new(3, Rationals, MonomialOrder::DegRevLex)
    }

    fn p(r: &Ring<Rationals>, s: &str) -> Poly<Rationals> {
        Poly::parse(r, s).unwrap()
    }

    #[test]
    fn degrevlex_tie_break_matches_convention() {
        // x0·x2 vs x1²: equal degree, last nonzero entry of the difference
        // decides. The leading term must be x1².
        let r = ring3();
        let f = p(&r, "x0*x2 + x1^2");
        let lead = f.leading_term(MonomialOrder::DegRevLex).unwrap();
        assert_eq!(lead.0, Monomial::new(vec![0u32, 2, 0]));
    }

    #[test]
    fn degrevlex_is_degree_compatible() {
        let o = MonomialOrder::DegRevLex;
        let u = Monomial::new(vec![3u32, 0, 0]);
        let v = Monomial::new(vec![0u32, 1, 1]);
        assert_eq!(o.cmp(&u, &v), Ordering::Greater);
        assert_eq!(o.cmp(&Monomial::one(3), &u), Ordering::Less);
    }

    #[test]
    fn lex_order_basics() {
        let o = MonomialOrder::Lex;
        // x0 > x1^5 under lex.
        let u = Monomial::new(vec![1u32, 0]);
        let v = Monomial::new(vec![0u32, 5]);
        assert_eq!(o.cmp(&u, &v), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_leading_variables() {
        // Any monomial containing x0 beats any monomial without it.
        let o = MonomialOrder::Block { elim: 1 };
        let with_t = Monomial::new(vec![1u32, 0, 0, 0]);
        let without = Monomial::new(vec![0u32, 7, 3, 2]);
        assert_eq!(o.cmp(&with_t, &without), Ordering::Greater);
    }

    #[test]
    fn square_of_binomial() {
        let r = ring3();
        let f = p(&r, "x0 + x1");
        assert_eq!(f.power(2), p(&r, "x0^2 + 2*x0*x1 + x1^2"));
    }

    #[test]
    fn homogeneity_detection() {
        let r = ring3();
        assert!(p(&r, "x0^2 + x1*x2").is_homogeneous());
        assert!(!p(&r, "x0^2 + x1").is_homogeneous());
        assert!(r.zero().is_homogeneous());
        assert_eq!(r.zero().total_degree(), None);
    }

    #[test]
    fn canonical_string_round_trips() {
        let r = ring3();
        let f = p(&r, "x0*x1^3 + -2/3*x2^4");
        assert_eq!(f.canonical_string(), "1*x0^1*x1^3 + -2/3*x2^4");
        assert_eq!(p(&r, &f.canonical_string()), f);
        assert_eq!(r.zero().canonical_string(), "0");
        // Constant polynomials render as the bare coefficient.
        assert_eq!(r.constant(rat(-5, 3)).canonical_string(), "-5/3");
    }

    #[test]
    fn parser_accepts_minus_separators() {
        let r = ring3();
        assert_eq!(p(&r, "x0 - x1"), p(&r, "x0 + -1*x1"));
        assert_eq!(p(&r, "-x0 + x1"), p(&r, "x1 - x0"));
        assert_eq!(p(&r, "2/4*x0"), p(&r, "1/2*x0"));
    }

    #[test]
    fn parser_rejects_garbage() {
        let r = ring3();
        assert!(Poly::parse(&r, "").is_err());
        assert!(Poly::parse(&r, "x9").is_err());
        assert!(Poly::parse(&r, "x0 & x1").is_err());
        assert!(Poly::parse(&r, "1/0").is_err());
    }

    #[test]
    fn exact_division() {
        let r = ring3();
        let f = p(&r, "x0^2*x1 + x0*x1^2");
        let g = p(&r, "x0*x1");
        assert_eq!(f.divide_exact(&g), Some(p(&r, "x0 + x1")));
        assert_eq!(p(&r, "x0^2 + x1").divide_exact(&g), None);
    }

    #[test]
    fn var_power_division() {
        let r = ring3();
        let f = p(&r, "x0^2*x2^2 + x1*x2^3");
        assert_eq!(f.var_multiplicity(2), 2);
        assert_eq!(f.divide_by_var_power(2, 2), p(&r, "x0^2 + x1*x2"));
        assert_eq!(f.var_multiplicity(0), 0);
    }

    #[test]
    fn monomials_of_degree_counts() {
        let r = ring3();
        // C(d+2, 2) monomials of degree d in three variables.
        assert_eq!(r.monomials_of_degree(0).len(), 1);
        assert_eq!(r.monomials_of_degree(1).len(), 3);
        assert_eq!(r.monomials_of_degree(4).len(), 15);
    }

    #[test]
    fn eval_at_point() {
        let r = ring3();
        let f = p(&r, "x0^2 + -1*x1*x2");
        let val = f.eval(&[rat(2, 1), rat(1, 1), rat(4, 1)]);
        assert_eq!(val, rat(0, 1));
    }

    #[test]
    fn substitution_is_ring_hom() {
        let r = ring3();
        let f = p(&r, "x0*x1 + x2^2");
        let images = vec![p(&r, "x1"), p(&r, "x0"), p(&r, "x2 + x0")];
        let g = f.substitute(&r, &images);
        assert_eq!(g, p(&r, "x0*x1 + x2^2 + 2*x0*x2 + x0^2"));
    }
}
