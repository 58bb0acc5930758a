//! The `Ideal` type and the ideal-level algebra every containment statement
//! quantifies over: sum, product, power, intersection, quotient, saturation,
//! containment, α, ω, minimal generator counts, and the Hilbert function.
//!
//! An ideal owns a canonically sorted generator list and lazily caches one
//! reduced Gröbner basis per monomial order (write-once per order; concurrent
//! duplicate computation is harmless because the reduced basis is unique and
//! bit-stable). Provenance travels with the ideal as an [`IdealKind`], which
//! the symbolic-power machinery uses to decide whether its saturation
//! shortcut is valid and to pick saturating linear forms.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::OnceCell;
use sha2::{Digest, Sha256};

use crate::error::EngineError;
use crate::groebner::{buchberger, normal_form, GroebnerBasis};
use crate::poly::{MonomialOrder, Poly, Ring};
use crate::scalar::{binomial, Field};

/// Rational (fat-)point data attached to a configuration ideal: projective
/// coordinates (length N+1 each) and one multiplicity per point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet<F: Field> {
    pub points: Vec<Vec<F::Elem>>,
    pub multiplicities: Vec<u32>,
}

/// What the engine knows about where an ideal came from. Symbolic powers are
/// only defined here for kinds where saturating the ordinary power is provably
/// the right computation.
#[derive(Clone, Debug)]
pub enum IdealKind<F: Field> {
    /// No structural knowledge; symbolic powers are refused.
    General,
    /// A finite set of rational points with multiplicities.
    Points(PointSet<F>),
    /// The Fermat configuration ideal (x(yⁿ−zⁿ), y(zⁿ−xⁿ), z(xⁿ−yⁿ)); its
    /// points need n-th roots of unity, so they are generally not available
    /// over the coefficient field.
    Fermat { n: u32 },
    /// The prime of the affine monomial curve (t^a, t^b, t^c) in 3 variables.
    MonomialCurve { a: u32, b: u32, c: u32 },
}

struct IdealCaches<F: Field> {
    gb: Mutex<BTreeMap<String, Arc<GroebnerBasis<F>>>>,
    hash: OnceCell<String>,
    /// Memoized symbolic powers of this ideal, keyed by exponent.
    sympow: Mutex<BTreeMap<u32, Ideal<F>>>,
    /// Saturating linear form coefficients chosen once per base ideal.
    sat_form: OnceCell<Option<Vec<i64>>>,
}

impl<F: Field> Default for IdealCaches<F> {
    fn default() -> Self {
        IdealCaches {
            gb: Mutex::new(BTreeMap::new()),
            hash: OnceCell::new(),
            sympow: Mutex::new(BTreeMap::new()),
            sat_form: OnceCell::new(),
        }
    }
}

/// A finitely generated ideal with lazily cached reduced Gröbner bases.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Poly<F>>,
    homogeneous: bool,
    kind: IdealKind<F>,
    caches: Arc<IdealCaches<F>>,
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal")
            .field("nvars", &self.ring.nvars())
            .field("gens", &self.canonical_text())
            .finish()
    }
}

impl<F: Field> Ideal<F> {
    /// Build an ideal from generators: zeros dropped, each generator rescaled
    /// to canonical form, the list sorted and deduplicated.
    pub fn new(ring: &Ring<F>, gens: Vec<Poly<F>>) -> Result<Self, EngineError> {
        for g in &gens {
            if g.ring() != ring {
                return Err(EngineError::RingMismatch);
            }
        }
        let mut gens: Vec<Poly<F>> = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.normalize_content())
            .collect();
        gens.sort_by(|a, b| a.canonical_cmp(b));
        gens.dedup_by(|a, b| a == b);
        let homogeneous = gens.iter().all(|g| g.is_homogeneous());
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            homogeneous,
            kind: IdealKind::General,
            caches: Arc::new(IdealCaches::default()),
        })
    }

    pub fn with_kind(mut self, kind: IdealKind<F>) -> Self {
        self.kind = kind;
        self
    }

    /// The unit ideal (1).
    pub fn unit(ring: &Ring<F>) -> Self {
        Ideal::new(ring, vec![ring.one()]).unwrap()
    }

    /// The irrelevant maximal ideal (x0, …, xN).
    pub fn irrelevant(ring: &Ring<F>) -> Self {
        let gens = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        Ideal::new(ring, gens).unwrap()
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn kind(&self) -> &IdealKind<F> {
        &self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_unit(&self) -> Result<bool, EngineError> {
        Ok(self.gb()?.is_unit_ideal())
    }

    /// Canonical text form: one generator per line in canonical order.
    pub fn canonical_text(&self) -> String {
        self.gens
            .iter()
            .map(|g| g.canonical_string())
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Content digest of the canonical form; the key used by result caches.
    pub fn content_hash(&self) -> &str {
        self.caches.hash.get_or_init(|| {
            let mut h = Sha256::new();
            h.update(self.ring.field().spec_string().as_bytes());
            h.update(b"|");
            h.update(self.ring.nvars().to_string().as_bytes());
            h.update(b"|");
            h.update(self.canonical_text().as_bytes());
            hex_string(&h.finalize())
        })
    }

    /// The reduced Gröbner basis in the ring's active order (cached).
    pub fn gb(&self) -> Result<Arc<GroebnerBasis<F>>, EngineError> {
        self.gb_for(self.ring.order())
    }

    /// The reduced Gröbner basis in an arbitrary order (cached per order).
    pub fn gb_for(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis<F>>, EngineError> {
        let key = order.tag();
        if let Some(gb) = self.caches.gb.lock().unwrap().get(&key) {
            return Ok(gb.clone());
        }
        // Computed outside the lock: concurrent duplicate work is allowed,
        // first write wins, results are identical by determinism.
        let ring = self.ring.with_order(order);
        let gens: Vec<Poly<F>> = self
            .gens
            .iter()
            .map(|g| g.embed(&ring, &identity_map(self.ring.nvars())))
            .collect();
        let gb = Arc::new(buchberger(&ring, &gens)?);
        let mut cache = self.caches.gb.lock().unwrap();
        Ok(cache.entry(key).or_insert(gb).clone())
    }

    /// Hand the ideal a basis computed elsewhere (used when a construction
    /// already ends with the reduced basis in hand).
    pub(crate) fn prime_gb_cache(&self, gb: Arc<GroebnerBasis<F>>) {
        let key = gb.order().tag();
        self.caches
            .gb
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(gb);
    }

    pub(crate) fn memoized_sympow(&self, m: u32) -> Option<Ideal<F>> {
        self.caches.sympow.lock().unwrap().get(&m).cloned()
    }

    pub(crate) fn memoize_sympow(&self, m: u32, ideal: Ideal<F>) {
        self.caches
            .sympow
            .lock()
            .unwrap()
            .entry(m)
            .or_insert(ideal);
    }

    pub(crate) fn sat_form_cache(&self) -> &OnceCell<Option<Vec<i64>>> {
        &self.caches.sat_form
    }

    fn check_same_ring(&self, other: &Self) -> Result<(), EngineError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(EngineError::RingMismatch)
        }
    }

    fn debug_check_homogeneous(&self) {
        debug_assert!(
            !self.homogeneous || self.gens.iter().all(|g| g.is_homogeneous()),
            "homogeneity flag out of sync"
        );
    }

    // -----------------------------------------------------------------------
    // Generator-level algebra
    // -----------------------------------------------------------------------

    pub fn sum(&self, other: &Self) -> Result<Self, EngineError> {
        self.check_same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let out = Ideal::new(&self.ring, gens)?;
        out.debug_check_homogeneous();
        Ok(out)
    }

    pub fn product(&self, other: &Self) -> Result<Self, EngineError> {
        self.check_same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g));
            }
        }
        let out = Ideal::new(&self.ring, gens)?;
        out.debug_check_homogeneous();
        Ok(out)
    }

    /// `I^k`, with `I^0 = (1)` by convention.
    pub fn power(&self, k: u32) -> Result<Self, EngineError> {
        if k == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    // -----------------------------------------------------------------------
    // Elimination-backed operations
    // -----------------------------------------------------------------------

    /// `I ∩ J` via one auxiliary variable: eliminate `t` from `t·I + (1−t)·J`
    /// with a block order putting `t` first. The result's generators are the
    /// reduced degrevlex basis of the intersection.
    pub fn intersect(&self, other: &Self) -> Result<Self, EngineError> {
        self.check_same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ideal::new(&self.ring, vec![]);
        }
        let n = self.ring.nvars();
        let ext = Ring::new(n + 1, self.ring.field().clone(), MonomialOrder::Block { elim: 1 });
        let shift: Vec<usize> = (1..=n).collect();
        let t = ext.var(0);
        let one_minus_t = ext.one().sub(&t);
        let mut gens_ext = Vec::with_capacity(self.gens.len() + other.gens.len());
        for f in &self.gens {
            gens_ext.push(t.mul(&f.embed(&ext, &shift)));
        }
        for g in &other.gens {
            gens_ext.push(one_minus_t.mul(&g.embed(&ext, &shift)));
        }
        let gb = buchberger(&ext, &gens_ext)?;
        // With the elimination order, a t-free leading term forces a t-free
        // element, and those elements form a basis of the intersection.
        let projected: Vec<Poly<F>> = gb
            .elements()
            .iter()
            .filter(|g| g.leading_monomial().is_some_and(|m| m.exp(0) == 0))
            .map(|g| {
                debug_assert!(g.terms().iter().all(|(m, _)| m.exp(0) == 0));
                project_drop_first(g, &self.ring)
            })
            .collect();
        // Re-canonicalize in the home ring; for homogeneous inputs this also
        // restores homogeneous generators (the reduced basis of a homogeneous
        // ideal is homogeneous).
        let target_ring = &self.ring;
        let home_gb = buchberger(target_ring, &projected)?;
        let out = Ideal::new(target_ring, home_gb.elements().to_vec())?;
        out.prime_gb_cache(Arc::new(home_gb));
        out.debug_check_homogeneous();
        Ok(out)
    }

    /// `(I : f)`, computed as `(I ∩ (f))` with every generator divided by `f`.
    pub fn quotient(&self, f: &Poly<F>) -> Result<Self, EngineError> {
        if f.is_zero() {
            return Err(EngineError::parse("quotient by the zero polynomial"));
        }
        if f.ring() != &self.ring {
            return Err(EngineError::RingMismatch);
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| {
                g.divide_exact(f).ok_or_else(|| {
                    EngineError::invariant(
                        "intersection with (f) produced an element not divisible by f",
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `(I : J) = ∩_j (I : g_j)`.
    pub fn quotient_ideal(&self, other: &Self) -> Result<Self, EngineError> {
        self.check_same_ring(other)?;
        if other.is_zero() {
            return Err(EngineError::parse("quotient by the zero ideal"));
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let q = self.quotient(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersect(&q)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// `(I : J^∞)` by iterating the ideal quotient until the chain stabilizes
    /// (equality of reduced bases). Returns the stable ideal and the number
    /// of quotient rounds performed.
    pub fn saturate(&self, other: &Self) -> Result<(Self, usize), EngineError> {
        let mut current = self.clone();
        let mut iterations = 0usize;
        loop {
            let next = current.quotient_ideal(other)?;
            iterations += 1;
            if next.equals(&current)? {
                return Ok((next, iterations));
            }
            current = next;
        }
    }

    // -----------------------------------------------------------------------
    // Membership and comparisons
    // -----------------------------------------------------------------------

    /// Is `other ⊆ self`? Checked generator by generator with normal forms.
    pub fn contains(&self, other: &Self) -> Result<bool, EngineError> {
        self.check_same_ring(other)?;
        let gb = self.gb()?;
        for g in &other.gens {
            if !normal_form(g, &gb)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First generator of `other` outside `self`, with its nonzero normal
    /// form, if the containment fails.
    pub fn first_missing_generator(
        &self,
        other: &Self,
    ) -> Result<Option<(Poly<F>, Poly<F>)>, EngineError> {
        self.check_same_ring(other)?;
        let gb = self.gb()?;
        for g in &other.gens {
            let nf = normal_form(g, &gb)?;
            if !nf.is_zero() {
                return Ok(Some((g.clone(), nf)));
            }
        }
        Ok(None)
    }

    pub fn contains_poly(&self, f: &Poly<F>) -> Result<bool, EngineError> {
        if f.ring() != &self.ring {
            return Err(EngineError::RingMismatch);
        }
        let gb = self.gb()?;
        Ok(normal_form(f, &gb)?.is_zero())
    }

    /// Ideal equality via identical reduced bases.
    pub fn equals(&self, other: &Self) -> Result<bool, EngineError> {
        self.check_same_ring(other)?;
        if self.gens == other.gens {
            return Ok(true);
        }
        Ok(self.gb()?.elements() == other.gb()?.elements())
    }

    // -----------------------------------------------------------------------
    // Numerical invariants
    // -----------------------------------------------------------------------

    /// α(I): least degree of a nonzero element. For a homogeneous ideal every
    /// generating set attains it, and with a degree-compatible order it equals
    /// the least leading-term degree of the reduced basis (asserted in debug
    /// builds when that basis is already cached).
    pub fn alpha(&self) -> Result<u32, EngineError> {
        if self.is_zero() {
            return Err(EngineError::ZeroIdeal);
        }
        if !self.homogeneous {
            return Err(EngineError::NotHomogeneous(
                "alpha needs a homogeneous ideal".to_string(),
            ));
        }
        let a = self
            .gens
            .iter()
            .filter_map(|g| g.total_degree())
            .min()
            .expect("nonzero ideal has a generator");
        #[cfg(debug_assertions)]
        {
            if let Some(gb) = self.caches.gb.lock().unwrap().get(&self.ring.order().tag()) {
                debug_assert_eq!(gb.min_lead_degree(), Some(a));
            }
        }
        Ok(a)
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().filter_map(|g| g.total_degree()).max()
    }

    /// α, ω, and the count of new minimal generators per degree, by exact
    /// linear algebra on monomial bases. The search is bounded by the largest
    /// degree in the supplied generating set (minimal generators of a
    /// homogeneous ideal never exceed it).
    pub fn degree_profile(&self) -> Result<DegreeProfile, EngineError> {
        if self.is_zero() {
            return Err(EngineError::ZeroIdeal);
        }
        if !self.homogeneous {
            return Err(EngineError::NotHomogeneous(
                "degree profiles need a homogeneous ideal".to_string(),
            ));
        }
        let alpha = self.alpha()?;
        let maxd = self.max_generator_degree().unwrap();

        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        let degrees: std::collections::BTreeSet<u32> = self
            .gens
            .iter()
            .filter_map(|g| g.total_degree())
            .collect();
        if degrees.len() == 1 {
            // Equigenerated: every minimal generator lives in the single
            // generator degree and 𝔪·I starts strictly above it, so the count
            // is the rank of the generators as vectors of coefficients.
            let d = *degrees.first().unwrap();
            let count = rank_in_degree(&self.ring, &self.gens, d);
            counts.insert(d, count);
        } else {
            let gb = self.gb()?;
            let m_i = Ideal::irrelevant(&self.ring).product(self)?;
            let gb_mi = m_i.gb()?;
            for d in alpha..=maxd {
                let monos = self.ring.monomials_of_degree(d);
                let dim_i = monos
                    .iter()
                    .filter(|m| !gb.is_standard_monomial(m))
                    .count();
                let dim_mi = monos
                    .iter()
                    .filter(|m| !gb_mi.is_standard_monomial(m))
                    .count();
                debug_assert!(dim_i >= dim_mi);
                if dim_i > dim_mi {
                    counts.insert(d, dim_i - dim_mi);
                }
            }
        }
        let omega = *counts.keys().last().ok_or_else(|| {
            EngineError::invariant("nonzero ideal with no minimal generators")
        })?;
        debug_assert!(alpha <= omega);
        Ok(DegreeProfile {
            alpha,
            omega,
            new_minimal_generator_counts: counts,
        })
    }

    /// ω(I): largest degree of a minimal generator.
    pub fn omega(&self) -> Result<u32, EngineError> {
        Ok(self.degree_profile()?.omega)
    }

    /// Hilbert function of R/I at degree `t`: the number of degree-`t`
    /// standard monomials of the degrevlex initial ideal.
    pub fn hilbert_function(&self, t: u32) -> Result<u64, EngineError> {
        if !self.homogeneous {
            return Err(EngineError::NotHomogeneous(
                "Hilbert functions need a homogeneous ideal".to_string(),
            ));
        }
        let gb = self.gb_for(MonomialOrder::DegRevLex)?;
        let count = self
            .ring
            .with_order(MonomialOrder::DegRevLex)
            .monomials_of_degree(t)
            .iter()
            .filter(|m| gb.is_standard_monomial(m))
            .count();
        Ok(count as u64)
    }
}

/// α, ω, and new-minimal-generator counts of a homogeneous ideal.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeProfile {
    pub alpha: u32,
    pub omega: u32,
    pub new_minimal_generator_counts: BTreeMap<u32, usize>,
}

/// Rank of the degree-`d` slices of `polys` as vectors over the monomial
/// basis, by exact Gaussian elimination.
pub(crate) fn rank_in_degree<F: Field>(ring: &Ring<F>, polys: &[Poly<F>], d: u32) -> usize {
    let monos = ring.monomials_of_degree(d);
    let index: std::collections::HashMap<_, _> =
        monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let field = ring.field().clone();
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for p in polys {
        if p.total_degree() != Some(d) {
            continue;
        }
        let mut row = vec![field.zero(); monos.len()];
        for (m, c) in p.terms() {
            row[index[m]] = c.clone();
        }
        rows.push(row);
    }
    let mut rank = 0usize;
    let ncols = monos.len();
    let mut pivot_col = 0usize;
    while pivot_col < ncols && rank < rows.len() {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][pivot_col]))
        else {
            pivot_col += 1;
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = field.inv(&rows[rank][pivot_col]).expect("nonzero pivot");
        for c in pivot_col..ncols {
            rows[rank][c] = field.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r != rank && !field.is_zero(&rows[r][pivot_col]) {
                let factor = rows[r][pivot_col].clone();
                for c in pivot_col..ncols {
                    let sub = field.mul(&factor, &rows[rank][c]);
                    rows[r][c] = field.sub(&rows[r][c], &sub);
                }
            }
        }
        rank += 1;
        pivot_col += 1;
    }
    rank
}

fn identity_map(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Project a t-free polynomial from the extended ring (aux variable first)
/// back to the home ring.
fn project_drop_first<F: Field>(g: &Poly<F>, home: &Ring<F>) -> Poly<F> {
    let terms = g
        .terms()
        .iter()
        .map(|(m, c)| {
            debug_assert_eq!(m.exp(0), 0);
            (
                crate::poly::Monomial::new(m.exps()[1..].to_vec()),
                c.clone(),
            )
        })
        .collect();
    home.from_terms(terms)
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Number of degree-`d` monomials in `nvars` variables: C(d+nvars−1, nvars−1).
pub fn monomial_count(nvars: usize, d: u32) -> num::BigInt {
    binomial(d as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;
    use crate::scalar::Rationals;

    fn ring(n: usize) -> Ring<Rationals> {
        Ring::new(n, Rationals, MonomialOrder::DegRevLex)
    }

    fn ideal(r: &Ring<Rationals>, gens: &[&str]) -> Ideal<Rationals> {
        let polys = gens.iter().map(|s| Poly::parse(r, s).unwrap()).collect();
        Ideal::new(r, polys).unwrap()
    }

    #[test]
    fn product_and_power_examples() {
        let r = ring(2);
        let xy = ideal(&r, &["x0"]).product(&ideal(&r, &["x1"])).unwrap();
        assert!(xy.equals(&ideal(&r, &["x0*x1"])).unwrap());

        let sq = ideal(&r, &["x0", "x1"]).power(2).unwrap();
        assert!(sq.equals(&ideal(&r, &["x0^2", "x0*x1", "x1^2"])).unwrap());

        let unit = ideal(&r, &["x0"]).power(0).unwrap();
        assert!(unit.is_unit().unwrap());
    }

    #[test]
    fn intersection_examples() {
        let r = ring(3);
        let a = ideal(&r, &["x0", "x1"]);
        let b = ideal(&r, &["x0", "x2"]);
        let meet = a.intersect(&b).unwrap();
        assert!(meet.equals(&ideal(&r, &["x0", "x1*x2"])).unwrap());

        let x = ideal(&r, &["x0"]);
        assert!(x.intersect(&x).unwrap().equals(&x).unwrap());

        // Coordinate points [1:0:0] and [0:1:0] of the projective plane.
        let p1 = ideal(&r, &["x1", "x2"]);
        let p2 = ideal(&r, &["x0", "x2"]);
        let both = p1.intersect(&p2).unwrap();
        assert!(both.equals(&ideal(&r, &["x2", "x0*x1"])).unwrap());
    }

    #[test]
    fn intersection_contains_product_and_sits_inside_factors() {
        let r = ring(3);
        let a = ideal(&r, &["x0^2 - x1*x2", "x1"]);
        let b = ideal(&r, &["x0", "x2^2"]);
        let meet = a.intersect(&b).unwrap();
        assert!(a.contains(&meet).unwrap());
        assert!(b.contains(&meet).unwrap());
        assert!(meet.contains(&a.product(&b).unwrap()).unwrap());
    }

    #[test]
    fn quotient_examples() {
        let r = ring(2);
        let x = Poly::parse(&r, "x0").unwrap();
        let q = ideal(&r, &["x0^2"]).quotient(&x).unwrap();
        assert!(q.equals(&ideal(&r, &["x0"])).unwrap());

        let q2 = ideal(&r, &["x0*x1"])
            .quotient_ideal(&ideal(&r, &["x0"]))
            .unwrap();
        assert!(q2.equals(&ideal(&r, &["x1"])).unwrap());
    }

    #[test]
    fn quotient_of_saturated_ideal_is_stable() {
        let r = ring(3);
        let i = ideal(&r, &["x0", "x1*x2"]);
        let m = Ideal::irrelevant(&r);
        let q = i.quotient_ideal(&m).unwrap();
        assert!(q.equals(&i).unwrap());
    }

    #[test]
    fn saturation_strips_irrelevant_component() {
        let r = ring(2);
        let i = ideal(&r, &["x0^2*x1", "x0*x1^2"]);
        let m = Ideal::irrelevant(&r);
        let (sat, iters) = i.saturate(&m).unwrap();
        assert!(sat.equals(&ideal(&r, &["x0*x1"])).unwrap());
        assert!(iters >= 2, "chain must take at least one proper step");

        let principal = ideal(&r, &["x0"]);
        let (sat2, iters2) = principal.saturate(&m).unwrap();
        assert!(sat2.equals(&principal).unwrap());
        assert_eq!(iters2, 1);
    }

    #[test]
    fn containment_examples() {
        let r = ring(1);
        let x = ideal(&r, &["x0"]);
        let x2 = ideal(&r, &["x0^2"]);
        assert!(x.contains(&x2).unwrap());
        assert!(!x2.contains(&x).unwrap());
        assert!(Ideal::unit(&r).contains(&x).unwrap());
        let witness = x2.first_missing_generator(&x).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn alpha_examples() {
        let r = ring(2);
        assert_eq!(ideal(&r, &["x0^2", "x0*x1"]).alpha().unwrap(), 2);
        assert_eq!(Ideal::unit(&r).alpha().unwrap(), 0);
        assert!(Ideal::new(&r, vec![]).unwrap().alpha().is_err());
    }

    #[test]
    fn degree_profile_examples() {
        let r = ring(2);
        let square = ideal(&r, &["x0^2", "x0*x1", "x1^2"]);
        let prof = square.degree_profile().unwrap();
        assert_eq!(prof.alpha, 2);
        assert_eq!(prof.omega, 2);
        assert_eq!(prof.new_minimal_generator_counts[&2], 3);

        // x0^3 is not a minimal generator.
        let padded = ideal(&r, &["x0^2", "x0^3"]);
        let prof2 = padded.degree_profile().unwrap();
        assert_eq!((prof2.alpha, prof2.omega), (2, 2));
        assert_eq!(
            prof2.new_minimal_generator_counts,
            BTreeMap::from([(2, 1)])
        );
    }

    #[test]
    fn hilbert_function_of_irrelevant_ideal() {
        let r = ring(3);
        let m = Ideal::irrelevant(&r);
        assert_eq!(m.hilbert_function(0).unwrap(), 1);
        for t in 1..5 {
            assert_eq!(m.hilbert_function(t).unwrap(), 0);
        }
    }

    #[test]
    fn hilbert_function_of_zero_ideal_counts_all_monomials() {
        let r = ring(3);
        let z = Ideal::new(&r, vec![]).unwrap();
        assert_eq!(z.hilbert_function(4).unwrap(), 15);
    }

    #[test]
    fn content_hash_is_stable_under_generator_permutation() {
        let r = ring(3);
        let a = ideal(&r, &["x0 - x1", "x1^2 - x2^2"]);
        let b = ideal(&r, &["x1^2 - x2^2", "x0 - x1"]);
        assert_eq!(a.content_hash(), b.content_hash());
    }
}
