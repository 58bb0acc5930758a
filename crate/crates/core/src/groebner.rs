//! Normal-form division, Buchberger's algorithm with pair-elimination
//! criteria, reduced Gröbner bases, and ideal membership.
//!
//! Pair selection follows the normal strategy (smallest lcm degree first, ties
//! by the lcm in the active order, then by index), which on homogeneous input
//! processes the computation degree by degree. Candidate pairs are pruned with
//! the Gebauer–Möller forms of Buchberger's two criteria. Inputs are sorted
//! canonically before processing so the (unique) reduced basis is also
//! bit-stable across runs, which the content-addressed caches rely on.
//!
//! Over ℚ every intermediate element is rescaled to primitive integer form
//! after each full reduction, and reduction steps use fraction-free cross
//! multipliers, so the hot loop works on `BigInt`-backed rationals with
//! denominator 1 throughout.

use std::cmp::Ordering;
use std::sync::RwLock;
use std::time::Instant;

use once_cell::sync::Lazy;

use crate::error::{EngineError, GbStats};
use crate::poly::{Monomial, MonomialOrder, Poly, Ring};
use crate::scalar::Field;

/// Resource guards for a single Buchberger run: fail loudly instead of
/// hanging on an accidentally huge instance.
#[derive(Clone, Copy, Debug)]
pub struct GbGuards {
    /// Maximum number of S-pairs processed.
    pub max_pairs: u64,
    /// Maximum total degree of any S-polynomial lcm or basis element.
    pub max_degree: u32,
}

impl Default for GbGuards {
    fn default() -> Self {
        GbGuards {
            max_pairs: 2_000_000,
            max_degree: 80,
        }
    }
}

static GUARDS: Lazy<RwLock<GbGuards>> = Lazy::new(|| RwLock::new(GbGuards::default()));

/// Process-wide guard configuration (the CLI sets this once at startup).
pub fn set_guards(g: GbGuards) {
    *GUARDS.write().unwrap() = g;
}

pub fn guards() -> GbGuards {
    *GUARDS.read().unwrap()
}

/// A reduced Gröbner basis: monic elements, no term of any element divisible
/// by the leading term of another, sorted ascending by leading term.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    elements: Vec<Poly<F>>,
    stats: GbStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Poly<F>] {
        &self.elements
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements
            .first()
            .is_some_and(|g| g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    /// Least leading-term degree. With a degree-compatible order on a
    /// homogeneous ideal this equals the least degree of a nonzero element.
    pub fn min_lead_degree(&self) -> Option<u32> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_monomial().map(|m| m.deg()))
            .min()
    }

    /// True when `m` is divisible by no leading term (a standard monomial).
    pub fn is_standard_monomial(&self, m: &Monomial) -> bool {
        !self
            .elements
            .iter()
            .any(|g| g.leading_monomial().is_some_and(|lt| lt.divides(m)))
    }
}

/// Remainder of multivariate division of `f` by the basis. No term of the
/// result is divisible by any leading term of `G`; `normal_form(f, G) = 0`
/// iff `f` lies in the ideal generated by `G`. Exact: since basis elements
/// are monic, no rescaling of `f` happens.
pub fn normal_form<F: Field>(f: &Poly<F>, gb: &GroebnerBasis<F>) -> Result<Poly<F>, EngineError> {
    if f.ring() != gb.ring() {
        return Err(if f.ring().order() != gb.order() {
            EngineError::OrderMismatch
        } else {
            EngineError::RingMismatch
        });
    }
    Ok(reduce(f.clone(), &gb.elements, false))
}

/// `f ∈ ideal(G)`?
pub fn member<F: Field>(f: &Poly<F>, gb: &GroebnerBasis<F>) -> Result<bool, EngineError> {
    Ok(normal_form(f, gb)?.is_zero())
}

/// Full reduction of `f` by `basis`: repeatedly rewrites the highest reducible
/// term until every term is irreducible. Reducers are scanned in basis order,
/// so the result is deterministic. With `normalize` the result is rescaled to
/// canonical primitive form (the result is then only defined up to a nonzero
/// constant, which is all Buchberger needs).
fn reduce<F: Field>(f: Poly<F>, basis: &[Poly<F>], normalize: bool) -> Poly<F> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut work = f;
    // Terms strictly above `frontier` are already irreducible; reductions only
    // touch monomials at or below it.
    let mut frontier = 0usize;
    'outer: while frontier < work.num_terms() {
        let (m, c) = {
            let t = &work.terms()[frontier];
            (t.0.clone(), t.1.clone())
        };
        for g in basis {
            let Some((glt, glc)) = g.leading() else {
                continue;
            };
            if glt.divides(&m) {
                let q = glt.div(&m).unwrap();
                let (u, v) = field.elimination_multipliers(&c, glc);
                work = work.axpy_mono(&u, &v, &q, g);
                continue 'outer;
            }
        }
        frontier += 1;
    }
    if normalize {
        work.normalize_content()
    } else {
        work
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Deterministic pair priority: lcm degree, then lcm in the active order,
/// then indices.
fn pair_less(a: &Pair, b: &Pair, order: MonomialOrder) -> bool {
    match a.lcm.deg().cmp(&b.lcm.deg()) {
        Ordering::Less => return true,
        Ordering::Greater => return false,
        Ordering::Equal => {}
    }
    match order.cmp(&a.lcm, &b.lcm) {
        Ordering::Less => return true,
        Ordering::Greater => return false,
        Ordering::Equal => {}
    }
    (a.i, a.j) < (b.i, b.j)
}

/// Buchberger's algorithm: the reduced Gröbner basis of the ideal generated
/// by `gens` in the ring's active order, with process-wide resource guards.
pub fn buchberger<F: Field>(
    ring: &Ring<F>,
    gens: &[Poly<F>],
) -> Result<GroebnerBasis<F>, EngineError> {
    buchberger_with(ring, gens, guards())
}

/// As [`buchberger`] with explicit guards.
pub fn buchberger_with<F: Field>(
    ring: &Ring<F>,
    gens: &[Poly<F>],
    guards: GbGuards,
) -> Result<GroebnerBasis<F>, EngineError> {
    let start = Instant::now();
    let order = ring.order();
    for g in gens {
        if g.ring() != ring {
            return Err(EngineError::RingMismatch);
        }
    }

    // Canonical input normalization: drop zeros, rescale, sort, dedup. This
    // makes the run (not just the final reduced basis) independent of the
    // caller's generator ordering.
    let mut basis: Vec<Poly<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.normalize_content())
        .collect();
    basis.sort_by(|a, b| a.canonical_cmp(b));
    basis.dedup_by(|a, b| a == b);

    let mut stats = GbStats::default();
    if basis.is_empty() {
        return Ok(GroebnerBasis {
            ring: ring.clone(),
            elements: Vec::new(),
            stats,
        });
    }

    let mut pairs: Vec<Pair> = Vec::new();
    let seed: Vec<Poly<F>> = basis.drain(..).collect();
    let mut basis: Vec<Poly<F>> = Vec::with_capacity(seed.len());
    for h in seed {
        add_element(&mut basis, &mut pairs, h);
    }
    for g in &basis {
        stats.max_degree_seen = stats
            .max_degree_seen
            .max(g.total_degree().unwrap_or(0));
    }

    while !pairs.is_empty() {
        if stats.pairs_processed >= guards.max_pairs {
            stats.wall_ms = start.elapsed().as_millis() as u64;
            stats.basis_size = basis.len();
            return Err(EngineError::Resource {
                reason: format!("S-pair limit {} reached", guards.max_pairs),
                stats,
            });
        }
        // Normal selection strategy: extract the minimal pair.
        let mut best = 0;
        for k in 1..pairs.len() {
            if pair_less(&pairs[k], &pairs[best], order) {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        stats.pairs_processed += 1;
        stats.max_degree_seen = stats.max_degree_seen.max(pair.lcm.deg());
        if pair.lcm.deg() > guards.max_degree {
            stats.wall_ms = start.elapsed().as_millis() as u64;
            stats.basis_size = basis.len();
            return Err(EngineError::Resource {
                reason: format!(
                    "S-pair lcm degree {} exceeds guard {}",
                    pair.lcm.deg(),
                    guards.max_degree
                ),
                stats,
            });
        }

        let s = s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm);
        let r = reduce(s, &basis, true);
        if r.is_zero() {
            stats.reductions_to_zero += 1;
            continue;
        }
        let rdeg = r.total_degree().unwrap_or(0);
        stats.max_degree_seen = stats.max_degree_seen.max(rdeg);
        if rdeg > guards.max_degree {
            stats.wall_ms = start.elapsed().as_millis() as u64;
            stats.basis_size = basis.len();
            return Err(EngineError::Resource {
                reason: format!("element degree {rdeg} exceeds guard {}", guards.max_degree),
                stats,
            });
        }
        add_element(&mut basis, &mut pairs, r);
    }

    let elements = reduce_basis(ring, basis)?;
    stats.basis_size = elements.len();
    stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        elements,
        stats,
    })
}

fn s_polynomial<F: Field>(f: &Poly<F>, g: &Poly<F>, lcm: &Monomial) -> Poly<F> {
    let field = f.ring().field().clone();
    let (flt, flc) = f.leading().unwrap();
    let (glt, glc) = g.leading().unwrap();
    let qf = flt.div(lcm).unwrap();
    let qg = glt.div(lcm).unwrap();
    let (u, v) = field.elimination_multipliers(flc, glc);
    f.mul_monomial(&qf, &field.one()).axpy_mono(&u, &v, &qg, g)
}

/// Append `h` to the basis and refresh the pair set with the Gebauer–Möller
/// criteria: prune new candidates whose lcm is properly divided by another
/// candidate's lcm (M), keep one candidate per lcm value (F), drop whole lcm
/// classes witnessed coprime (Buchberger's first criterion), and drop old
/// pairs whose lcm is properly covered by the new leading term (B).
fn add_element<F: Field>(basis: &mut Vec<Poly<F>>, pairs: &mut Vec<Pair>, h: Poly<F>) {
    let t = basis.len();
    let hlt = h.leading_monomial().expect("nonzero element").clone();

    let cand: Vec<Pair> = basis
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let lcm = g.leading_monomial().unwrap().lcm(&hlt);
            Pair { i, j: t, lcm }
        })
        .collect();

    // M criterion: drop (i,t) when another candidate's lcm properly divides
    // its lcm.
    let survives_m: Vec<bool> = cand
        .iter()
        .map(|p| {
            !cand
                .iter()
                .any(|q| q.lcm != p.lcm && q.lcm.divides(&p.lcm))
        })
        .collect();

    // F criterion: one representative per lcm value (smallest index), and if
    // any member of the class has coprime leading terms, drop the class.
    let mut kept: Vec<Pair> = Vec::new();
    'cand: for (k, p) in cand.iter().enumerate() {
        if !survives_m[k] {
            continue;
        }
        let class_coprime = cand.iter().enumerate().any(|(k2, q)| {
            survives_m[k2]
                && q.lcm == p.lcm
                && basis[q.i].leading_monomial().unwrap().coprime(&hlt)
        });
        if class_coprime {
            continue;
        }
        for (k2, q) in cand.iter().enumerate() {
            if survives_m[k2] && q.lcm == p.lcm && k2 < k {
                continue 'cand; // an earlier representative of this class survives
            }
        }
        kept.push(Pair {
            i: p.i,
            j: p.j,
            lcm: p.lcm.clone(),
        });
    }

    // B criterion on old pairs.
    pairs.retain(|p| {
        let li = basis[p.i].leading_monomial().unwrap().lcm(&hlt);
        let lj = basis[p.j].leading_monomial().unwrap().lcm(&hlt);
        !(hlt.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
    });

    pairs.extend(kept);
    basis.push(h);
}

/// Minimalize and tail-reduce into the unique reduced basis: monic elements,
/// pairwise non-dividing leading terms, fully reduced tails, sorted ascending
/// by leading term.
fn reduce_basis<F: Field>(
    ring: &Ring<F>,
    mut basis: Vec<Poly<F>>,
) -> Result<Vec<Poly<F>>, EngineError> {
    let order = ring.order();
    basis.sort_by(|a, b| {
        order
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| a.canonical_cmp(b))
    });
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for g in basis {
        let lt = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lt))
        {
            minimal.push(g);
        }
    }
    let monic: Vec<Poly<F>> = minimal
        .iter()
        .map(|g| g.monic())
        .collect::<Result<_, _>>()?;
    // One pass of tail reduction suffices: leading terms are pairwise
    // non-dividing, and rewriting one tail never re-enables a reduction in
    // another element.
    let mut reduced: Vec<Poly<F>> = Vec::with_capacity(monic.len());
    for (i, g) in monic.iter().enumerate() {
        let others: Vec<Poly<F>> = monic
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(reduce(g.clone(), &others, false));
    }
    reduced.sort_by(|a, b| {
        order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    Ok(reduced)
}

/// Definitive (slow) Gröbner check used by tests: every S-polynomial of the
/// basis reduces to zero, plus the reduced-basis shape invariants.
pub fn verify_reduced_groebner<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    let els = gb.elements();
    let field = gb.ring().field().clone();
    for (i, g) in els.iter().enumerate() {
        let Some((glt, glc)) = g.leading() else {
            return false;
        };
        if !field.is_one(glc) {
            return false;
        }
        for (j, h) in els.iter().enumerate() {
            if i == j {
                continue;
            }
            let hlt = h.leading_monomial().unwrap();
            // No term of g may be divisible by the leading term of h.
            if g.terms().iter().any(|(m, _)| hlt.divides(m)) {
                return false;
            }
            if i < j {
                let lcm = glt.lcm(hlt);
                let s = s_polynomial(g, h, &lcm);
                if !reduce(s, els, true).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rationals;

    fn ring(n: usize) -> Ring<Rationals> {
        Ring::new(n, Rationals, MonomialOrder::DegRevLex)
    }

    fn p(r: &Ring<Rationals>, s: &str) -> Poly<Rationals> {
        Poly::parse(r, s).unwrap()
    }

    #[test]
    fn basis_of_coordinate_ideal_is_itself() {
        let r = ring(2);
        let gb = buchberger(&r, &[p(&r, "x0"), p(&r, "x1")]).unwrap();
        // Ascending by leading term: x1 < x0 under degrevlex.
        assert_eq!(gb.elements(), &[p(&r, "x1"), p(&r, "x0")]);
        assert!(verify_reduced_groebner(&gb));
    }

    #[test]
    fn sum_and_difference_generate_coordinates() {
        let r = ring(2);
        let gb = buchberger(&r, &[p(&r, "x0 - x1"), p(&r, "x0 + x1")]).unwrap();
        assert_eq!(gb.elements(), &[p(&r, "x1"), p(&r, "x0")]);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(2);
        let gb = buchberger(&r, &[p(&r, "x0")]).unwrap();
        assert_eq!(
            normal_form(&p(&r, "x0^2 + x0*x1"), &gb).unwrap(),
            r.zero()
        );
        assert_eq!(normal_form(&p(&r, "x1^2"), &gb).unwrap(), p(&r, "x1^2"));

        let gb2 = buchberger(&r, &[p(&r, "x0 - x1")]).unwrap();
        assert_eq!(
            normal_form(&p(&r, "x0*x1"), &gb2).unwrap(),
            p(&r, "x1^2")
        );
    }

    #[test]
    fn membership() {
        let r = ring(1);
        let gb = buchberger(&r, &[p(&r, "x0")]).unwrap();
        assert!(member(&p(&r, "x0^2"), &gb).unwrap());
        assert!(!member(&p(&r, "x0 + 1"), &gb).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent() {
        let r = ring(3);
        let gb = buchberger(&r, &[p(&r, "x0^2 - x1*x2"), p(&r, "x1^3 - x2^3")]).unwrap();
        let f = p(&r, "x0^4 + x0*x1*x2 + x2^3");
        let n1 = normal_form(&f, &gb).unwrap();
        let n2 = normal_form(&n1, &gb).unwrap();
        assert_eq!(n1, n2);
    }

    #[test]
    fn permuting_generators_gives_identical_basis() {
        let r = ring(3);
        let gens = vec![
            p(&r, "x0*x1 - x2^2"),
            p(&r, "x0^2 - x1*x2"),
            p(&r, "x1^2 - x0*x2"),
        ];
        let gb1 = buchberger(&r, &gens).unwrap();
        let mut permuted = gens.clone();
        permuted.rotate_left(1);
        permuted.swap(0, 1);
        let gb2 = buchberger(&r, &permuted).unwrap();
        assert_eq!(gb1.elements(), gb2.elements());
        assert!(verify_reduced_groebner(&gb1));
    }

    #[test]
    fn unit_ideal_reduces_to_one() {
        let r = ring(2);
        let gb = buchberger(&r, &[p(&r, "x0"), p(&r, "x0 + 1")]).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.elements().len(), 1);
        assert_eq!(gb.elements()[0], r.one());
    }

    #[test]
    fn zero_generators_dropped() {
        let r = ring(2);
        let gb = buchberger(&r, &[r.zero(), p(&r, "x0")]).unwrap();
        assert_eq!(gb.elements(), &[p(&r, "x0")]);
        let empty = buchberger(&r, &[r.zero()]).unwrap();
        assert!(empty.is_zero_ideal());
    }

    #[test]
    fn pair_guard_trips() {
        let r = ring(3);
        let gens = vec![
            p(&r, "x0^2 - x1*x2"),
            p(&r, "x1^2 - x0*x2"),
            p(&r, "x2^2 - x0*x1"),
        ];
        let err = buchberger_with(
            &r,
            &gens,
            GbGuards {
                max_pairs: 1,
                max_degree: 80,
            },
        )
        .unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn degree_guard_trips() {
        let r = ring(2);
        let gens = vec![p(&r, "x0^3 - x1^2"), p(&r, "x0^2*x1 - x1^3 + x0")];
        let err = buchberger_with(
            &r,
            &gens,
            GbGuards {
                max_pairs: 1000,
                max_degree: 3,
            },
        )
        .unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn twisted_cubic_lex_elimination() {
        // Kernel of t ↦ (t, t², t³) via lex on k[x0..x2]: contains x1 - x0².
        let r = Ring::new(3, Rationals, MonomialOrder::Lex);
        let gb = buchberger(&r, &[p(&r, "x1 - x0^2"), p(&r, "x2 - x0^3")]).unwrap();
        assert!(verify_reduced_groebner(&gb));
        assert!(member(&p(&r, "x1^3 - x2^2"), &gb).unwrap());
    }

    #[test]
    fn prime_field_basis() {
        use crate::scalar::PrimeField;
        let f = PrimeField::new(7).unwrap();
        let r = Ring::new(2, f, MonomialOrder::DegRevLex);
        let a = Poly::parse(&r, "x0^2 + 3*x1^2").unwrap();
        let b = Poly::parse(&r, "x0*x1 + 5*x1^2").unwrap();
        let gb = buchberger(&r, &[a, b]).unwrap();
        assert!(verify_reduced_groebner(&gb));
    }
}
