//! Builders for every ideal family the engine works with: rational point
//! sets (seeded-random points stand in for "general" position), fat points,
//! star configurations, the Fermat configurations, singular loci of rank-3
//! hyperplane arrangements, and monomial space curves.
//!
//! Builders are pure: randomness enters only through an explicit seed, and
//! every produced ideal carries the provenance tag ([`IdealKind`]) that the
//! symbolic-power machinery relies on.

use num::BigInt;

use crate::error::EngineError;
use crate::ideal::{rank_in_degree, Ideal, IdealKind, PointSet};
use crate::poly::{Monomial, MonomialOrder, Poly, Ring};
use crate::scalar::Field;

// ---------------------------------------------------------------------------
// Point configurations
// ---------------------------------------------------------------------------

/// A finite set of projective rational points with multiplicities.
#[derive(Clone, Debug)]
pub struct PointConfiguration<F: Field> {
    ambient_dim: usize,
    points: Vec<Vec<F::Elem>>,
    multiplicities: Vec<u32>,
    provenance: String,
}

impl<F: Field> PointConfiguration<F> {
    /// Validate and build: coordinate vectors of length N+1, none zero,
    /// pairwise distinct as projective points, all multiplicities ≥ 1.
    pub fn new(
        field: &F,
        ambient_dim: usize,
        points: Vec<Vec<F::Elem>>,
        multiplicities: Vec<u32>,
        provenance: impl Into<String>,
    ) -> Result<Self, EngineError> {
        if ambient_dim == 0 {
            return Err(EngineError::degenerate("ambient dimension must be ≥ 1"));
        }
        if points.is_empty() {
            return Err(EngineError::degenerate("a configuration needs at least one point"));
        }
        if points.len() != multiplicities.len() {
            return Err(EngineError::degenerate(
                "multiplicity list length must match the point list",
            ));
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient_dim + 1 {
                return Err(EngineError::degenerate(format!(
                    "point {i} has {} coordinates, expected {}",
                    p.len(),
                    ambient_dim + 1
                )));
            }
            if p.iter().all(|c| field.is_zero(c)) {
                return Err(EngineError::degenerate(format!("point {i} is the zero vector")));
            }
        }
        for (i, t) in multiplicities.iter().enumerate() {
            if *t == 0 {
                return Err(EngineError::degenerate(format!(
                    "point {i} has multiplicity 0; multiplicities must be ≥ 1"
                )));
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if same_projective_point(field, &points[i], &points[j]) {
                    return Err(EngineError::degenerate(format!(
                        "points {i} and {j} coincide as projective points"
                    )));
                }
            }
        }
        Ok(PointConfiguration {
            ambient_dim,
            points,
            multiplicities,
            provenance: provenance.into(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<F::Elem>] {
        &self.points
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn point_set(&self) -> PointSet<F> {
        PointSet {
            points: self.points.clone(),
            multiplicities: self.multiplicities.clone(),
        }
    }
}

/// Two coordinate vectors name the same projective point exactly when all
/// their 2×2 minors vanish.
pub fn same_projective_point<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let minor = field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]));
            if !field.is_zero(&minor) {
                return false;
            }
        }
    }
    true
}

/// The defining prime of one projective point: with pivot coordinate `p_j`
/// chosen as the largest in magnitude (ties to the smallest index), the N
/// linear forms `p_j·x_i − p_i·x_j` for `i ≠ j`, each normalized monic.
pub fn point_ideal<F: Field>(ring: &Ring<F>, point: &[F::Elem]) -> Result<Ideal<F>, EngineError> {
    let field = ring.field();
    if point.len() != ring.nvars() {
        return Err(EngineError::degenerate(format!(
            "point has {} coordinates but the ring has {} variables",
            point.len(),
            ring.nvars()
        )));
    }
    if point.iter().all(|c| field.is_zero(c)) {
        return Err(EngineError::degenerate(
            "the zero vector is not a projective point",
        ));
    }
    let mut pivot = 0usize;
    for i in 1..point.len() {
        if field.abs_cmp(&point[i], &point[pivot]) == std::cmp::Ordering::Greater {
            pivot = i;
        }
    }
    let n = ring.nvars();
    let mut gens = Vec::with_capacity(n - 1);
    for i in 0..n {
        if i == pivot {
            continue;
        }
        let terms = vec![
            (Monomial::var(n, i, 1), point[pivot].clone()),
            (Monomial::var(n, pivot, 1), field.neg(&point[i])),
        ];
        gens.push(ring.from_terms(terms).monic().expect("pivot is nonzero"));
    }
    Ideal::new(ring, gens)
}

/// The ideal of a fat-point scheme: ∩ 𝔭_i^{t_i}, computed by folded
/// intersection. Saturated by construction and tagged with the point data.
pub fn configuration_ideal<F: Field>(
    ring: &Ring<F>,
    config: &PointConfiguration<F>,
) -> Result<Ideal<F>, EngineError> {
    if ring.nvars() != config.ambient_dim + 1 {
        return Err(EngineError::degenerate(format!(
            "configuration lives in ℙ^{} but the ring has {} variables",
            config.ambient_dim,
            ring.nvars()
        )));
    }
    let mut acc: Option<Ideal<F>> = None;
    for (p, t) in config.points.iter().zip(&config.multiplicities) {
        let piece = point_ideal(ring, p)?.power(*t)?;
        acc = Some(match acc {
            None => piece,
            Some(meet) => meet.intersect(&piece)?,
        });
    }
    Ok(acc
        .expect("configuration has at least one point")
        .with_kind(IdealKind::Points(config.point_set())))
}

// ---------------------------------------------------------------------------
// Seeded random points
// ---------------------------------------------------------------------------

/// Minimal deterministic PRNG for point sampling: the xorshift64* generator
/// (shifts 12/25/27, multiplier 0x2545F4914F6CDD1D). Chosen for portability
/// and a two-line specification rather than statistical sophistication; the
/// genericity every experiment relies on is always re-verified downstream by
/// the Hilbert-function check, never assumed from the generator.
#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        // The all-zero state is a fixed point of the transition, so shift any
        // seed by a fixed odd constant.
        XorShift64Star {
            state: if seed == 0 { 0x9E3779B97F4A7C15 } else { seed },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform draw from `[-bound, bound]` by rejection sampling (exactly
    /// uniform, no modulo bias).
    pub fn next_in_band(&mut self, bound: u64) -> i64 {
        let range = 2 * bound + 1;
        let limit = u64::MAX - (u64::MAX % range);
        loop {
            let v = self.next_u64();
            if v < limit {
                return (v % range) as i64 - bound as i64;
            }
        }
    }
}

/// `s` distinct rational points of ℙ^N with integer coordinates drawn
/// uniformly from `[-bound, bound]` and the last coordinate forced to 1 (an
/// affine chart; the forced coordinate also guarantees no zero vectors).
/// Collisions resample, at most 1000 times across the whole draw.
pub fn random_points<F: Field>(
    field: &F,
    s: usize,
    ambient_dim: usize,
    seed: u64,
    bound: u64,
) -> Result<PointConfiguration<F>, EngineError> {
    if s == 0 {
        return Err(EngineError::degenerate("need at least one point"));
    }
    if ambient_dim == 0 {
        return Err(EngineError::degenerate("ambient dimension must be ≥ 1"));
    }
    if bound < 10 {
        return Err(EngineError::degenerate("coordinate bound must be ≥ 10"));
    }
    let mut rng = XorShift64Star::new(seed);
    let mut points: Vec<Vec<F::Elem>> = Vec::with_capacity(s);
    let mut resamples = 0usize;
    while points.len() < s {
        let mut p: Vec<F::Elem> = (0..ambient_dim)
            .map(|_| field.from_i64(rng.next_in_band(bound)))
            .collect();
        p.push(field.one());
        if points.iter().any(|q| same_projective_point(field, q, &p)) {
            resamples += 1;
            if resamples > 1000 {
                return Err(EngineError::degenerate(
                    "exceeded 1000 resamples drawing distinct random points; \
                     raise the coordinate bound",
                ));
            }
            continue;
        }
        points.push(p);
    }
    let mults = vec![1u32; s];
    PointConfiguration::new(
        field,
        ambient_dim,
        points,
        mults,
        format!("random(s={s},N={ambient_dim},seed={seed},bound={bound})"),
    )
}

// ---------------------------------------------------------------------------
// Named families
// ---------------------------------------------------------------------------

/// The Fermat configuration ideal `(x(yⁿ−zⁿ), y(zⁿ−xⁿ), z(xⁿ−yⁿ))` in three
/// variables. Rational generators, so any field works; the underlying n²+3
/// points are only rational over fields with a primitive n-th root of unity.
pub fn fermat_ideal<F: Field>(ring: &Ring<F>, n: u32) -> Result<Ideal<F>, EngineError> {
    if ring.nvars() != 3 {
        return Err(EngineError::degenerate(
            "the Fermat configuration lives in three variables",
        ));
    }
    if n < 3 {
        return Err(EngineError::degenerate("the Fermat family needs n ≥ 3"));
    }
    let [x, y, z] = [ring.var(0), ring.var(1), ring.var(2)];
    let gens = vec![
        x.mul(&y.power(n).sub(&z.power(n))),
        y.mul(&z.power(n).sub(&x.power(n))),
        z.mul(&x.power(n).sub(&y.power(n))),
    ];
    Ok(Ideal::new(ring, gens)?.with_kind(IdealKind::Fermat { n }))
}

/// The nine linear factors of (x³−y³)(y³−z³)(z³−x³): the reflection
/// arrangement whose singular locus is exactly the twelve points of the
/// Fermat n=3 configuration (nine triple points plus the three coordinate
/// vertices). Needs a primitive cube root of unity, so a prime field with
/// 3 | p−1. The three coordinate lines belong to a different reflection
/// group and must NOT be added: each would meet the pencil lines in nine
/// extra double points where the Fermat generators do not vanish.
pub fn fermat3_arrangement_forms<F: Field>(ring: &Ring<F>) -> Result<Vec<Poly<F>>, EngineError> {
    if ring.nvars() != 3 {
        return Err(EngineError::degenerate("expected a three-variable ring"));
    }
    let field = ring.field();
    let omega = field.nth_root_of_unity(3)?.ok_or_else(|| {
        EngineError::unsupported("this field has no primitive cube root of unity")
    })?;
    let omega2 = field.mul(&omega, &omega);
    let [x, y, z] = [ring.var(0), ring.var(1), ring.var(2)];
    let mut forms = Vec::with_capacity(9);
    for (u, v) in [(&x, &y), (&y, &z), (&z, &x)] {
        for w in [field.one(), omega.clone(), omega2.clone()] {
            forms.push(u.sub(&v.scalar_mul(&w)));
        }
    }
    Ok(forms)
}

fn check_linear_form<F: Field>(i: usize, f: &Poly<F>) -> Result<(), EngineError> {
    if f.is_zero() || f.total_degree() != Some(1) || !f.is_homogeneous() {
        return Err(EngineError::degenerate(format!(
            "form {i} is not a nonzero linear form"
        )));
    }
    Ok(())
}

fn proportional<F: Field>(ring: &Ring<F>, f: &Poly<F>, g: &Poly<F>) -> bool {
    rank_in_degree(ring, &[f.clone(), g.clone()], 1) < 2
}

/// Solve `c` independent linear forms in `c+1` variables for their common
/// projective zero, by exact Gaussian elimination on the coefficient matrix.
fn flat_point<F: Field>(ring: &Ring<F>, forms: &[&Poly<F>]) -> Result<Vec<F::Elem>, EngineError> {
    let field = ring.field().clone();
    let n = ring.nvars();
    let mut rows: Vec<Vec<F::Elem>> = forms
        .iter()
        .map(|f| {
            let mut row = vec![field.zero(); n];
            for (m, c) in f.terms() {
                let var = (0..n).find(|&i| m.exp(i) == 1).expect("linear form");
                row[var] = c.clone();
            }
            row
        })
        .collect();
    // Row-reduce to echelon form, tracking pivot columns.
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(r) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = field.inv(&rows[rank][col])?;
        for c in 0..n {
            rows[rank][c] = field.mul(&rows[rank][c], &inv);
        }
        for rr in 0..rows.len() {
            if rr != rank && !field.is_zero(&rows[rr][col]) {
                let factor = rows[rr][col].clone();
                for c in 0..n {
                    let sub = field.mul(&factor, &rows[rank][c]);
                    rows[rr][c] = field.sub(&rows[rr][c], &sub);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    if rank != n - 1 {
        return Err(EngineError::degenerate(format!(
            "flat is not a single point: rank {rank} in {n} variables"
        )));
    }
    let free = (0..n).find(|c| !pivots.contains(c)).expect("one free column");
    let mut point = vec![field.zero(); n];
    point[free] = field.one();
    for (r, &pc) in pivots.iter().enumerate() {
        point[pc] = field.neg(&rows[r][free]);
    }
    Ok(point)
}

/// The star configuration ideal: the intersection of the ideals of all
/// `c`-subsets of the given linear forms. Every `c`-subset must be linearly
/// independent. When `c` equals the projective dimension the flats are
/// points, and the result is built as a point configuration (carrying the
/// coordinates that symbolic powers need); lower codimension falls back to
/// the plain intersection.
pub fn star_configuration<F: Field>(
    ring: &Ring<F>,
    forms: &[Poly<F>],
    c: usize,
) -> Result<Ideal<F>, EngineError> {
    let n = ring.nvars();
    if c == 0 || c > n - 1 {
        return Err(EngineError::degenerate(format!(
            "codimension must be between 1 and {}",
            n - 1
        )));
    }
    if forms.len() < c {
        return Err(EngineError::degenerate("fewer forms than the codimension"));
    }
    for (i, f) in forms.iter().enumerate() {
        check_linear_form(i, f)?;
        if f.ring() != ring {
            return Err(EngineError::RingMismatch);
        }
    }
    for i in 0..forms.len() {
        for j in (i + 1)..forms.len() {
            if proportional(ring, &forms[i], &forms[j]) {
                return Err(EngineError::degenerate(format!(
                    "forms {i} and {j} are proportional"
                )));
            }
        }
    }
    let subsets = k_subsets(forms.len(), c);
    for s in &subsets {
        let chosen: Vec<Poly<F>> = s.iter().map(|&i| forms[i].clone()).collect();
        if rank_in_degree(ring, &chosen, 1) < c {
            return Err(EngineError::degenerate(format!(
                "forms {s:?} are linearly dependent"
            )));
        }
    }
    if c == n - 1 {
        // Flats are points: solve each subset and hand off to the
        // point-configuration builder (which also enforces distinctness).
        let field = ring.field();
        let mut points = Vec::with_capacity(subsets.len());
        for s in &subsets {
            let chosen: Vec<&Poly<F>> = s.iter().map(|&i| &forms[i]).collect();
            points.push(flat_point(ring, &chosen)?);
        }
        let mults = vec![1u32; points.len()];
        let config = PointConfiguration::new(
            field,
            n - 1,
            points,
            mults,
            format!("star(forms={},c={c})", forms.len()),
        )?;
        configuration_ideal(ring, &config)
    } else {
        let mut acc: Option<Ideal<F>> = None;
        for s in &subsets {
            let chosen: Vec<Poly<F>> = s.iter().map(|&i| forms[i].clone()).collect();
            let flat = Ideal::new(ring, chosen)?;
            acc = Some(match acc {
                None => flat,
                Some(meet) => meet.intersect(&flat)?,
            });
        }
        Ok(acc.expect("at least one subset"))
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// The radical ideal of the singular locus of a rank-3 hyperplane
/// arrangement: all pairwise intersection points of the given lines,
/// deduplicated, as a point configuration. Forms must be pairwise
/// non-proportional linear forms in three variables.
pub fn arrangement_singular_locus<F: Field>(
    ring: &Ring<F>,
    forms: &[Poly<F>],
) -> Result<Ideal<F>, EngineError> {
    if ring.nvars() != 3 {
        return Err(EngineError::degenerate(
            "arrangement singular loci are implemented in the rank-3 setting (three variables)",
        ));
    }
    if forms.len() < 2 {
        return Err(EngineError::degenerate(
            "an arrangement needs at least two hyperplanes",
        ));
    }
    for (i, f) in forms.iter().enumerate() {
        check_linear_form(i, f)?;
        if f.ring() != ring {
            return Err(EngineError::RingMismatch);
        }
    }
    let field = ring.field();
    let mut points: Vec<Vec<F::Elem>> = Vec::new();
    for i in 0..forms.len() {
        for j in (i + 1)..forms.len() {
            if proportional(ring, &forms[i], &forms[j]) {
                return Err(EngineError::degenerate(format!(
                    "forms {i} and {j} are proportional"
                )));
            }
            let p = flat_point(ring, &[&forms[i], &forms[j]])?;
            if !points.iter().any(|q| same_projective_point(field, q, &p)) {
                points.push(p);
            }
        }
    }
    let mults = vec![1u32; points.len()];
    let config = PointConfiguration::new(
        field,
        2,
        points,
        mults,
        format!("arrangement(forms={})", forms.len()),
    )?;
    configuration_ideal(ring, &config)
}

// ---------------------------------------------------------------------------
// Monomial curves
// ---------------------------------------------------------------------------

/// The defining prime of the affine monomial curve `(t^a, t^b, t^c)`: the
/// kernel of `x ↦ t^a, y ↦ t^b, z ↦ t^c`, computed by eliminating `t` from
/// `(x − t^a, y − t^b, z − t^c)`. A height-2 prime, generally not
/// standard-homogeneous.
pub fn monomial_curve_ideal<F: Field>(
    ring: &Ring<F>,
    a: u32,
    b: u32,
    c: u32,
) -> Result<Ideal<F>, EngineError> {
    if ring.nvars() != 3 {
        return Err(EngineError::degenerate("monomial curves live in three variables"));
    }
    if a == 0 || b == 0 || c == 0 {
        return Err(EngineError::degenerate("exponents must be positive"));
    }
    let g = gcd(gcd(a as u64, b as u64), c as u64);
    if g != 1 {
        return Err(EngineError::degenerate(format!(
            "exponents share the common factor {g}; rescale the parameter"
        )));
    }
    let ext = Ring::new(4, ring.field().clone(), MonomialOrder::Block { elim: 1 });
    let t = ext.var(0);
    let gens_ext = vec![
        ext.var(1).sub(&t.power(a)),
        ext.var(2).sub(&t.power(b)),
        ext.var(3).sub(&t.power(c)),
    ];
    let gb = crate::groebner::buchberger(&ext, &gens_ext)?;
    let projected: Vec<Poly<F>> = gb
        .elements()
        .iter()
        .filter(|g| g.leading_monomial().is_some_and(|m| m.exp(0) == 0))
        .map(|g| {
            debug_assert!(g.terms().iter().all(|(m, _)| m.exp(0) == 0));
            let terms = g
                .terms()
                .iter()
                .map(|(m, cf)| (Monomial::new(m.exps()[1..].to_vec()), cf.clone()))
                .collect();
            ring.from_terms(terms)
        })
        .collect();
    let home_gb = crate::groebner::buchberger(ring, &projected)?;
    let ideal = Ideal::new(ring, home_gb.elements().to_vec())?
        .with_kind(IdealKind::MonomialCurve { a, b, c });
    Ok(ideal)
}

fn gcd(a: u64, b: u64) -> u64 {
    num::integer::gcd(a, b)
}

// ---------------------------------------------------------------------------
// Point-list files
// ---------------------------------------------------------------------------

/// Parse the point-list file format: one point per line as whitespace-
/// separated rationals, `#` comments (whole-line or trailing), optional
/// multiplicity after a trailing `| t`.
pub fn parse_point_file<F: Field>(
    field: &F,
    text: &str,
) -> Result<PointConfiguration<F>, EngineError> {
    let mut points: Vec<Vec<F::Elem>> = Vec::new();
    let mut mults: Vec<u32> = Vec::new();
    let mut width: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (coord_part, mult) = match line.split_once('|') {
            None => (line, 1u32),
            Some((l, r)) => {
                let m: u32 = r.trim().parse().map_err(|_| {
                    EngineError::parse(format!(
                        "line {}: multiplicity `{}` is not a positive integer",
                        lineno + 1,
                        r.trim()
                    ))
                })?;
                (l, m)
            }
        };
        let mut coords = Vec::new();
        for tok in coord_part.split_whitespace() {
            coords.push(parse_rational_token(field, tok).map_err(|e| {
                EngineError::parse(format!("line {}: {}", lineno + 1, e))
            })?);
        }
        if coords.len() < 2 {
            return Err(EngineError::parse(format!(
                "line {}: a projective point needs at least two coordinates",
                lineno + 1
            )));
        }
        match width {
            None => width = Some(coords.len()),
            Some(w) if w != coords.len() => {
                return Err(EngineError::parse(format!(
                    "line {}: expected {} coordinates, found {}",
                    lineno + 1,
                    w,
                    coords.len()
                )));
            }
            _ => {}
        }
        points.push(coords);
        mults.push(mult);
    }
    let width = width.ok_or_else(|| EngineError::parse("point file contains no points"))?;
    PointConfiguration::new(field, width - 1, points, mults, "file")
}

fn parse_rational_token<F: Field>(field: &F, tok: &str) -> Result<F::Elem, String> {
    let (num_str, den_str) = match tok.split_once('/') {
        None => (tok, "1"),
        Some((n, d)) => (n, d),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| format!("`{tok}` is not a rational number"))?;
    let den: BigInt = den_str
        .parse()
        .map_err(|_| format!("`{tok}` is not a rational number"))?;
    field
        .from_ratio(&num, &den)
        .map_err(|e| format!("`{tok}`: {e}"))
}
