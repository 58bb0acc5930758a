//! Asymptotic invariants of symbolic-power families.
//!
//! This module turns the engine's exact symbolic powers into *decisions*
//! about initial-degree growth: Waldschmidt upper-bound tables, audits of the
//! classical lower bounds on α(I^(m))/m, and exact integer threshold
//! calculators for containment-stabilization inequalities.  Every comparison
//! is exact — cross-multiplied integers or big rationals, never floats — and
//! every report states only what a finite computation can state: an audit
//! result is "consistent at m ≤ m_max", never a proof of the asymptotic
//! statement.

use std::fmt;

use num::{BigInt, BigRational};
use serde::Serialize;

use crate::containment::symbolic_power;
use crate::error::{EngineError, GbStats};
use crate::ideal::Ideal;
use crate::scalar::{binomial, Field};

/// Exact reduced string form of the rational a/b (b > 0).
fn ratio_string(num: u64, den: u64) -> String {
    debug_assert!(den > 0);
    BigRational::new(BigInt::from(num), BigInt::from(den)).to_string()
}

// ---------------------------------------------------------------------------
// Waldschmidt tables
// ---------------------------------------------------------------------------

/// One row of a Waldschmidt table: the initial degree of the m-th symbolic
/// power and the exact ratio α(I^(m))/m.
#[derive(Clone, Debug, Serialize)]
pub struct WaldschmidtRow {
    pub m: u32,
    pub alpha: u32,
    pub ratio: String,
}

impl WaldschmidtRow {
    /// The row's ratio as an exact rational.
    pub fn ratio_exact(&self) -> BigRational {
        BigRational::new(BigInt::from(self.alpha), BigInt::from(self.m))
    }
}

/// Table of α(I^(m))/m for consecutive m starting at 1.
///
/// The limit of the ratios (the Waldschmidt constant) equals their infimum,
/// so the minimum over any finite table is a true *upper bound* for it; the
/// exact limit is out of reach of any finite computation and no field here
/// claims otherwise.
#[derive(Clone, Debug, Serialize)]
pub struct WaldschmidtTable {
    pub rows: Vec<WaldschmidtRow>,
    pub upper_bound: String,
    pub upper_bound_numerator: u32,
    pub upper_bound_denominator: u32,
}

impl WaldschmidtTable {
    /// The minimum computed ratio, as an exact rational.
    pub fn upper_bound_exact(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.upper_bound_numerator),
            BigInt::from(self.upper_bound_denominator),
        )
    }
}

impl fmt::Display for WaldschmidtTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m_w = "m".len();
        let mut a_w = "alpha".len();
        let mut r_w = "ratio".len();
        for row in &self.rows {
            m_w = m_w.max(row.m.to_string().len());
            a_w = a_w.max(row.alpha.to_string().len());
            r_w = r_w.max(row.ratio.len());
        }
        writeln!(f, "{:>m_w$}  {:>a_w$}  {:>r_w$}", "m", "alpha", "ratio")?;
        for row in &self.rows {
            writeln!(
                f,
                "{:>m_w$}  {:>a_w$}  {:>r_w$}",
                row.m, row.alpha, row.ratio
            )?;
        }
        write!(f, "upper bound for the Waldschmidt constant: {}", self.upper_bound)
    }
}

/// Compute α(I^(m))/m for m = 1..=m_max.
///
/// Rows are computed in ascending order so that the symbolic-power memo of
/// the base ideal is reused by the addition chain of the later rows.
pub fn waldschmidt_table<F: Field>(
    base: &Ideal<F>,
    m_max: u32,
) -> Result<WaldschmidtTable, EngineError> {
    if m_max < 1 {
        return Err(EngineError::degenerate("waldschmidt table needs m_max >= 1"));
    }
    let mut rows = Vec::with_capacity(m_max as usize);
    let mut best: Option<(u32, u32)> = None; // (alpha, m) of the min ratio
    for m in 1..=m_max {
        let power = symbolic_power(base, m)?;
        let alpha = power.alpha()?;
        // a1/m1 > a2/m2  ⟺  a1·m2 > a2·m1 (all positive).
        let better = match best {
            None => true,
            Some((ba, bm)) => (ba as u64) * (m as u64) > (alpha as u64) * (bm as u64),
        };
        if better {
            best = Some((alpha, m));
        }
        rows.push(WaldschmidtRow {
            m,
            alpha,
            ratio: ratio_string(alpha as u64, m as u64),
        });
    }
    let (num, den) = best.expect("m_max >= 1 produced no rows");
    Ok(WaldschmidtTable {
        rows,
        upper_bound: ratio_string(num as u64, den as u64),
        upper_bound_numerator: num,
        upper_bound_denominator: den,
    })
}

// ---------------------------------------------------------------------------
// Initial-degree audits
// ---------------------------------------------------------------------------

/// Which lower bound on α(I^(m))/m an audit checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditKind {
    /// (α(I) + N − 1)/N.
    Chudnovsky,
    /// (α(I) + 1)/N.
    EsnaultViehweg,
    /// (α(I) + N − 2)/N.
    WeakChudnovsky,
    /// (α(I^(t)) + N − 1)/N against α(I^(tm))/m, for a fat-point multiplicity t.
    FatPoint,
}

impl AuditKind {
    fn label(self) -> &'static str {
        match self {
            AuditKind::Chudnovsky => "chudnovsky",
            AuditKind::EsnaultViehweg => "esnault-viehweg",
            AuditKind::WeakChudnovsky => "weak-chudnovsky",
            AuditKind::FatPoint => "fat-point",
        }
    }
}

/// One audited exponent: the ratio α(I^(m))/m and whether it clears the bound.
#[derive(Clone, Debug, Serialize)]
pub struct AuditRow {
    pub m: u32,
    pub symbolic_alpha: u32,
    pub ratio: String,
    pub pass: bool,
}

/// Result of auditing one lower bound against finitely many symbolic powers.
///
/// A full pass is reported as "consistent at m ≤ m_max" — finite checks are
/// necessary consequences of the asymptotic bound, never a proof of it.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub kind: AuditKind,
    pub projective_dim: u32,
    pub base_alpha: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u32>,
    pub bound: String,
    pub bound_numerator: i64,
    pub bound_denominator: u32,
    pub rows: Vec<AuditRow>,
    pub all_pass: bool,
    pub conclusion: String,
}

impl AuditReport {
    /// The audited bound, as an exact rational.
    pub fn bound_exact(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.bound_numerator),
            BigInt::from(self.bound_denominator),
        )
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} audit in P^{}: bound {}",
            self.kind.label(),
            self.projective_dim,
            self.bound
        )?;
        let mut m_w = "m".len();
        let mut a_w = "alpha".len();
        let mut r_w = "ratio".len();
        for row in &self.rows {
            m_w = m_w.max(row.m.to_string().len());
            a_w = a_w.max(row.symbolic_alpha.to_string().len());
            r_w = r_w.max(row.ratio.len());
        }
        writeln!(f, "{:>m_w$}  {:>a_w$}  {:>r_w$}  verdict", "m", "alpha", "ratio")?;
        for row in &self.rows {
            writeln!(
                f,
                "{:>m_w$}  {:>a_w$}  {:>r_w$}  {}",
                row.m,
                row.symbolic_alpha,
                row.ratio,
                if row.pass { "pass" } else { "fail" }
            )?;
        }
        write!(f, "{}", self.conclusion)
    }
}

/// Shared audit loop.  `bound_numerator / n` is the audited lower bound;
/// `row_power(m)` is the symbolic exponent whose initial degree the ratio at
/// m uses (m itself for the plain audits, t·m for fat points).
fn run_audit<F: Field>(
    kind: AuditKind,
    base: &Ideal<F>,
    m_max: u32,
    base_alpha: u32,
    multiplicity: Option<u32>,
    bound_numerator: i64,
    row_power: impl Fn(u32) -> u32,
) -> Result<AuditReport, EngineError> {
    let n = projective_dim(base)?;
    if m_max < 1 {
        return Err(EngineError::degenerate("audit needs m_max >= 1"));
    }
    let mut rows = Vec::with_capacity(m_max as usize);
    let mut first_fail = None;
    for m in 1..=m_max {
        let power = symbolic_power(base, row_power(m))?;
        let symbolic_alpha = power.alpha()?;
        // alpha/m ≥ num/n  ⟺  alpha·n ≥ num·m (n, m > 0).
        let pass = (symbolic_alpha as i64) * (n as i64) >= bound_numerator * (m as i64);
        if !pass && first_fail.is_none() {
            first_fail = Some(m);
        }
        rows.push(AuditRow {
            m,
            symbolic_alpha,
            ratio: ratio_string(symbolic_alpha as u64, m as u64),
            pass,
        });
    }
    let all_pass = first_fail.is_none();
    let conclusion = match first_fail {
        None => format!("consistent at m <= {m_max}"),
        Some(m) => format!("inconsistent at m = {m}"),
    };
    let bound = BigRational::new(BigInt::from(bound_numerator), BigInt::from(n)).to_string();
    Ok(AuditReport {
        kind,
        projective_dim: n,
        base_alpha,
        multiplicity,
        bound,
        bound_numerator,
        bound_denominator: n,
        rows,
        all_pass,
        conclusion,
    })
}

/// The N of the ambient ℙ^N, from the ring's variable count.
fn projective_dim<F: Field>(base: &Ideal<F>) -> Result<u32, EngineError> {
    let nvars = base.ring().nvars();
    if nvars < 2 {
        return Err(EngineError::unsupported(
            "degree audits need at least two variables (points in P^N, N >= 1)",
        ));
    }
    Ok((nvars - 1) as u32)
}

/// Audit α(I^(m))/m ≥ (α(I) + N − 1)/N for m = 1..=m_max.
pub fn chudnovsky_audit<F: Field>(
    base: &Ideal<F>,
    m_max: u32,
) -> Result<AuditReport, EngineError> {
    let n = projective_dim(base)?;
    let alpha = base.alpha()?;
    let num = alpha as i64 + n as i64 - 1;
    run_audit(AuditKind::Chudnovsky, base, m_max, alpha, None, num, |m| m)
}

/// Audit α(I^(m))/m ≥ (α(I) + 1)/N for m = 1..=m_max.
pub fn ev_audit<F: Field>(base: &Ideal<F>, m_max: u32) -> Result<AuditReport, EngineError> {
    let alpha = base.alpha()?;
    let num = alpha as i64 + 1;
    run_audit(
        AuditKind::EsnaultViehweg,
        base,
        m_max,
        alpha,
        None,
        num,
        |m| m,
    )
}

/// Audit α(I^(m))/m ≥ (α(I) + N − 2)/N for m = 1..=m_max.
pub fn weak_chudnovsky_audit<F: Field>(
    base: &Ideal<F>,
    m_max: u32,
) -> Result<AuditReport, EngineError> {
    let n = projective_dim(base)?;
    let alpha = base.alpha()?;
    let num = alpha as i64 + n as i64 - 2;
    run_audit(
        AuditKind::WeakChudnovsky,
        base,
        m_max,
        alpha,
        None,
        num,
        |m| m,
    )
}

/// Fat-point audit: for the scheme with every multiplicity scaled by t, the
/// role of I is played by J = I^(t) and J^(m) = I^(tm), so the audited bound
/// is α(I^(tm))/m ≥ (α(I^(t)) + N − 1)/N.
pub fn fatpoint_chudnovsky_audit<F: Field>(
    base: &Ideal<F>,
    t: u32,
    m_max: u32,
) -> Result<AuditReport, EngineError> {
    if t < 2 {
        return Err(EngineError::degenerate(
            "fat-point audit needs multiplicity t >= 2 (t = 1 is the plain audit)",
        ));
    }
    let n = projective_dim(base)?;
    let fat_alpha = symbolic_power(base, t)?.alpha()?;
    let num = fat_alpha as i64 + n as i64 - 1;
    run_audit(
        AuditKind::FatPoint,
        base,
        m_max,
        fat_alpha,
        Some(t),
        num,
        move |m| t * m,
    )
}

// ---------------------------------------------------------------------------
// Threshold calculators
// ---------------------------------------------------------------------------

/// Inputs of a stabilization-threshold computation: big height h, containment
/// parameter c, the linear form ℓ(x, y) = a·x + b·y + d of the twist exponent,
/// and the initial degree α(I) driving the slack growth.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ThresholdInputs {
    pub h: u32,
    pub c: u32,
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub alpha: u32,
}

/// One scanned exponent r = q·hc + t with its exact slack.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub r: u64,
    pub q: u64,
    pub t: u64,
    pub slack: String,
    pub ok: bool,
}

/// Result of the exact integer scan for the least r0 such that the sufficient
/// inequality holds for every r ≥ r0.
///
/// The inequality and the threshold are those of the *proof technique* — a
/// sufficient condition — so r0 is labeled a sufficient-condition threshold
/// and makes no sharpness claim.
#[derive(Clone, Debug, Serialize)]
pub struct ThresholdReport {
    pub inputs: ThresholdInputs,
    pub hypothesis_ok: bool,
    pub hypothesis_floor: i64,
    pub r0: u64,
    pub nature: String,
    pub stable_from: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure_below: Option<u64>,
    pub steps: Vec<TraceStep>,
}

impl fmt::Display for ThresholdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "h = {}, c = {}, ell = {}*x + {}*y + {}, alpha = {}",
            self.inputs.h, self.inputs.c, self.inputs.a, self.inputs.b, self.inputs.d,
            self.inputs.alpha
        )?;
        writeln!(f, "hypothesis floor alpha >= {}: ok", self.hypothesis_floor)?;
        match self.first_failure_below {
            Some(r) => writeln!(f, "inequality fails at r = {r} and holds for every r >= {}", self.r0)?,
            None => writeln!(f, "inequality holds for every r >= {}", self.r0)?,
        }
        write!(f, "r0 = {} ({})", self.r0, self.nature)
    }
}

/// Exact slack of the sufficient inequality at block q, offset t:
///   α·(q−1) − q·[h²(a+1) + h·d]  −  (h·t − h − a·h − b·t − d).
fn threshold_slack(inputs: &ThresholdInputs, q: i128, t: i128) -> i128 {
    let h = inputs.h as i128;
    let a = inputs.a as i128;
    let b = inputs.b as i128;
    let d = inputs.d as i128;
    let alpha = inputs.alpha as i128;
    let k = h * h * (a + 1) + h * d;
    alpha * (q - 1) - q * k - (h * t - h - a * h - b * t - d)
}

/// Compute the least r0 such that, writing r = q·hc + t with 0 ≤ t < hc, the
/// sufficient inequality
///   α·(q−1) − q·[h²(a+1) + h·d] ≥ h·t − h − a·h − b·t − d
/// holds for every r ≥ r0.
///
/// Requires the hypothesis α ≥ h²(a+1) + h·d + 1, which makes the slack grow
/// with slope ≥ 1 per block; the scan then terminates within one block below
/// the first all-passing block.
pub fn theorem31_threshold(
    h: u32,
    c: u32,
    a: i64,
    b: i64,
    d: i64,
    alpha: u32,
) -> Result<ThresholdReport, EngineError> {
    if h < 2 {
        return Err(EngineError::degenerate("threshold needs big height h >= 2"));
    }
    if c < 1 {
        return Err(EngineError::degenerate("threshold needs c >= 1"));
    }
    const COEFF_CAP: i64 = 1_000_000;
    if h > 100_000 || c > 100_000 {
        return Err(EngineError::unsupported("h and c are capped at 100000"));
    }
    if a.abs() > COEFF_CAP || b.abs() > COEFF_CAP || d.abs() > COEFF_CAP {
        return Err(EngineError::unsupported(
            "linear-form coefficients are capped at 1e6 in absolute value",
        ));
    }

    let inputs = ThresholdInputs { h, c, a, b, d, alpha };
    let h_i = h as i128;
    let floor_i128 = h_i * h_i * (a as i128 + 1) + h_i * (d as i128) + 1;
    let hypothesis_floor = i64::try_from(floor_i128)
        .map_err(|_| EngineError::unsupported("hypothesis floor exceeds supported range"))?;
    if (alpha as i128) < floor_i128 {
        return Err(EngineError::HypothesisViolated(format!(
            "alpha(I) = {alpha} is below the required floor h^2(a+1) + h*d + 1 = {hypothesis_floor}"
        )));
    }

    let hc = h as u64 * c as u64;
    // Slack is linear in t with coefficient b − h: for h > b the within-block
    // minimum sits at t = hc − 1, otherwise at t = 0.
    let worst_t: u64 = if (h as i64) > b { hc - 1 } else { 0 };
    let slope = alpha as i128 - (floor_i128 - 1); // α − h²(a+1) − h·d ≥ 1.
    debug_assert!(slope >= 1);

    // Least q ≥ 0 with slack(q, worst_t) ≥ 0, by exact ceiling division.
    let need = threshold_slack(&inputs, 0, worst_t as i128); // slack at q = 0
    let q_star: i128 = if need >= 0 {
        0
    } else {
        let deficit = -need;
        (deficit + slope - 1) / slope
    };
    debug_assert!(threshold_slack(&inputs, q_star, worst_t as i128) >= 0);
    debug_assert!(q_star == 0 || threshold_slack(&inputs, q_star - 1, worst_t as i128) < 0);

    let stable_from_i128 = q_star * hc as i128;
    if stable_from_i128 > 1_000_000_000_000_000 {
        return Err(EngineError::Resource {
            reason: format!("stabilization point {stable_from_i128} exceeds the supported range"),
            stats: GbStats::default(),
        });
    }
    let stable_from = stable_from_i128 as u64;

    // Walk r downward from the first all-passing block until the first
    // failure; by minimality of q_star this happens within hc steps.
    let mut steps = Vec::new();
    let mut r0 = 0u64;
    let mut first_failure_below = None;
    let mut r = stable_from;
    while r > 0 {
        r -= 1;
        let q = r / hc;
        let t = r % hc;
        let slack = threshold_slack(&inputs, q as i128, t as i128);
        let ok = slack >= 0;
        steps.push(TraceStep {
            r,
            q,
            t,
            slack: slack.to_string(),
            ok,
        });
        if !ok {
            first_failure_below = Some(r);
            r0 = r + 1;
            break;
        }
    }

    Ok(ThresholdReport {
        inputs,
        hypothesis_ok: true,
        hypothesis_floor,
        r0,
        nature: "sufficient-condition threshold".to_string(),
        stable_from,
        first_failure_below,
        steps,
    })
}

/// The explicit uniform threshold h·c: the containment I^(hr−h+1) ⊆ 𝔪^{…}I^r
/// family stabilizes for all r ≥ h·c once its c-th instance holds.
pub fn grifo_threshold(h: u32, c: u32) -> Result<u64, EngineError> {
    if h < 2 {
        return Err(EngineError::degenerate("threshold needs big height h >= 2"));
    }
    if c < 1 {
        return Err(EngineError::degenerate("threshold needs c >= 1"));
    }
    Ok(h as u64 * c as u64)
}

// ---------------------------------------------------------------------------
// Counting lemma and generic initial degree
// ---------------------------------------------------------------------------

/// Exact verdict of k^N ≤ C(Nk − N − 1, N), with the parameter regimes in
/// which the inequality is known to hold uniformly.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub k: u32,
    pub n: u32,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub regimes: Vec<u8>,
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k^N = {} {} C(Nk-N-1, N) = {}",
            self.lhs,
            if self.holds { "<=" } else { ">" },
            self.rhs
        )?;
        if self.regimes.is_empty() {
            write!(f, " (outside the uniform regimes)")
        } else {
            write!(f, " (uniform regime{}: ", if self.regimes.len() > 1 { "s" } else { "" })?;
            for (i, reg) in self.regimes.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{reg}")?;
            }
            write!(f, ")")
        }
    }
}

/// Decide k^N ≤ C(Nk − N − 1, N) by exact big-integer comparison.
///
/// The regimes list records which of the uniform parameter families
/// (1) k ≥ 5, N ≥ 3, (2) k ≥ 4, N ≥ 4, (3) k ≥ 3, N ≥ 9 cover (k, N).
pub fn count_inequality(k: u32, n: u32) -> CountReport {
    let lhs = BigInt::from(k).pow(n);
    let top = i64::from(n) * i64::from(k) - i64::from(n) - 1;
    let rhs = if top < 0 {
        BigInt::from(0)
    } else {
        binomial(top as u64, n as u64)
    };
    let holds = lhs <= rhs;
    let mut regimes = Vec::new();
    if k >= 5 && n >= 3 {
        regimes.push(1);
    }
    if k >= 4 && n >= 4 {
        regimes.push(2);
    }
    if k >= 3 && n >= 9 {
        regimes.push(3);
    }
    CountReport {
        k,
        n,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        holds,
        regimes,
    }
}

/// The least d with C(d + N, N) > s: the initial degree of the ideal of s
/// general points in ℙ^N (the first degree where the forms outnumber the
/// point conditions).
pub fn alpha_general_points(s: u64, n: u32) -> u32 {
    let mut d = 0u32;
    loop {
        if binomial(u64::from(d) + u64::from(n), u64::from(n)) > BigInt::from(s) {
            return d;
        }
        d += 1;
    }
}
