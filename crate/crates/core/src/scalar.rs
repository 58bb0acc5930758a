//! Exact coefficient arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every polynomial in the engine is generic over a [`Field`] context object.
//! The two implementations are [`Rationals`] (arbitrary-precision `BigRational`,
//! always kept in reduced form) and [`PrimeField`] (residues mod a `u64` prime,
//! verified prime at construction). Field elements are immutable values; the
//! context carries whatever runtime data the field needs (the modulus).

use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::EngineError;

/// Default modulus for prime-field mode. 1000002 = 2 · 3 · 166667, so cube
/// roots of unity exist, which the degree-3 Fermat configuration needs when
/// its points are realized over a finite field.
pub const DEFAULT_PRIME: u64 = 1_000_003;

/// A field of coefficients, passed by reference to every arithmetic call.
///
/// Implementations must be cheap to clone and compare; all elements are
/// immutable after construction and safe to share across threads.
pub trait Field: Clone + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + Ord + Eq + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse; rejects zero.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, EngineError>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, EngineError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Build an element from an integer ratio; used by the polynomial parser.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, EngineError>;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Canonical text form: rationals as "num/den" with "/den" omitted when the
    /// denominator is 1, prime-field elements as their decimal residue.
    fn elem_to_string(&self, a: &Self::Elem) -> String;

    /// Rescale a nonempty coefficient vector by one nonzero constant into the
    /// field's canonical primitive form. Over the rationals this clears
    /// denominators, divides by the integer content and makes the first entry
    /// positive; over a prime field it makes the first entry 1. Used after
    /// every Gröbner reduction to keep coefficients small and outputs
    /// canonical.
    fn normalize_content(&self, coeffs: &mut [Self::Elem]);

    /// Multipliers `(u, v)` with `u·a = v·b` and `u ≠ 0`, chosen to keep
    /// coefficient growth low in the reduction step `f ← u·f − v·(monomial·g)`
    /// where `a = lc(f)`, `b = lc(g)`. Over the rationals with integer inputs
    /// this is the fraction-free cross-multiplier pair `(b/g, a/g)`.
    fn elimination_multipliers(&self, a: &Self::Elem, b: &Self::Elem)
        -> (Self::Elem, Self::Elem);

    /// A primitive n-th root of unity, if one exists in this field.
    ///
    /// Prime fields return `Some` exactly when `n | p−1`, picking the
    /// deterministic representative `g^((p−1)/n)` for the smallest primitive
    /// root `g`. The rationals only contain ±1, so `n ≥ 3` is an error there.
    fn nth_root_of_unity(&self, n: u64) -> Result<Option<Self::Elem>, EngineError>;

    /// Short machine-readable tag recorded in reports and cache keys.
    fn spec_string(&self) -> String;

    /// Compare two elements by "magnitude" for deterministic pivot choices:
    /// absolute value over the rationals, canonical residue in [0, p) over a
    /// prime field.
    fn abs_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> std::cmp::Ordering;
}

/// Runtime description of a field, as it appears in configuration and reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rationals,
    Prime { p: u64 },
}

impl FieldSpec {
    /// Parse "rationals" or "prime:P".
    pub fn parse(s: &str) -> Result<Self, EngineError> {
        if s == "rationals" || s == "rational" || s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("prime:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| EngineError::parse(format!("invalid prime modulus `{rest}`")))?;
            // Construction validates primality.
            PrimeField::new(p)?;
            return Ok(FieldSpec::Prime { p });
        }
        Err(EngineError::parse(format!(
            "unknown field spec `{s}` (expected `rationals` or `prime:P`)"
        )))
    }

    pub fn tag(&self) -> String {
        match self {
            FieldSpec::Rationals => "rationals".to_string(),
            FieldSpec::Prime { p } => format!("prime:{p}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// The field ℚ. Elements are `BigRational`, reduced eagerly by construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

/// Canonical rational constructor: reduces and normalizes the sign so the
/// denominator is positive. Rejects a zero denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    assert!(den != 0, "zero denominator");
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, EngineError> {
        if a.is_zero() {
            return Err(EngineError::invariant("inverse of zero"));
        }
        Ok(a.recip())
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational, EngineError> {
        if den.is_zero() {
            return Err(EngineError::parse("zero denominator".to_string()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn elem_to_string(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn normalize_content(&self, coeffs: &mut [BigRational]) {
        if coeffs.is_empty() {
            return;
        }
        let mut den_lcm = BigInt::one();
        for c in coeffs.iter() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in coeffs.iter() {
            // After clearing denominators every entry is (numer · den_lcm / denom).
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        if num_gcd.is_zero() {
            return;
        }
        let lead_negative = coeffs[0].numer().is_negative();
        if lead_negative {
            num_gcd = -num_gcd;
        }
        let scale = BigRational::new(den_lcm, num_gcd);
        for c in coeffs.iter_mut() {
            *c *= &scale;
        }
    }

    fn elimination_multipliers(
        &self,
        a: &BigRational,
        b: &BigRational,
    ) -> (BigRational, BigRational) {
        if a.denom().is_one() && b.denom().is_one() {
            let g = a.numer().gcd(b.numer());
            (
                BigRational::from_integer(b.numer() / &g),
                BigRational::from_integer(a.numer() / &g),
            )
        } else {
            (BigRational::one(), a / b)
        }
    }

    fn nth_root_of_unity(&self, n: u64) -> Result<Option<BigRational>, EngineError> {
        match n {
            1 => Ok(Some(BigRational::one())),
            2 => Ok(Some(-BigRational::one())),
            _ => Err(EngineError::unsupported(
                "the rationals contain no roots of unity beyond ±1; use a prime field with n | p−1",
            )),
        }
    }

    fn spec_string(&self) -> String {
        "rationals".to_string()
    }

    fn abs_cmp(&self, a: &BigRational, b: &BigRational) -> std::cmp::Ordering {
        use num::Signed;
        a.abs().cmp(&b.abs())
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// The field F_p for a u64 prime p, elements stored as residues in [0, p).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Build F_p, rejecting non-prime moduli via a deterministic
    /// Miller–Rabin test (exact for all u64).
    pub fn new(p: u64) -> Result<Self, EngineError> {
        if !is_prime_u64(p) {
            return Err(EngineError::NonPrimeModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        let m = n.rem_euclid(self.p as i64);
        m as u64
    }

    /// Smallest primitive root of F_p. Requires factoring p−1, which is cheap
    /// at the moduli this engine uses (trial division to √(p−1)).
    fn smallest_primitive_root(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let phi = self.p - 1;
        let factors = distinct_prime_factors(phi);
        'outer: for g in 2..self.p {
            for q in &factors {
                if pow_mod(g, phi / q, self.p) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("every prime field has a primitive root");
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Result<u64, EngineError> {
        if *a == 0 {
            return Err(EngineError::invariant("inverse of zero"));
        }
        // Extended Euclid on (a, p); p prime guarantees gcd 1.
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(s0.rem_euclid(self.p as i128) as u64)
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64, EngineError> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_string().parse::<u64>().unwrap();
        let d = den.mod_floor(&p).to_string().parse::<u64>().unwrap();
        if d == 0 {
            return Err(EngineError::parse(format!(
                "denominator divisible by the field characteristic {}",
                self.p
            )));
        }
        Ok(self.mul(&n, &self.inv(&d)?))
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn elem_to_string(&self, a: &u64) -> String {
        a.to_string()
    }

    fn normalize_content(&self, coeffs: &mut [u64]) {
        if let Some(&lead) = coeffs.first() {
            if lead == 0 || lead == 1 {
                return;
            }
            let inv = self.inv(&lead).expect("leading coefficient nonzero");
            for c in coeffs.iter_mut() {
                *c = self.mul(c, &inv);
            }
        }
    }

    fn elimination_multipliers(&self, a: &u64, b: &u64) -> (u64, u64) {
        (1, self.mul(a, &self.inv(b).expect("nonzero divisor")))
    }

    fn nth_root_of_unity(&self, n: u64) -> Result<Option<u64>, EngineError> {
        if n == 0 {
            return Err(EngineError::parse("root-of-unity order must be ≥ 1"));
        }
        if (self.p - 1) % n != 0 {
            return Ok(None);
        }
        let g = self.smallest_primitive_root();
        Ok(Some(pow_mod(g, (self.p - 1) / n, self.p)))
    }

    fn spec_string(&self) -> String {
        format!("prime:{}", self.p)
    }

    fn abs_cmp(&self, a: &u64, b: &u64) -> std::cmp::Ordering {
        a.cmp(b)
    }
}

// ---------------------------------------------------------------------------
// Integer helpers shared by the threshold and counting calculators
// ---------------------------------------------------------------------------

/// Exact binomial coefficient; 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

/// Deterministic Miller–Rabin, exact for the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
