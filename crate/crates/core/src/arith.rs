//! Exact integer and rational helpers shared by every other module.
//!
//! Nothing in here touches floating point. Transcendental constants only
//! appear as [`RationalInterval`] enclosures, and any decision taken against
//! an enclosure is three-valued ([`Decision`]).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}` in rational literal")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p/q"`, `"p"` or a plain decimal like `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let int = |t: &str| -> Result<BigInt, ParseRationalError> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| ParseRationalError::BadInteger(t.to_string()))
    };
    if let Some((p, q)) = s.split_once('/') {
        let q = int(q)?;
        if q.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(int(p)?, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits = frac.len() as u32;
        let scale = BigInt::from(10u32).pow(digits);
        let whole_part = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            int(whole)?
        };
        let frac_part = if frac.is_empty() { BigInt::zero() } else { int(frac)? };
        let magnitude = whole_part.abs() * &scale + frac_part;
        let numer = if negative { -magnitude } else { magnitude };
        return Ok(BigRational::new(numer, scale));
    }
    Ok(BigRational::from_integer(int(s)?))
}

/// Renders a rational as `"p/q"` (always with an explicit denominator).
pub fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Renders integers without a denominator, everything else as `p/q`.
pub fn fmt_compact(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        fmt_ratio(r)
    }
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

pub fn floor_to_bigint(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil_to_bigint(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

/// C(n, k) by the descending product with a gcd reduction at every step.
///
/// After step `i` the accumulator equals C(n, i) exactly; the reduction keeps
/// the intermediate factors coprime so the division is always exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        let mut num = BigUint::from(n - k + i);
        let mut den = BigUint::from(i);
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
        // acc * num / den is C(n-k+i, i); den now divides acc.
        let g2 = acc.gcd(&den);
        acc /= &g2;
        den /= &g2;
        debug_assert!(den.is_one());
        acc *= num;
    }
    acc
}

pub fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// m^m / m!, the lattice-volume lower bound for simplices through (1,…,1).
pub fn power_over_factorial(m: u64) -> BigRational {
    assert!(m >= 1, "power_over_factorial needs m >= 1");
    let num = BigUint::from(m).pow(m as u32);
    BigRational::new(
        BigInt::from_biguint(Sign::Plus, num),
        BigInt::from_biguint(Sign::Plus, factorial(m)),
    )
}

/// Orders `q` against `2^(p/m)` by comparing `q^m` with `2^p` in integers.
pub fn compare_pow2_fractional(q: &BigUint, p: i64, m: u32) -> Ordering {
    assert!(m >= 1, "root index must be positive");
    assert!(!q.is_zero(), "q must be positive");
    let lhs = q.pow(m);
    if p < 0 {
        // 2^p < 1 <= q^m
        return Ordering::Greater;
    }
    let rhs = BigUint::one() << (p as u64);
    lhs.cmp(&rhs)
}

/// Three-valued outcome for decisions that go through an enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Decision {
    True,
    False,
    Inconclusive,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::True
        } else {
            Decision::False
        }
    }

    pub fn and(self, other: Decision) -> Decision {
        match (self, other) {
            (Decision::False, _) | (_, Decision::False) => Decision::False,
            (Decision::True, Decision::True) => Decision::True,
            _ => Decision::Inconclusive,
        }
    }
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Product of two intervals with nonnegative lower endpoints.
    pub fn mul_nonneg(&self, other: &RationalInterval) -> RationalInterval {
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        RationalInterval::new(&self.lo * &other.lo, &self.hi * &other.hi)
    }

    /// Scales by a nonnegative rational.
    pub fn scale(&self, c: &BigRational) -> RationalInterval {
        assert!(!c.is_negative());
        RationalInterval::new(&self.lo * c, &self.hi * c)
    }

    /// Decides `x >= self` (every point of the interval is at most `x`).
    pub fn is_dominated_by(&self, x: &BigRational) -> Decision {
        if &self.hi <= x {
            Decision::True
        } else if &self.lo > x {
            Decision::False
        } else {
            Decision::Inconclusive
        }
    }

    /// Decides `x < self` on the whole interval.
    pub fn exceeds(&self, x: &BigRational) -> Decision {
        if &self.lo > x {
            Decision::True
        } else if &self.hi <= x {
            Decision::False
        } else {
            Decision::Inconclusive
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_ratio(&self.lo), fmt_ratio(&self.hi))
    }
}

pub const MAX_E_DIGITS: u32 = 50;

/// Enclosure of e over the first `terms + 1` Taylor terms.
///
/// The tail after 1/N! is below 2/(N+1)!, and the upper endpoint
/// `S_N + 2/(N+1)!` is nonincreasing in N, so enclosures nest.
fn e_taylor(terms: u64) -> RationalInterval {
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    for k in 0..=terms {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        sum += BigRational::new(BigInt::one(), fact.clone());
    }
    let tail = BigRational::new(BigInt::from(2), fact * BigInt::from(terms + 1));
    let hi = &sum + tail;
    RationalInterval::new(sum, hi)
}

/// Certified interval of width below 10^-digits around e (power 1) or e² (power 2).
pub fn e_enclosure(power: u32, digits: u32) -> RationalInterval {
    assert!(power == 1 || power == 2, "only e and e^2 are supported");
    assert!(digits <= MAX_E_DIGITS, "at most {MAX_E_DIGITS} digits");
    let target = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits));
    let mut terms = 1u64;
    loop {
        let e = e_taylor(terms);
        let candidate = if power == 1 { e } else { e.mul_nonneg(&e) };
        if candidate.width() < target {
            return candidate;
        }
        terms += 1;
    }
}

/// `a + b·√c` with rational a, b and square-free radicand c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    a: BigRational,
    b: BigRational,
    c: BigUint,
}

impl QuadraticSurd {
    /// Builds `a + b√c`, pulling square factors out of the radicand.
    pub fn new(a: BigRational, b: BigRational, c: impl Into<BigUint>) -> Self {
        let c: BigUint = c.into();
        if c.is_zero() || b.is_zero() {
            return Self { a, b: BigRational::zero(), c: BigUint::zero() };
        }
        let (k, free) = split_square(&c);
        let b = b * BigRational::from_integer(BigInt::from_biguint(Sign::Plus, k));
        if free.is_one() {
            return Self { a: a + b, b: BigRational::zero(), c: BigUint::zero() };
        }
        Self { a, b, c: free }
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), c: BigUint::zero() }
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigUint {
        &self.c
    }

    pub fn neg(&self) -> Self {
        Self { a: -self.a.clone(), b: -self.b.clone(), c: self.c.clone() }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_zero() {
            return write!(f, "{}", fmt_compact(&self.a));
        }
        write!(f, "{} + ({})*sqrt({})", fmt_compact(&self.a), fmt_compact(&self.b), self.c)
    }
}

/// Writes c = k² · free with free square-free. Trial division; radicands are tiny.
fn split_square(c: &BigUint) -> (BigUint, BigUint) {
    let mut k = BigUint::one();
    let mut free = BigUint::one();
    let mut rest = c.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            k *= Pow::pow(&p, e / 2);
            if e % 2 == 1 {
                free *= &p;
            }
        }
        p += 1u32;
    }
    free *= rest;
    (k, free)
}

/// Exact ordering of `a + b√c` against the rational `r`.
///
/// Isolates the radical: sign(a - r + b√c) is read off from the signs of
/// `u = a - r` and `b`, squaring only when they disagree.
pub fn compare_surd(s: &QuadraticSurd, r: &BigRational) -> Ordering {
    let u = &s.a - r;
    if s.c.is_zero() || s.b.is_zero() {
        return u.cmp(&BigRational::zero());
    }
    let c = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, s.c.clone()));
    let rad_sq = &s.b * &s.b * c; // (b√c)², positive
    let u_sq = &u * &u;
    match (u.cmp(&BigRational::zero()), s.b.is_positive()) {
        (Ordering::Equal, true) | (Ordering::Greater, true) => Ordering::Greater,
        (Ordering::Equal, false) | (Ordering::Less, false) => Ordering::Less,
        // u < 0 < b√c: compare b√c with |u|
        (Ordering::Less, true) => rad_sq.cmp(&u_sq),
        // b√c < 0 < u: compare u with |b√c|
        (Ordering::Greater, false) => u_sq.cmp(&rad_sq),
    }
}

/// Integer square root floor, exposed for report rendering.
pub fn isqrt(n: &BigUint) -> BigUint {
    n.sqrt()
}

pub fn to_u64(r: &BigRational) -> Option<u64> {
    if r.is_integer() {
        r.numer().to_u64()
    } else {
        None
    }
}

pub fn biguint_to_rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, n.clone()))
}

pub fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}
