//! Turning section counts and colength bounds into lct lower bounds.
//!
//! A pair whose non-klt (non-lc) locus at a point has colength at least
//! `bound` cannot be cut out by fewer sections, so `h0 < bound` forces the
//! threshold above `1/(λ+1)`. Only the arithmetic is checked here; the
//! geometric hypotheses travel along as text.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binomial, fmt_ratio};
use crate::lattice::SigmaBound;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("inconclusive: h0 = {h0} does not beat the colength bound {bound}")]
    Inconclusive { h0: BigUint, bound: String },
    #[error("bad argument: {0}")]
    BadArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Flavor {
    /// bounded by σ̄; yields a strict conclusion
    NonKlt,
    /// bounded by σ; yields a non-strict conclusion
    NonLc,
}

/// Lower bound on the colength of a non-klt or non-lc locus at exponent `1/λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColengthBound {
    /// σ-subscript convention: the conclusion is `1/(λ+1)`.
    pub lambda: BigRational,
    pub bound: BigRational,
    /// `true` when the colength is known to be strictly greater than `bound`.
    pub bound_strict: bool,
    pub flavor: Flavor,
}

impl ColengthBound {
    pub fn new(lambda: BigRational, bound: BigRational, bound_strict: bool, flavor: Flavor) -> Result<Self, CertError> {
        if bound <= BigRational::zero() {
            return Err(CertError::BadArgument("bound must be positive".into()));
        }
        if lambda <= BigRational::zero() {
            return Err(CertError::BadArgument("λ must be positive".into()));
        }
        Ok(Self { lambda, bound, bound_strict, flavor })
    }

    /// Wraps a σ or σ̄ bound: σ̄ bounds non-klt colength, σ non-lc colength.
    pub fn from_sigma(lambda: BigRational, b: &SigmaBound) -> Result<Self, CertError> {
        let flavor = if b.for_strict_sigma { Flavor::NonLc } else { Flavor::NonKlt };
        Self::new(lambda, b.value.clone(), b.bound_strict, flavor)
    }

    /// A smooth point of an n-fold: the only colength-one ideal is the maximal
    /// ideal, whose threshold is n, so a non-lc locus at exponent n has
    /// colength at least 2.
    pub fn smooth_point(n: u64) -> Self {
        Self {
            lambda: BigRational::new(BigInt::one(), BigInt::from(n)),
            bound: BigRational::from_integer(BigInt::from(2)),
            bound_strict: false,
            flavor: Flavor::NonLc,
        }
    }

    /// Whether `h0` sections are too few to cut out such a locus.
    pub fn admits(&self, h0: &BigUint) -> bool {
        let h = BigRational::from_integer(BigInt::from(h0.clone()));
        if self.bound_strict {
            h <= self.bound
        } else {
            h < self.bound
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LctCertificate {
    pub h0: BigUint,
    pub colength_bound: Option<ColengthBound>,
    pub conclusion: BigRational,
    pub conclusion_strict: bool,
    /// Geometric hypotheses, recorded but not checked.
    pub assumptions: Vec<String>,
}

impl LctCertificate {
    /// `lct > c` or `lct >= c`.
    pub fn statement(&self) -> String {
        let rel = if self.conclusion_strict { ">" } else { ">=" };
        format!("lct {rel} {}", fmt_ratio(&self.conclusion))
    }
}

pub const STANDARD_ASSUMPTIONS: [&str; 2] = [
    "L - (K_X + Δ + D) is nef and big",
    "(X, Δ + D) is klt outside a finite set of points",
];

/// `1/(λ+1)` from the σ-subscript λ.
pub fn conclusion_from_sigma_lambda(lambda: &BigRational) -> BigRational {
    (lambda + BigRational::one()).recip()
}

/// Converts the σ-subscript λ to the exponent convention `λ' = 1/λ`.
pub fn exponent_lambda(lambda: &BigRational) -> BigRational {
    lambda.recip()
}

/// `λ'/(λ'+1)` in the exponent convention; equals `1/(λ+1)` for `λ' = 1/λ`.
pub fn conclusion_from_exponent_lambda(lambda_prime: &BigRational) -> BigRational {
    lambda_prime / (lambda_prime + BigRational::one())
}

pub fn certify_lct(h0: &BigUint, cb: &ColengthBound) -> Result<LctCertificate, CertError> {
    let assumptions = STANDARD_ASSUMPTIONS.iter().map(|s| s.to_string()).collect();
    if h0.is_zero() {
        return Ok(LctCertificate {
            h0: h0.clone(),
            colength_bound: Some(cb.clone()),
            conclusion: BigRational::one(),
            conclusion_strict: false,
            assumptions,
        });
    }
    if !cb.admits(h0) {
        return Err(CertError::Inconclusive { h0: h0.clone(), bound: fmt_ratio(&cb.bound) });
    }
    Ok(LctCertificate {
        h0: h0.clone(),
        colength_bound: Some(cb.clone()),
        conclusion: conclusion_from_sigma_lambda(&cb.lambda),
        conclusion_strict: cb.flavor == Flavor::NonKlt,
        assumptions,
    })
}

/// Largest number of disjoint bad points, each needing `per_point` sections.
pub fn max_bad_points(h0: u64, per_point: u64) -> Result<u64, CertError> {
    if per_point == 0 {
        return Err(CertError::BadArgument("per-point bound must be at least 1".into()));
    }
    Ok(h0 / per_point)
}

/// `h^0(P^N, O(d)) = C(N+d, d)`.
pub fn h0_projective(big_n: u64, d: u64) -> Result<BigUint, CertError> {
    if big_n == 0 {
        return Err(CertError::BadArgument("N must be at least 1".into()));
    }
    Ok(binomial(big_n + d, d))
}

/// Sections of `kH` on a K3 surface with `(H^2) = h2`: `k²h2/2 + 2` for `k >= 1`.
pub fn h0_k3(k: u64, h2: u64) -> Result<BigUint, CertError> {
    if h2 == 0 || h2 % 2 == 1 {
        return Err(CertError::BadArgument("H^2 must be even and positive".into()));
    }
    if k == 0 {
        return Ok(BigUint::one());
    }
    Ok(BigUint::from(k) * k * h2 / 2u32 + 2u32)
}
