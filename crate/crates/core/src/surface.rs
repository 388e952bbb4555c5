//! Intersection forms on surfaces and the multiplicity bounds read off them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{compare_surd, int, ratio, QuadraticSurd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("dimension mismatch: form has size {form}, class has length {class}")]
    DimensionMismatch { form: usize, class: usize },
    #[error("gram matrix must be square and symmetric")]
    NotSymmetric,
    #[error("even s = 0 violates the bound")]
    NoSolution,
    #[error("self-intersection is not bounded above in s")]
    NotDownward,
    #[error("bad argument: {0}")]
    BadArgument(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    gram: Vec<Vec<i64>>,
    labels: Vec<String>,
}

impl IntersectionForm {
    pub fn new(gram: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self, SurfaceError> {
        let k = gram.len();
        if k == 0 || gram.iter().any(|r| r.len() != k) || labels.len() != k {
            return Err(SurfaceError::NotSymmetric);
        }
        if (0..k).any(|i| (0..k).any(|j| gram[i][j] != gram[j][i])) {
            return Err(SurfaceError::NotSymmetric);
        }
        Ok(Self { gram, labels })
    }

    /// Hyperplane class `H` with `H² = 6` and a line `C` with `H·C = 1`, `C² = -2`.
    pub fn sextic_k3_line() -> Self {
        Self::new(vec![vec![6, 1], vec![1, -2]], vec!["H".into(), "C".into()]).unwrap()
    }

    /// Same surface with a conic: `H·C = 2`, `C² = -2`.
    pub fn sextic_k3_conic() -> Self {
        Self::new(vec![vec![6, 2], vec![2, -2]], vec!["H".into(), "C".into()]).unwrap()
    }

    pub fn size(&self) -> usize {
        self.gram.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass(pub Vec<BigRational>);

impl DivisorClass {
    pub fn from_ints(c: &[i64]) -> Self {
        Self(c.iter().map(|&v| int(v)).collect())
    }

    pub fn basis(size: usize, i: usize) -> Self {
        Self((0..size).map(|j| int((i == j) as i64)).collect())
    }

    pub fn sub_scaled(&self, s: &BigRational, other: &DivisorClass) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - s * b).collect())
    }
}

/// `uᵀ G v`.
pub fn pairing(form: &IntersectionForm, u: &DivisorClass, v: &DivisorClass) -> Result<BigRational, SurfaceError> {
    for c in [u, v] {
        if c.0.len() != form.size() {
            return Err(SurfaceError::DimensionMismatch { form: form.size(), class: c.0.len() });
        }
    }
    let mut total = BigRational::zero();
    for (i, ui) in u.0.iter().enumerate() {
        for (j, vj) in v.0.iter().enumerate() {
            if form.gram[i][j] != 0 {
                total += ui * vj * BigRational::from_integer(BigInt::from(form.gram[i][j]));
            }
        }
    }
    Ok(total)
}

/// Largest integer `s >= 0` with `(base - s·e_curve)² >= lower`.
pub fn max_mult_from_selfint(
    form: &IntersectionForm,
    base: &DivisorClass,
    curve_index: usize,
    lower: i64,
) -> Result<u64, SurfaceError> {
    if curve_index >= form.size() {
        return Err(SurfaceError::BadArgument(format!("no basis element {curve_index}")));
    }
    let e = DivisorClass::basis(form.size(), curve_index);
    let c2 = pairing(form, &e, &e)?;
    let bc = pairing(form, base, &e)?;
    if c2.is_positive() || (c2.is_zero() && !bc.is_positive()) {
        return Err(SurfaceError::NotDownward);
    }
    let lower = int(lower);
    let f = |s: u64| -> Result<bool, SurfaceError> {
        let d = base.sub_scaled(&int(s as i64), &e);
        Ok(pairing(form, &d, &d)? >= lower)
    };
    if !f(0)? {
        return Err(SurfaceError::NoSolution);
    }
    // concave in s, so {s : f(s)} is an interval starting at 0
    let mut hi = 1u64;
    while f(hi)? {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if f(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// `d/3 + (2/3)√(M²·H)` and whether it is strictly below 4.
pub fn gamma_mult_bound(d: u64, m2h: u64) -> (QuadraticSurd, bool) {
    let v = QuadraticSurd::new(ratio(d as i64, 3), ratio(2, 3), m2h);
    let below = compare_surd(&v, &int(4)) == Ordering::Less;
    (v, below)
}
