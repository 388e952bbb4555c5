//! Exact univariate and piecewise polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::KError;
use crate::arith::{binomial, biguint_to_rational, fmt_ratio, int, parse_rational, Decision};

/// Coefficients in ascending degree, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `a + b·x`
    pub fn linear(a: BigRational, b: BigRational) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Polynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    /// `x·p(x)`
    pub fn shift_up(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![BigRational::zero()];
        v.extend(self.coeffs.iter().cloned());
        Polynomial::new(v)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    /// Antiderivative vanishing at 0.
    pub fn antiderivative(&self) -> Polynomial {
        let mut v = vec![BigRational::zero()];
        v.extend(self.coeffs.iter().enumerate().map(|(i, c)| c / int(i as i64 + 1)));
        Polynomial::new(v)
    }

    pub fn integrate(&self, a: &BigRational, b: &BigRational) -> BigRational {
        let f = self.antiderivative();
        f.eval(b) - f.eval(a)
    }

    /// `p(a + b·t)` as a polynomial in t.
    pub fn compose_linear(&self, a: &BigRational, b: &BigRational) -> Polynomial {
        let lin = Polynomial::linear(a.clone(), b.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| acc.mul(&lin).add(&Polynomial::constant(c.clone())))
    }

    /// Bernstein coefficients on `[lo, hi]`; the polynomial lies between
    /// their minimum and maximum there.
    pub fn bernstein(&self, lo: &BigRational, hi: &BigRational) -> Vec<BigRational> {
        let q = self.compose_linear(lo, &(hi - lo));
        let d = q.degree();
        let zero = BigRational::zero();
        (0..=d)
            .map(|i| {
                (0..=i)
                    .map(|k| {
                        let ck = q.coeffs.get(k).unwrap_or(&zero);
                        ck * biguint_to_rational(&binomial(i as u64, k as u64))
                            / biguint_to_rational(&binomial(d as u64, k as u64))
                    })
                    .sum()
            })
            .collect()
    }

    /// Decides `p >= 0` on `[lo, hi]` by Bernstein bounds with bisection.
    pub fn nonnegative_on(&self, lo: &BigRational, hi: &BigRational, depth: u32) -> Decision {
        if self.eval(lo).is_negative() || self.eval(hi).is_negative() {
            return Decision::False;
        }
        let b = self.bernstein(lo, hi);
        if b.iter().all(|c| !c.is_negative()) {
            return Decision::True;
        }
        let mid = (lo + hi) / int(2);
        if self.eval(&mid).is_negative() {
            return Decision::False;
        }
        if depth == 0 {
            return Decision::Inconclusive;
        }
        self.nonnegative_on(lo, &mid, depth - 1).and(self.nonnegative_on(&mid, hi, depth - 1))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => fmt_ratio(c),
                1 => format!("{}·x", fmt_ratio(c)),
                _ => format!("{}·x^{i}", fmt_ratio(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Polynomial pieces on consecutive intervals `[b_i, b_{i+1}]`, continuous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<BigRational>,
    pieces: Vec<Polynomial>,
}

const BISECTION_DEPTH: u32 = 12;

impl PiecewisePolynomial {
    pub fn new(breakpoints: Vec<BigRational>, pieces: Vec<Polynomial>) -> Result<Self, KError> {
        if pieces.is_empty() || breakpoints.len() != pieces.len() + 1 {
            return Err(KError::Malformed("need one more breakpoint than pieces".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(KError::Malformed("breakpoints must increase".into()));
        }
        for i in 1..pieces.len() {
            let x = &breakpoints[i];
            if pieces[i - 1].eval(x) != pieces[i].eval(x) {
                return Err(KError::Discontinuous { at: fmt_ratio(x) });
            }
        }
        Ok(Self { breakpoints, pieces })
    }

    pub fn single(lo: BigRational, hi: BigRational, p: Polynomial) -> Result<Self, KError> {
        Self::new(vec![lo, hi], vec![p])
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Polynomial] {
        &self.pieces
    }

    pub fn start(&self) -> &BigRational {
        &self.breakpoints[0]
    }

    pub fn end(&self) -> &BigRational {
        self.breakpoints.last().unwrap()
    }

    pub fn intervals(&self) -> impl Iterator<Item = (&BigRational, &BigRational, &Polynomial)> {
        self.breakpoints.windows(2).zip(&self.pieces).map(|(w, p)| (&w[0], &w[1], p))
    }

    /// Value at `x`, `None` outside the domain.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        if x < self.start() || x > self.end() {
            return None;
        }
        self.intervals().find(|(_, hi, _)| x <= *hi).map(|(_, _, p)| p.eval(x))
    }

    pub fn integral(&self) -> BigRational {
        self.intervals().map(|(lo, hi, p)| p.integrate(lo, hi)).sum()
    }

    /// `∫ x·f(x) dx` over the domain.
    pub fn first_moment(&self) -> BigRational {
        self.intervals().map(|(lo, hi, p)| p.shift_up().integrate(lo, hi)).sum()
    }

    pub fn map_pieces(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Result<Self, KError> {
        Self::new(self.breakpoints.clone(), self.pieces.iter().map(f).collect())
    }

    pub fn certify_nonnegative(&self) -> Decision {
        self.intervals()
            .map(|(lo, hi, p)| p.nonnegative_on(lo, hi, BISECTION_DEPTH))
            .fold(Decision::True, Decision::and)
    }

    /// Nonincreasing on the whole domain (continuity makes pieces suffice).
    pub fn certify_nonincreasing(&self) -> Decision {
        self.intervals()
            .map(|(lo, hi, p)| p.derivative().scale(&-BigRational::one()).nonnegative_on(lo, hi, BISECTION_DEPTH))
            .fold(Decision::True, Decision::and)
    }

    /// `k + 1` evenly spaced points of the domain.
    pub fn grid(&self, k: u64) -> Vec<BigRational> {
        let (lo, hi) = (self.start().clone(), self.end().clone());
        (0..=k).map(|i| &lo + (&hi - &lo) * BigRational::new(BigInt::from(i), BigInt::from(k.max(1)))).collect()
    }

    /// The restriction to `[start, x]`, where `x` must be a breakpoint.
    pub fn head(&self, x: &BigRational) -> Option<Self> {
        let k = self.breakpoints.iter().position(|b| b == x)?;
        if k == 0 {
            return None;
        }
        Some(Self { breakpoints: self.breakpoints[..=k].to_vec(), pieces: self.pieces[..k].to_vec() })
    }

    /// Appends a zero piece on `[end, to]`; only valid when the function ends at 0.
    pub fn with_zero_tail(&self, to: BigRational) -> Result<Self, KError> {
        let mut b = self.breakpoints.clone();
        let mut p = self.pieces.clone();
        b.push(to);
        p.push(Polynomial::zero());
        Self::new(b, p)
    }
}

/// Text form of curves and profiles: rationals as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    pub from: String,
    pub to: String,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveFile {
    pub n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    pub pieces: Vec<PieceRecord>,
}

pub(crate) fn parse_field(s: &str) -> Result<BigRational, KError> {
    parse_rational(s).map_err(|e| KError::Malformed(e.to_string()))
}

impl CurveFile {
    pub fn function(&self) -> Result<PiecewisePolynomial, KError> {
        if self.pieces.is_empty() {
            return Err(KError::Malformed("no pieces".into()));
        }
        let mut breakpoints = vec![parse_field(&self.pieces[0].from)?];
        let mut polys = Vec::new();
        for (i, piece) in self.pieces.iter().enumerate() {
            let from = parse_field(&piece.from)?;
            if from != breakpoints[i] {
                return Err(KError::Malformed(format!("piece {i} does not start where the previous one ends")));
            }
            breakpoints.push(parse_field(&piece.to)?);
            polys.push(Polynomial::new(piece.coeffs.iter().map(|c| parse_field(c)).collect::<Result<_, _>>()?));
        }
        PiecewisePolynomial::new(breakpoints, polys)
    }

    pub fn from_function(n: u64, eta: Option<&BigRational>, tau: Option<&BigRational>, f: &PiecewisePolynomial) -> Self {
        Self {
            n,
            eta: eta.map(fmt_ratio),
            tau: tau.map(fmt_ratio),
            pieces: f
                .intervals()
                .map(|(lo, hi, p)| PieceRecord {
                    from: fmt_ratio(lo),
                    to: fmt_ratio(hi),
                    coeffs: if p.is_zero() { vec!["0/1".into()] } else { p.coeffs().iter().map(fmt_ratio).collect() },
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[1, 1]); // 1 + x
        assert_eq!(p.pow(3), poly(&[1, 3, 3, 1]));
        assert_eq!(p.mul(&poly(&[-1, 1])), poly(&[-1, 0, 1]));
        assert_eq!(poly(&[0, 0, 3]).derivative(), poly(&[0, 6]));
        assert_eq!(poly(&[2]).antiderivative(), poly(&[0, 2]));
        assert_eq!(poly(&[0, 1]).integrate(&int(0), &int(2)), int(2));
        assert_eq!(poly(&[1, 2, 0, 0]).degree(), 1);
        // (2 - x)^2 at x = 1 + t is (1 - t)^2
        assert_eq!(poly(&[4, -4, 1]).compose_linear(&int(1), &int(1)), poly(&[1, -2, 1]));
    }

    #[test]
    fn bernstein_certificates() {
        // (x - 1/2)^2 >= 0 on [0,1] needs subdivision
        let p = poly(&[1, -4, 4]).scale(&ratio(1, 4));
        assert_eq!(p.nonnegative_on(&int(0), &int(1), 12), Decision::True);
        let q = poly(&[-1, 0, 4]); // 4x² - 1 < 0 near 0
        assert_eq!(q.nonnegative_on(&int(0), &int(1), 12), Decision::False);
        assert_eq!(poly(&[1, 1]).bernstein(&int(0), &int(1)), vec![int(1), int(2)]);
    }

    #[test]
    fn piecewise_checks() {
        let f = PiecewisePolynomial::new(vec![int(0), ratio(1, 2), int(1)], vec![poly(&[1, -1]), poly(&[0, 1])]).unwrap();
        assert_eq!(f.eval(&ratio(1, 2)), Some(ratio(1, 2)));
        assert_eq!(f.eval(&int(2)), None);
        assert_eq!(f.integral(), ratio(3, 4));
        assert_eq!(f.certify_nonnegative(), Decision::True);
        assert_eq!(f.certify_nonincreasing(), Decision::False);
        let bad = PiecewisePolynomial::new(vec![int(0), int(1), int(2)], vec![poly(&[1]), poly(&[2])]);
        assert!(matches!(bad, Err(KError::Discontinuous { .. })));
        assert!(PiecewisePolynomial::new(vec![int(1), int(0)], vec![poly(&[1])]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let f = PiecewisePolynomial::new(vec![int(0), int(1), int(2)], vec![poly(&[0, 0, 1]), poly(&[4, -4, 1])]).unwrap();
        let file = CurveFile::from_function(3, Some(&int(1)), Some(&int(2)), &f);
        let json = serde_json::to_string(&file).unwrap();
        let back: CurveFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.function().unwrap(), f);
        assert!(json.contains("\"eta\":\"1/1\""));
    }
}
