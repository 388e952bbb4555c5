//! Dimension thresholds for Fano complete intersections.
//!
//! Each check compares a section count (a binomial coefficient) with a
//! certified lower bound for σ̄ or σ, exactly in integers or rationals. The
//! three families are the lct bound for complete intersections (`LCT_CPI`),
//! the superrigidity bound (`SUPERRIGID`) and the conditional bound for
//! higher index (`CONDITIONAL`).

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{binomial, compare_pow2_fractional, e_enclosure, fmt_ratio, pow2, power_over_factorial, Decision};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("enclosure of e too coarse at a = {a}; retry with more digits")]
    InconclusivePrecision { a: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Cert {
    Volume,
    Cube,
    #[serde(rename = "PICK2D_NA")]
    Pick2dNa,
    Block,
    Best,
}

impl Cert {
    pub const SINGLE: [Cert; 4] = [Cert::Volume, Cert::Cube, Cert::Pick2dNa, Cert::Block];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Which {
    LctCpi,
    Superrigid,
    Conditional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rel {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
}

/// One evaluated inequality `lhs rel rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdRow {
    pub n: u64,
    pub lhs: BigUint,
    /// `None` when no selected certificate applies at this n.
    pub rhs: Option<BigRational>,
    pub rel: Rel,
    pub cert_used: Option<Cert>,
    pub pass: bool,
    /// Conditional family only: the strict real-exponent form.
    pub strict_form_pass: Option<bool>,
}

impl ThresholdRow {
    pub fn rhs_string(&self) -> String {
        match &self.rhs {
            Some(r) => fmt_ratio(r),
            None => "n/a".into(),
        }
    }
}

/// Lower bounds for σ̄_{k,1}, as `(value, rel)` meaning the check is `lhs rel value`.
fn sigma_bar_bound(k: u64, cert: Cert, rel_as_printed: Rel) -> Option<(BigRational, Rel)> {
    let int = |v: BigUint| BigRational::from_integer(BigInt::from(v));
    match cert {
        // σ̄ > k^k/k!; the printed relation is used as is
        Cert::Volume if k >= 2 => Some((power_over_factorial(k), rel_as_printed)),
        Cert::Cube if k >= 1 => Some((int(pow2(k) - 1u32), Rel::Lt)),
        // σ̄_{2,1} >= 3 from the Pick bound
        Cert::Pick2dNa if k == 2 => Some((int(BigUint::from(3u32)), Rel::Lt)),
        _ => None,
    }
}

fn holds(lhs: &BigUint, rhs: &BigRational, rel: Rel) -> bool {
    let l = BigRational::from_integer(BigInt::from(lhs.clone()));
    match rel {
        Rel::Lt => &l < rhs,
        Rel::Le => &l <= rhs,
    }
}

fn evaluate(n: u64, lhs: BigUint, k: u64, cert: Cert, printed: Rel) -> ThresholdRow {
    let candidates: Vec<Cert> = if cert == Cert::Best { Cert::SINGLE.to_vec() } else { vec![cert] };
    let mut chosen: Option<(Cert, BigRational, Rel, bool)> = None;
    for c in candidates {
        if let Some((rhs, rel)) = sigma_bar_bound(k, c, printed) {
            let pass = holds(&lhs, &rhs, rel);
            let replace = match &chosen {
                None => true,
                Some((_, _, _, p)) => pass && !p,
            };
            if replace {
                chosen = Some((c, rhs, rel, pass));
            }
        }
    }
    match chosen {
        Some((c, rhs, rel, pass)) => {
            ThresholdRow { n, lhs, rhs: Some(rhs), rel, cert_used: Some(c), pass, strict_form_pass: None }
        }
        None => ThresholdRow { n, lhs, rhs: None, rel: printed, cert_used: None, pass: false, strict_form_pass: None },
    }
}

/// Section count `C(n+r, r-1)` against the σ̄_{n-r+1,1} bound.
pub fn lct_cpi_row(n: u64, r: u64, cert: Cert) -> Result<ThresholdRow, ThresholdError> {
    if r == 0 || n <= r {
        return Err(ThresholdError::BadArgument("need n > r >= 1".into()));
    }
    Ok(evaluate(n, binomial(n + r, r - 1), n - r + 1, cert, Rel::Le))
}

pub fn check_lct_cpi(n: u64, r: u64, cert: Cert) -> Result<bool, ThresholdError> {
    Ok(lct_cpi_row(n, r, cert)?.pass)
}

/// Section count `C(n+r+1, 2r)` against the σ̄_{n-2r+1,1} bound, strictly.
pub fn superrigid_row(n: u64, r: u64, cert: Cert) -> Result<ThresholdRow, ThresholdError> {
    if r == 0 || n + 1 <= 2 * r {
        return Err(ThresholdError::BadArgument("need n > 2r - 1 and r >= 1".into()));
    }
    Ok(evaluate(n, binomial(n + r + 1, 2 * r), n - 2 * r + 1, cert, Rel::Lt))
}

pub fn check_superrigidity_dim(n: u64, r: u64, cert: Cert) -> Result<bool, ThresholdError> {
    Ok(superrigid_row(n, r, cert)?.pass)
}

/// `C(n+m+r, mr+m+r-1)` against the block bound for σ_{n,1/m}.
///
/// The implemented form is `C^m <= 2^(n-m)`: together with
/// `σ_{n,1/m} >= 2^⌊n/m⌋ > 2^((n-m)/m)` it certifies `C < σ`. The strict
/// real-exponent form `C < 2^(n/m - 1)` is reported alongside.
pub fn conditional_row(n: u64, r: u64, m: u64) -> Result<ThresholdRow, ThresholdError> {
    if n == 0 || r == 0 || m == 0 {
        return Err(ThresholdError::BadArgument("need n, r, m >= 1".into()));
    }
    let lhs = binomial(n + m + r, m * r + m + r - 1);
    let p = n as i64 - m as i64;
    let m32 = u32::try_from(m).map_err(|_| ThresholdError::BadArgument("m too large".into()))?;
    let (pass, strict_form) = if lhs.is_zero() {
        (true, true)
    } else {
        let ord = compare_pow2_fractional(&lhs, p, m32);
        (ord != Ordering::Greater, ord == Ordering::Less)
    };
    // rhs shown as the integer 2^(n-m) that C^m is compared with
    let rhs = (p >= 0).then(|| BigRational::from_integer(BigInt::from(pow2(p as u64))));
    Ok(ThresholdRow {
        n,
        lhs,
        rhs,
        rel: Rel::Le,
        cert_used: Some(Cert::Block),
        pass,
        strict_form_pass: Some(strict_form),
    })
}

pub fn check_conditional(n: u64, r: u64, m: u64) -> Result<bool, ThresholdError> {
    Ok(conditional_row(n, r, m)?.pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdQuery {
    pub r: u64,
    pub m: u64,
    pub cert: Cert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimStatus {
    Verified,
    #[serde(rename = "VALID-BUT-NOT-MINIMAL")]
    ValidButNotMinimal,
    #[serde(rename = "NOT-REPRODUCED-BY-STATED-CERTIFICATE")]
    NotReproducedByStatedCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdReport {
    pub query: ThresholdQuery,
    pub which: Which,
    pub limit: u64,
    /// First n of the table: the smallest n the family is defined for.
    pub start: u64,
    pub minimal_n: Option<u64>,
    pub claimed_n: Option<u64>,
    pub claim_status: Option<ClaimStatus>,
    /// Every n in `[minimal_n, limit]` passes.
    pub monotone_tail: bool,
    /// n in the tail that fail: reported defects.
    pub non_monotone: Vec<u64>,
    /// Minimal n under the strict real-exponent form (conditional family).
    pub strict_form_minimal_n: Option<u64>,
    pub table: Vec<ThresholdRow>,
}

impl ThresholdReport {
    pub fn claim_verified(&self) -> bool {
        matches!(self.claim_status, Some(ClaimStatus::Verified | ClaimStatus::ValidButNotMinimal))
    }

    pub fn row(&self, n: u64) -> Option<&ThresholdRow> {
        self.table.iter().find(|r| r.n == n)
    }

    /// Classifies a claimed sufficient dimension against this table.
    pub fn classify(&self, claim: u64) -> ClaimStatus {
        let claim_ok = self.table.iter().filter(|r| r.n >= claim).all(|r| r.pass)
            && self.table.iter().any(|r| r.n >= claim);
        match (claim_ok, self.minimal_n) {
            (true, Some(m)) if m == claim => ClaimStatus::Verified,
            (true, _) => ClaimStatus::ValidButNotMinimal,
            (false, _) => ClaimStatus::NotReproducedByStatedCertificate,
        }
    }
}

/// Smallest n in the family's domain up to `limit` that passes, with the
/// full table and a tail check.
pub fn min_n(query: ThresholdQuery, which: Which, limit: u64) -> Result<ThresholdReport, ThresholdError> {
    if limit == 0 || query.r == 0 || query.m == 0 {
        return Err(ThresholdError::BadArgument("need limit, r, m >= 1".into()));
    }
    let r = query.r;
    let start = match which {
        Which::LctCpi => r + 1,
        Which::Superrigid => 2 * r,
        // the cut-down linear section has dimension n - (m+1)r + 1 >= 1
        Which::Conditional => (query.m + 1) * r,
    };
    let mut table = Vec::new();
    for n in start..=limit.max(start) {
        if n > limit {
            break;
        }
        let row = match which {
            Which::LctCpi => lct_cpi_row(n, r, query.cert)?,
            Which::Superrigid => superrigid_row(n, r, query.cert)?,
            Which::Conditional => conditional_row(n, r, query.m)?,
        };
        table.push(row);
    }
    let minimal_n = table.iter().find(|row| row.pass).map(|row| row.n);
    let non_monotone: Vec<u64> = match minimal_n {
        // rows where the certificate does not apply are not defects
        Some(m) => table.iter().filter(|row| row.n >= m && !row.pass && row.rhs.is_some()).map(|row| row.n).collect(),
        None => vec![],
    };
    let strict_form_minimal_n = table.iter().find(|row| row.strict_form_pass == Some(true)).map(|row| row.n);
    Ok(ThresholdReport {
        query,
        which,
        limit,
        start,
        minimal_n,
        claimed_n: None,
        claim_status: None,
        monotone_tail: minimal_n.is_some() && non_monotone.is_empty(),
        non_monotone,
        strict_form_minimal_n,
        table,
    })
}

/// `N(r, m)`: minimal n for the conditional family, optionally classifying a
/// claimed value.
#[allow(non_snake_case)]
pub fn conditional_N(r: u64, m: u64, limit: u64, claim: Option<u64>) -> Result<ThresholdReport, ThresholdError> {
    let mut rep = min_n(ThresholdQuery { r, m, cert: Cert::Block }, Which::Conditional, limit)?;
    if let Some(c) = claim {
        rep.claimed_n = Some(c);
        rep.claim_status = Some(rep.classify(c));
    }
    Ok(rep)
}

/// A dimension claim stated as data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub description: String,
    pub which: Which,
    pub query: ThresholdQuery,
    pub claimed_n: u64,
}

/// Dimension claims for concrete parameters, with the certificate each
/// claim is stated under.
pub fn claim_registry() -> Vec<Claim> {
    let q = |r, m, cert| ThresholdQuery { r, m, cert };
    let mut out = vec![
        Claim {
            id: "lct-cpi-r2-n4".into(),
            description: "codimension 2: section bound holds from dimension 4 (cube bound)".into(),
            which: Which::LctCpi,
            query: q(2, 1, Cert::Cube),
            claimed_n: 4,
        },
        Claim {
            id: "superrigid-r2-n12".into(),
            description: "codimension 2: superrigidity bound holds from dimension 12".into(),
            which: Which::Superrigid,
            query: q(2, 1, Cert::Best),
            claimed_n: 12,
        },
        Claim {
            id: "conditional-N12-36".into(),
            description: "conditional bound with r = 1, m = 2 holds from dimension 36".into(),
            which: Which::Conditional,
            query: q(1, 2, Cert::Block),
            claimed_n: 36,
        },
        Claim {
            id: "conditional-N14-200".into(),
            description: "conditional bound with r = 1, m = 4 holds from dimension 200".into(),
            which: Which::Conditional,
            query: q(1, 4, Cert::Block),
            claimed_n: 200,
        },
    ];
    for r in 1..=10u64 {
        out.push(Claim {
            id: format!("lct-cpi-6r-r{r}"),
            description: "section bound holds from dimension 6r (volume bound)".into(),
            which: Which::LctCpi,
            query: q(r, 1, Cert::Volume),
            claimed_n: 6 * r,
        });
    }
    for r in 1..=10u64 {
        out.push(Claim {
            id: format!("superrigid-10r-r{r}"),
            description: "superrigidity bound holds from dimension 10r (volume bound)".into(),
            which: Which::Superrigid,
            query: q(r, 1, Cert::Volume),
            claimed_n: 10 * r,
        });
    }
    out
}

/// Evaluates a claim with a table reaching `limit` (at least the claim itself).
pub fn evaluate_claim(claim: &Claim, limit: u64) -> Result<ThresholdReport, ThresholdError> {
    let mut rep = min_n(claim.query, claim.which, limit.max(claim.claimed_n))?;
    rep.claimed_n = Some(claim.claimed_n);
    rep.claim_status = Some(rep.classify(claim.claimed_n));
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SufficiencyReport {
    pub digits: u32,
    /// `2^(a-1) >= e(a+1)` for a in [6, a_max]
    pub first: Vec<(u64, Decision)>,
    /// `2^a >= (e²/4)(a+3)²` for a in [9, a_max]
    pub second: Vec<(u64, Decision)>,
    pub direct_lct_cpi: Vec<(u64, bool)>,
    pub direct_superrigid: Vec<(u64, bool)>,
}

impl SufficiencyReport {
    pub fn all_pass(&self) -> bool {
        self.first.iter().chain(&self.second).all(|(_, d)| *d == Decision::True)
            && self.direct_lct_cpi.iter().chain(&self.direct_superrigid).all(|(_, ok)| *ok)
    }
}

/// Certifies the two elementary inequalities that reduce the dimension
/// bounds to `n >= 6r` and `n >= 10r`, and rechecks those bounds directly.
pub fn verify_sufficiency_reductions(r_max: u64, a_max: u64, digits: u32) -> Result<SufficiencyReport, ThresholdError> {
    if r_max == 0 || a_max == 0 {
        return Err(ThresholdError::BadArgument("need r_max, a_max >= 1".into()));
    }
    if digits > crate::arith::MAX_E_DIGITS {
        return Err(ThresholdError::BadArgument(format!("at most {} digits", crate::arith::MAX_E_DIGITS)));
    }
    let e = e_enclosure(1, digits);
    let e2_quarter = e_enclosure(2, digits).scale(&BigRational::new(BigInt::from(1), BigInt::from(4)));
    let rat = |v: BigUint| BigRational::from_integer(BigInt::from(v));
    let mut first = Vec::new();
    for a in 6..=a_max {
        let rhs = e.scale(&BigRational::from_integer(BigInt::from(a + 1)));
        let d = rhs.is_dominated_by(&rat(pow2(a - 1)));
        if d == Decision::Inconclusive {
            return Err(ThresholdError::InconclusivePrecision { a });
        }
        first.push((a, d));
    }
    let mut second = Vec::new();
    for a in 9..=a_max {
        let sq = BigRational::from_integer(BigInt::from((a + 3) * (a + 3)));
        let rhs = e2_quarter.scale(&sq);
        let d = rhs.is_dominated_by(&rat(pow2(a)));
        if d == Decision::Inconclusive {
            return Err(ThresholdError::InconclusivePrecision { a });
        }
        second.push((a, d));
    }
    let mut direct_lct_cpi = Vec::new();
    let mut direct_superrigid = Vec::new();
    for r in 1..=r_max {
        direct_lct_cpi.push((r, check_lct_cpi(6 * r, r, Cert::Volume)?));
        direct_superrigid.push((r, check_superrigidity_dim(10 * r, r, Cert::Volume)?));
    }
    Ok(SufficiencyReport { digits, first, second, direct_lct_cpi, direct_superrigid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn q(r: u64, cert: Cert) -> ThresholdQuery {
        ThresholdQuery { r, m: 1, cert }
    }

    #[test]
    fn lct_cpi_examples() {
        assert!(check_lct_cpi(4, 2, Cert::Cube).unwrap());
        assert!(!check_lct_cpi(3, 2, Cert::Cube).unwrap());
        let row = lct_cpi_row(12, 2, Cert::Volume).unwrap();
        assert_eq!(row.lhs, BigUint::from(14u32));
        assert!(row.pass);
        assert!(check_lct_cpi(2, 3, Cert::Cube).is_err());
    }

    #[test]
    fn superrigid_examples() {
        assert!(check_superrigidity_dim(20, 2, Cert::Volume).unwrap());
        let row = superrigid_row(12, 2, Cert::Volume).unwrap();
        assert_eq!(row.lhs, BigUint::from(1365u32));
        assert_eq!(row.rhs, Some(ratio(387420489, 362880)));
        assert!(!row.pass);
        let row = superrigid_row(13, 2, Cert::Volume).unwrap();
        assert_eq!(row.lhs, BigUint::from(1820u32));
        assert_eq!(row.rhs, Some(ratio(10_000_000_000, 3628800)));
        assert!(row.pass);
    }

    #[test]
    fn minimal_dimensions() {
        let rep = min_n(q(2, Cert::Cube), Which::LctCpi, 60).unwrap();
        assert_eq!(rep.minimal_n, Some(4));
        assert!(rep.monotone_tail);
        assert_eq!(min_n(q(2, Cert::Volume), Which::Superrigid, 60).unwrap().minimal_n, Some(13));
        let rep = min_n(q(1, Cert::Volume), Which::Superrigid, 60).unwrap();
        assert_eq!(rep.minimal_n, Some(7));
        assert_eq!(rep.row(6).unwrap().lhs, BigUint::from(28u32));
        assert!(!rep.row(6).unwrap().pass);
        assert_eq!(rep.row(7).unwrap().lhs, BigUint::from(36u32));
        let rep = min_n(q(2, Cert::Cube), Which::Superrigid, 60).unwrap();
        assert_eq!(rep.minimal_n, Some(15));
        assert_eq!(rep.row(14).unwrap().lhs, BigUint::from(2380u32));
        assert_eq!(rep.row(14).unwrap().rhs, Some(int(2047)));
        assert_eq!(rep.row(15).unwrap().lhs, BigUint::from(3060u32));
        let rep = min_n(q(2, Cert::Volume), Which::Superrigid, 11).unwrap();
        assert_eq!(rep.minimal_n, None);
    }

    #[test]
    fn best_dominates_single_certificates() {
        for r in 1..=4 {
            for n in (r + 1)..=40 {
                let best = check_lct_cpi(n, r, Cert::Best).unwrap();
                for c in Cert::SINGLE {
                    if check_lct_cpi(n, r, c).unwrap() {
                        assert!(best);
                    }
                }
            }
            for n in (2 * r)..=60 {
                let best = check_superrigidity_dim(n, r, Cert::Best).unwrap();
                for c in Cert::SINGLE {
                    if check_superrigidity_dim(n, r, c).unwrap() {
                        assert!(best);
                    }
                }
            }
        }
    }

    #[test]
    fn pick_certificate_only_in_dimension_two() {
        // k = n - r + 1 = 2 for (n, r) = (2, 1): C(3, 0) = 1 < 3
        let row = lct_cpi_row(2, 1, Cert::Pick2dNa).unwrap();
        assert!(row.pass);
        assert!(lct_cpi_row(3, 1, Cert::Pick2dNa).unwrap().rhs.is_none());
    }

    #[test]
    fn conditional_examples() {
        assert!(check_conditional(36, 1, 2).unwrap());
        assert!(!check_conditional(34, 1, 2).unwrap());
        assert!(check_conditional(35, 1, 2).unwrap());
        assert!(check_conditional(200, 1, 4).unwrap());
        let row = conditional_row(34, 1, 2).unwrap();
        assert_eq!(row.lhs, BigUint::from(66045u32));
        let rep = conditional_N(1, 2, 100, Some(36)).unwrap();
        assert_eq!(rep.minimal_n, Some(35));
        assert_eq!(rep.claim_status, Some(ClaimStatus::ValidButNotMinimal));
        assert!(rep.monotone_tail);
        let rep = conditional_N(1, 4, 400, Some(200)).unwrap();
        assert!(rep.claim_verified());
        assert!(rep.minimal_n.unwrap() <= 200);
    }

    #[test]
    fn sufficiency() {
        let rep = verify_sufficiency_reductions(10, 60, 20).unwrap();
        assert!(rep.all_pass());
        // the margins are wide enough that a one-digit enclosure suffices
        assert!(verify_sufficiency_reductions(1, 10, 0).unwrap().all_pass());
        assert!(verify_sufficiency_reductions(1, 10, 99).is_err());
    }

    #[test]
    fn claims() {
        let reg = claim_registry();
        let find = |id: &str| reg.iter().find(|c| c.id == id).unwrap().clone();
        let rep = evaluate_claim(&find("lct-cpi-r2-n4"), 40).unwrap();
        assert_eq!(rep.claim_status, Some(ClaimStatus::Verified));
        let rep = evaluate_claim(&find("superrigid-r2-n12"), 60).unwrap();
        assert_eq!(rep.claim_status, Some(ClaimStatus::NotReproducedByStatedCertificate));
        assert_eq!(rep.minimal_n, Some(13));
        let rep = evaluate_claim(&find("superrigid-10r-r3"), 80).unwrap();
        assert_eq!(rep.claim_status, Some(ClaimStatus::ValidButNotMinimal));
    }
}
