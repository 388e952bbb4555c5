//! Log canonical thresholds and colengths of monomial ideals.
//!
//! For a monomial ideal J with Newton polytope P the threshold is
//! `lct(J) = 1/μ`, where μ is the first time the diagonal `(t, …, t)` enters
//! P. μ is the optimum of a small linear program over convex weights of the
//! generators; the dual program hands back a supporting hyperplane `a·x = 1`
//! of P at `(μ, …, μ)`. Lattice points of the open simplex `{a·x < 1}` lie
//! outside P, so they bound the colength of J from below.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::int;
use crate::lp::{LinearProgram, Relation, Sense};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("ideal has no generators")]
    Empty,
    #[error("generator {index} has dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("the unit monomial generates the whole ring")]
    UnitIdeal,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("supporting normal has a zero entry at coordinate {coordinate}; Q_a would be unbounded")]
    DegenerateNormal { coordinate: usize },
    #[error("slack must lie in (0, 1)")]
    BadSlack,
    #[error("linear program failed: {0}")]
    Lp(&'static str),
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Componentwise `self >= other`, i.e. `x^other` divides `x^self`.
    pub fn dominates(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `Some(i)` when this is a pure power of the i-th variable.
    pub fn pure_power_axis(&self) -> Option<usize> {
        let mut axis = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if axis.is_some() {
                    return None;
                }
                axis = Some(i);
            }
        }
        axis
    }
}

/// A monomial ideal held by its minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal and drops generators divisible by another generator.
    pub fn new(dim: usize, generators: Vec<ExponentVector>) -> Result<Self, MonomialError> {
        if dim == 0 {
            return Err(MonomialError::ZeroDimension);
        }
        if generators.is_empty() {
            return Err(MonomialError::Empty);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.dim() != dim {
                return Err(MonomialError::DimensionMismatch { index, expected: dim, found: g.dim() });
            }
            if g.is_zero() {
                return Err(MonomialError::UnitIdeal);
            }
        }
        let unique: BTreeSet<ExponentVector> = generators.into_iter().collect();
        let unique: Vec<ExponentVector> = unique.into_iter().collect();
        let minimal = unique
            .iter()
            .filter(|g| !unique.iter().any(|h| h != *g && g.dominates(h)))
            .cloned()
            .collect();
        Ok(Self { dim, generators: minimal })
    }

    pub fn from_rows(rows: &[&[u32]]) -> Result<Self, MonomialError> {
        let dim = rows.first().map_or(0, |r| r.len());
        Self::new(dim, rows.iter().map(|r| ExponentVector(r.to_vec())).collect())
    }

    /// The maximal ideal (x_1, …, x_n).
    pub fn maximal(dim: usize) -> Self {
        Self::power_of_maximal(dim, 1)
    }

    /// The pure-power ideal (x_1^k, …, x_n^k), which has the same Newton
    /// polytope as the k-th power of the maximal ideal.
    pub fn diagonal_powers(dim: usize, k: u32) -> Self {
        let gens = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = k;
                ExponentVector(e)
            })
            .collect();
        Self::new(dim, gens).expect("valid pure powers")
    }

    /// The k-th power of the maximal ideal: all monomials of degree k.
    pub fn power_of_maximal(dim: usize, k: u32) -> Self {
        let mut gens = Vec::new();
        let mut current = vec![0u32; dim];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(ExponentVector(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        rec(0, k, &mut current, &mut gens);
        Self::new(dim, gens).expect("valid power of the maximal ideal")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// Adds a generator and renormalizes.
    pub fn with_generator(&self, g: ExponentVector) -> Result<Self, MonomialError> {
        let mut gens = self.generators.clone();
        gens.push(g);
        Self::new(self.dim, gens)
    }

    /// Whether the monomial `x^e` lies in the ideal.
    pub fn contains(&self, e: &ExponentVector) -> bool {
        self.generators.iter().any(|g| e.dominates(g))
    }

    /// Pure power exponents per axis, when every variable has one.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        let mut bounds: Vec<Option<u32>> = vec![None; self.dim];
        for g in &self.generators {
            if let Some(i) = g.pure_power_axis() {
                let e = g.0[i];
                bounds[i] = Some(bounds[i].map_or(e, |b| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }
}

impl FromStr for MonomialIdeal {
    type Err = MonomialError;

    /// One generator per line, exponents separated by whitespace; `#` lines
    /// and blank lines are skipped.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut gens = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let exps = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>().map_err(|_| MonomialError::Parse {
                        line: idx + 1,
                        msg: format!("`{t}` is not a nonnegative integer"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            gens.push(ExponentVector(exps));
        }
        let dim = gens.first().map_or(0, |g| g.dim());
        if gens.is_empty() {
            return Err(MonomialError::Empty);
        }
        Self::new(dim, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.generators {
            let row: Vec<String> = g.0.iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The diagonal hitting time μ together with a supporting normal at `(μ,…,μ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolytopeQuery {
    pub mu: BigRational,
    pub supporting_normal: Vec<BigRational>,
}

impl NewtonPolytopeQuery {
    /// Exact check of `a·(μ,…,μ) = 1`, `a·g >= 1` for every generator and `a > 0`.
    pub fn certifies(&self, ideal: &MonomialIdeal) -> bool {
        let diag: BigRational = self.supporting_normal.iter().map(|a| a * &self.mu).sum();
        diag.is_one()
            && self.mu.is_positive()
            && self.supporting_normal.iter().all(|a| a.is_positive())
            && ideal.generators().iter().all(|g| dot_exp(&self.supporting_normal, g) >= BigRational::one())
    }
}

fn dot_exp(a: &[BigRational], g: &ExponentVector) -> BigRational {
    a.iter().zip(&g.0).map(|(ai, &e)| ai * int(e as i64)).sum()
}

/// Minimal `t` such that some convex combination of generators is `<= (t,…,t)`.
///
/// Solved through the dual with generator constraints added lazily, so
/// large generating sets cost a few small programs.
pub fn diagonal_entry_time(ideal: &MonomialIdeal) -> BigRational {
    let n = ideal.dim;
    let mut objective = vec![BigRational::zero(); n + 1];
    objective[n] = BigRational::one();
    let (_, x) = lazy_rows(ideal, objective, |lp| {
        let mut sum_row = vec![BigRational::one(); n];
        sum_row.push(BigRational::zero());
        lp.add(sum_row, Relation::Eq, BigRational::one());
    }, |g| {
        let mut row: Vec<BigRational> = g.0.iter().map(|&e| int(e as i64)).collect();
        row.push(-BigRational::one());
        (row, BigRational::zero())
    });
    x[n].clone()
}

/// The diagonal program in primal form over every generator at once.
///
/// Variables: `t` followed by one weight per generator. Kept as an
/// independent route to μ for cross-checks.
pub fn diagonal_primal_value(ideal: &MonomialIdeal) -> BigRational {
    let m = ideal.generators.len();
    let mut objective = vec![BigRational::zero(); m + 1];
    objective[0] = BigRational::one();
    let mut lp = LinearProgram::new(Sense::Minimize, objective);
    for i in 0..ideal.dim {
        // t - Σ w_j g_j[i] >= 0
        let mut row = vec![BigRational::one()];
        row.extend(ideal.generators.iter().map(|g| -int(g.0[i] as i64)));
        lp.add(row, Relation::Ge, BigRational::zero());
    }
    let mut simplex_row = vec![BigRational::zero()];
    simplex_row.extend(std::iter::repeat(BigRational::one()).take(m));
    lp.add(simplex_row, Relation::Eq, BigRational::one());
    let (mu, _) = lp.solve().optimal().expect("diagonal program is always feasible and bounded");
    mu
}

/// Dual of the diagonal program over every generator: max z with `y >= 0`,
/// `Σy = 1`, `y·g >= z`. Equals μ by strong duality.
pub fn diagonal_dual_value(ideal: &MonomialIdeal) -> BigRational {
    let n = ideal.dim;
    let mut objective = vec![BigRational::zero(); n + 1];
    objective[n] = BigRational::one();
    let mut lp = LinearProgram::new(Sense::Maximize, objective);
    let mut sum_row = vec![BigRational::one(); n];
    sum_row.push(BigRational::zero());
    lp.add(sum_row, Relation::Eq, BigRational::one());
    for g in &ideal.generators {
        let mut row: Vec<BigRational> = g.0.iter().map(|&e| int(e as i64)).collect();
        row.push(-BigRational::one());
        lp.add(row, Relation::Ge, BigRational::zero());
    }
    lp.solve().optimal().expect("dual diagonal program is feasible and bounded").0
}

/// Maximizes `objective` subject to `base` rows plus one `>=` row per
/// generator, adding only violated generator rows. Starts from the pure
/// powers (or the first generator) and adds the most violated row each
/// round, lowest index on ties.
fn lazy_rows(
    ideal: &MonomialIdeal,
    objective: Vec<BigRational>,
    base: impl Fn(&mut LinearProgram),
    row_of: impl Fn(&ExponentVector) -> (Vec<BigRational>, BigRational),
) -> (BigRational, Vec<BigRational>) {
    let rows: Vec<(Vec<BigRational>, BigRational)> = ideal.generators.iter().map(&row_of).collect();
    let mut active: Vec<usize> = (0..rows.len()).filter(|&j| ideal.generators[j].pure_power_axis().is_some()).collect();
    if active.is_empty() {
        active.push(0);
    }
    loop {
        let mut lp = LinearProgram::new(Sense::Maximize, objective.clone());
        base(&mut lp);
        for &j in &active {
            lp.add(rows[j].0.clone(), Relation::Ge, rows[j].1.clone());
        }
        let (value, x) = lp.solve().optimal().expect("relaxed program is feasible and bounded");
        let worst = rows
            .iter()
            .enumerate()
            .map(|(j, (row, rhs))| {
                let lhs: BigRational = row.iter().zip(&x).map(|(c, v)| c * v).sum();
                (lhs - rhs, j)
            })
            .filter(|(slack, _)| slack.is_negative())
            .min();
        match worst {
            None => return (value, x),
            Some((_, j)) => active.push(j),
        }
    }
}

pub fn lct_monomial(ideal: &MonomialIdeal) -> BigRational {
    diagonal_entry_time(ideal).recip()
}

/// Among supporting normals at `(μ,…,μ)` scaled by `rhs_scale`, picks one
/// maximizing its smallest entry. Variables: `y_1..y_n, ε`.
fn balanced_normal(ideal: &MonomialIdeal, mu: &BigRational, rhs_scale: &BigRational) -> (BigRational, Vec<BigRational>) {
    let n = ideal.dim;
    let mut objective = vec![BigRational::zero(); n + 1];
    objective[n] = BigRational::one();
    let (eps, x) = lazy_rows(ideal, objective, |lp| {
        let mut sum_row = vec![BigRational::one(); n];
        sum_row.push(BigRational::zero());
        lp.add(sum_row, Relation::Eq, BigRational::one());
        for i in 0..n {
            // y_i - ε >= 0
            let mut row = vec![BigRational::zero(); n + 1];
            row[i] = BigRational::one();
            row[n] = -BigRational::one();
            lp.add(row, Relation::Ge, BigRational::zero());
        }
    }, |g| {
        let mut row: Vec<BigRational> = g.0.iter().map(|&e| int(e as i64)).collect();
        row.push(BigRational::zero());
        (row, mu * rhs_scale)
    });
    let a = x[..n].iter().map(|y| y / mu).collect();
    (eps, a)
}

/// Supporting hyperplane `a·x = 1` of the Newton polytope at `(μ,…,μ)`.
///
/// When several normals support P there, the one with the largest smallest
/// entry is returned. Fails with `DegenerateNormal` when every supporting
/// normal has a zero entry (the ideal is not zero-dimensional along that axis).
pub fn supporting_normal(ideal: &MonomialIdeal) -> Result<NewtonPolytopeQuery, MonomialError> {
    let mu = diagonal_entry_time(ideal);
    let (eps, a) = balanced_normal(ideal, &mu, &BigRational::one());
    if !eps.is_positive() {
        let coordinate = a.iter().position(|v| v.is_zero()).unwrap_or(0);
        return Err(MonomialError::DegenerateNormal { coordinate });
    }
    Ok(NewtonPolytopeQuery { mu, supporting_normal: a })
}

/// Strictly positive normal with `a·(μ,…,μ) = 1` and `a·g >= 1 - slack` for
/// every generator. Fallback for ideals whose exact normal is degenerate.
pub fn perturbed_normal(ideal: &MonomialIdeal, slack: &BigRational) -> Result<NewtonPolytopeQuery, MonomialError> {
    if !slack.is_positive() || slack >= &BigRational::one() {
        return Err(MonomialError::BadSlack);
    }
    let mu = diagonal_entry_time(ideal);
    let scale = BigRational::one() - slack;
    let (eps, a) = balanced_normal(ideal, &mu, &scale);
    if !eps.is_positive() {
        return Err(MonomialError::Lp("no positive normal within slack"));
    }
    Ok(NewtonPolytopeQuery { mu, supporting_normal: a })
}

/// Number of monomials outside the ideal, or `None` when that set is infinite.
pub fn colength(ideal: &MonomialIdeal) -> Option<BigUint> {
    let bounds = ideal.pure_power_bounds()?;
    let mut count = BigUint::zero();
    let mut point = vec![0u32; ideal.dim];
    loop {
        if !ideal.contains(&ExponentVector(point.clone())) {
            count += 1u32;
        }
        // odometer over the box Π [0, bound_i)
        let mut i = 0;
        loop {
            if i == point.len() {
                return Some(count);
            }
            point[i] += 1;
            if point[i] < bounds[i] {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn normalization_drops_dominated() {
        let j = MonomialIdeal::from_rows(&[&[2, 0], &[3, 1], &[0, 3], &[2, 0]]).unwrap();
        assert_eq!(j.generators().len(), 2);
        assert!(matches!(MonomialIdeal::from_rows(&[&[0, 0]]), Err(MonomialError::UnitIdeal)));
        assert!(matches!(MonomialIdeal::new(2, vec![]), Err(MonomialError::Empty)));
        assert!(matches!(
            MonomialIdeal::new(2, vec![ExponentVector(vec![1])]),
            Err(MonomialError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn diagonal_time_examples() {
        for n in 1..=5 {
            assert_eq!(diagonal_entry_time(&MonomialIdeal::maximal(n)), ratio(1, n as i64));
        }
        let j = MonomialIdeal::from_rows(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(diagonal_entry_time(&j), ratio(6, 5));
        assert_eq!(lct_monomial(&j), ratio(5, 6));
        assert_eq!(diagonal_entry_time(&MonomialIdeal::diagonal_powers(3, 4)), ratio(4, 3));
    }

    #[test]
    fn supporting_normal_examples() {
        let j = MonomialIdeal::from_rows(&[&[2, 0], &[0, 3]]).unwrap();
        let q = supporting_normal(&j).unwrap();
        assert_eq!(q.supporting_normal, vec![ratio(1, 2), ratio(1, 3)]);
        assert!(q.certifies(&j));

        let m = MonomialIdeal::maximal(2);
        assert_eq!(supporting_normal(&m).unwrap().supporting_normal, vec![int(1), int(1)]);

        let mk = MonomialIdeal::power_of_maximal(2, 5);
        assert_eq!(supporting_normal(&mk).unwrap().supporting_normal, vec![ratio(1, 5), ratio(1, 5)]);
    }

    #[test]
    fn degenerate_normal_and_perturbation() {
        // (x) in two variables: the only supporting line at (1,1) is x = 1.
        let j = MonomialIdeal::from_rows(&[&[1, 0]]).unwrap();
        assert_eq!(diagonal_entry_time(&j), int(1));
        assert!(matches!(supporting_normal(&j), Err(MonomialError::DegenerateNormal { coordinate: 1 })));
        let slack = ratio(1, 10);
        let q = perturbed_normal(&j, &slack).unwrap();
        assert!(q.supporting_normal.iter().all(|a| a.is_positive()));
        let diag: BigRational = q.supporting_normal.iter().map(|a| a * &q.mu).sum();
        assert!(diag.is_one());
        assert!(dot_exp(&q.supporting_normal, &j.generators()[0]) >= int(1) - slack);
        assert!(perturbed_normal(&j, &int(0)).is_err());
    }

    #[test]
    fn vertex_contact_gets_balanced_normal() {
        // (xy): the diagonal meets P at the vertex (1,1).
        let j = MonomialIdeal::from_rows(&[&[1, 1]]).unwrap();
        let q = supporting_normal(&j).unwrap();
        assert_eq!(q.supporting_normal, vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn colength_examples() {
        assert_eq!(colength(&MonomialIdeal::power_of_maximal(2, 2)), Some(BigUint::from(3u32)));
        let j = MonomialIdeal::from_rows(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(colength(&j), Some(BigUint::from(6u32)));
        for m in 1..=5u32 {
            let j = MonomialIdeal::power_of_maximal(2, 2 * m);
            assert_eq!(colength(&j), Some(BigUint::from(m * (2 * m + 1))));
        }
        assert_eq!(colength(&MonomialIdeal::from_rows(&[&[1, 0]]).unwrap()), None);
    }

    #[test]
    fn strong_duality_holds() {
        let j = MonomialIdeal::from_rows(&[&[5, 0, 0], &[1, 2, 0], &[0, 0, 2], &[0, 4, 0]]).unwrap();
        assert_eq!(diagonal_entry_time(&j), diagonal_dual_value(&j));
        assert_eq!(diagonal_entry_time(&j), diagonal_primal_value(&j));
    }

    #[test]
    fn parse_text_format() {
        let j: MonomialIdeal = "# x^2, y^3\n2 0\n\n0 3\n".parse().unwrap();
        assert_eq!(j.dim(), 2);
        assert_eq!(j.generators().len(), 2);
        assert!(matches!("1 a".parse::<MonomialIdeal>(), Err(MonomialError::Parse { line: 1, .. })));
        assert!(matches!("# nothing".parse::<MonomialIdeal>(), Err(MonomialError::Empty)));
    }
}
