//! Minimal lattice-point counts `σ_{n,λ}` and `σ̄_{n,λ}`.
//!
//! Over positive covectors `a` with the diagonal point `(λ,…,λ)` inside
//! `Q_a` (strict case) or inside its closure (closed case), minimize
//! `#(Q_a ∩ Z^n)`. Minimizers sit in the limit where lattice points touch the
//! hyperplane `a·x = 1`, so a witness is a covector plus an inclusion mask
//! saying which hyperplane points an infinitesimal tilt of `a` pulls inside.
//! A mask is accepted only if such a tilt exists (checked by an LP) and an
//! explicit tilted covector reproduces the count.

use std::cell::Cell;
use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::pick::{pick_certificate, LatticePolygon};
use super::simplex::{count_simplex, dot, scan_simplex, scan_simplex_capped, SimplexSpec};
use super::LatticeError;
use crate::arith::{fmt_ratio, int, parse_rational, pow2, power_over_factorial};
use crate::lp::{LinearProgram, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Exactness {
    Exact,
    LowerBound,
    UpperBound,
}

/// A covector `a` with an inclusion mask on the lattice points of `a·x = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a: Vec<BigRational>,
    pub included: Vec<Vec<u64>>,
    pub excluded: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaResult {
    pub n: usize,
    pub lambda: BigRational,
    /// `true` for σ (diagonal point strictly inside), `false` for σ̄.
    pub strict: bool,
    pub value: BigUint,
    pub witness: Witness,
    pub exactness: Exactness,
    /// Best certified lower bound known when the result was produced.
    pub lower_bound: Option<BigUint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BoundMethod {
    Pick2d,
    Cube,
    Volume,
    Block,
}

/// A certified lower bound: `σ >= value`, or `σ > value` when `bound_strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaBound {
    pub method: BoundMethod,
    pub value: BigRational,
    pub bound_strict: bool,
    /// Whether the bound is for σ (`true`) or σ̄ (`false`).
    pub for_strict_sigma: bool,
}

impl SigmaBound {
    /// Smallest integer the bounded quantity can take.
    pub fn integer_floor(&self) -> BigUint {
        let v = &self.value;
        let base = if self.bound_strict { v.floor() + BigRational::one() } else { v.ceil() };
        base.to_integer().to_biguint().unwrap_or_default()
    }
}

fn diag_dot(a: &[BigRational], lambda: &BigRational) -> BigRational {
    a.iter().sum::<BigRational>() * lambda
}

impl Witness {
    /// `#{a·x < 1}` plus the included hyperplane points, after checking that
    /// the mask partitions the hyperplane points exactly.
    pub fn count(&self) -> Result<BigUint, LatticeError> {
        let scan = scan_simplex(&self.a)?;
        let mut listed: Vec<Vec<u64>> = self.included.iter().chain(&self.excluded).cloned().collect();
        listed.sort();
        if listed != scan.on_plane {
            return Err(LatticeError::InvalidWitness("mask does not partition the hyperplane points".into()));
        }
        Ok(scan.below + BigUint::from(self.included.len()))
    }

    /// A tilt direction `d` realizing the mask, if one exists.
    ///
    /// Requires `d·x < 0` on included points, `d·x >= 0` on excluded ones and
    /// the diagonal condition. The LP is homogeneous, so strict inequalities
    /// are scaled to `<= -1`.
    pub fn tilt_direction(&self, lambda: &BigRational, strict: bool) -> Option<Vec<BigRational>> {
        let n = self.a.len();
        let diag = diag_dot(&self.a, lambda);
        let one = BigRational::one();
        if diag > one {
            return None;
        }
        let mut lp = LinearProgram::feasibility(2 * n);
        let split = |x: &[BigRational]| -> Vec<BigRational> {
            x.iter().cloned().chain(x.iter().map(|v| -v)).collect()
        };
        let as_rat = |x: &[u64]| -> Vec<BigRational> { x.iter().map(|&v| int(v as i64)).collect() };
        for x in &self.included {
            lp.add(split(&as_rat(x)), Relation::Le, -one.clone());
        }
        for x in &self.excluded {
            lp.add(split(&as_rat(x)), Relation::Ge, BigRational::zero());
        }
        if diag == one {
            let ones = vec![one.clone(); n];
            if strict {
                lp.add(split(&ones), Relation::Le, -one.clone());
            } else {
                lp.add(split(&ones), Relation::Le, BigRational::zero());
            }
        }
        let (_, x) = lp.solve().optimal()?;
        Some((0..n).map(|i| &x[i] - &x[n + i]).collect())
    }

    /// An honest covector `a' = a + εd` whose plain count `#{a'·x < 1}` equals
    /// the witness count and which satisfies the diagonal condition.
    pub fn realize(&self, lambda: &BigRational, strict: bool) -> Result<Vec<BigRational>, LatticeError> {
        let value = self.count()?;
        let d = self
            .tilt_direction(lambda, strict)
            .ok_or_else(|| LatticeError::InvalidWitness("no tilt realizes the mask".into()))?;
        // keep every a'_i >= a_i / 2 so points with a·x >= 2 stay outside
        let mut eps = BigRational::one();
        for (ai, di) in self.a.iter().zip(&d) {
            if !di.is_zero() {
                let cap = ai / (int(2) * di.abs());
                if cap < eps {
                    eps = cap;
                }
            }
        }
        for _ in 0..200 {
            let tilted: Vec<BigRational> = self.a.iter().zip(&d).map(|(ai, di)| ai + &eps * di).collect();
            let diag = diag_dot(&tilted, lambda);
            let diag_ok = if strict { diag < BigRational::one() } else { diag <= BigRational::one() };
            if diag_ok && tilted.iter().all(|v| v.is_positive()) {
                let spec = SimplexSpec::new(tilted.clone(), true)?;
                if count_simplex(&spec)? == value {
                    return Ok(tilted);
                }
            }
            eps /= int(2);
        }
        Err(LatticeError::InvalidWitness("tilted covector never reproduced the count".into()))
    }
}

impl SigmaResult {
    /// Recounts the witness, checks the mask by LP and realizes it explicitly.
    pub fn verify(&self) -> Result<(), LatticeError> {
        if self.witness.a.len() != self.n {
            return Err(LatticeError::InvalidWitness("covector dimension differs from n".into()));
        }
        let count = self.witness.count()?;
        if count != self.value {
            return Err(LatticeError::InvalidWitness(format!("recount {count} differs from value {}", self.value)));
        }
        self.witness.realize(&self.lambda, self.strict)?;
        if self.exactness == Exactness::Exact {
            if let Some(lb) = &self.lower_bound {
                if lb > &self.value {
                    return Err(LatticeError::InvalidWitness("value below its certified lower bound".into()));
                }
            }
        }
        Ok(())
    }

    pub fn to_record(&self) -> SigmaRecord {
        SigmaRecord {
            n: self.n,
            lambda: fmt_ratio(&self.lambda),
            strict: self.strict,
            value: self.value.to_u64().expect("σ values fit in u64"),
            a: self.witness.a.iter().map(fmt_ratio).collect(),
            included: self.witness.included.clone(),
            excluded: self.witness.excluded.clone(),
            exactness: self.exactness,
            lower_bound: self.lower_bound.as_ref().map(|v| v.to_u64().expect("bound fits in u64")),
        }
    }

    pub fn from_record(r: &SigmaRecord) -> Result<Self, LatticeError> {
        let parse = |s: &str| parse_rational(s).map_err(|e| LatticeError::InvalidWitness(e.to_string()));
        Ok(Self {
            n: r.n,
            lambda: parse(&r.lambda)?,
            strict: r.strict,
            value: BigUint::from(r.value),
            witness: Witness {
                a: r.a.iter().map(|s| parse(s)).collect::<Result<_, _>>()?,
                included: r.included.clone(),
                excluded: r.excluded.clone(),
            },
            exactness: r.exactness,
            lower_bound: r.lower_bound.map(BigUint::from),
        })
    }
}

/// Serialized witness: rationals as `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaRecord {
    pub n: usize,
    pub lambda: String,
    pub strict: bool,
    pub value: u64,
    pub a: Vec<String>,
    pub included: Vec<Vec<u64>>,
    pub excluded: Vec<Vec<u64>>,
    pub exactness: Exactness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<u64>,
}

pub fn sigma_lower_bound(
    n: usize,
    lambda: &BigRational,
    strict: bool,
    method: BoundMethod,
) -> Result<SigmaBound, LatticeError> {
    let inapplicable = |why: &str| Err(LatticeError::MethodInapplicable(why.to_string()));
    if n == 0 {
        return inapplicable("dimension must be positive");
    }
    let bound = |value: BigRational, bound_strict: bool| {
        Ok(SigmaBound { method, value, bound_strict, for_strict_sigma: strict })
    };
    match method {
        BoundMethod::Pick2d => {
            if n != 2 || !lambda.is_integer() || !lambda.is_positive() {
                return inapplicable("PICK2D needs n = 2 and a positive integer λ");
            }
            let m = lambda.to_integer();
            let value = if strict {
                // ⌈(4m² + 3m + 3)/2⌉
                let num: BigInt = BigInt::from(4) * &m * &m + BigInt::from(3) * &m + 3;
                BigRational::from_integer(num.div_ceil(&BigInt::from(2)))
            } else {
                BigRational::from_integer(&m * (BigInt::from(2) * &m + 1))
            };
            bound(value, false)
        }
        BoundMethod::Cube => {
            if !lambda.is_one() {
                return inapplicable("CUBE needs λ = 1");
            }
            // σ >= σ̄ >= 2^n - 1
            let v = pow2(n as u64) - 1u32;
            bound(BigRational::from_integer(BigInt::from(v)), false)
        }
        BoundMethod::Volume => {
            if !lambda.is_one() || n < 2 {
                return inapplicable("VOLUME needs λ = 1 and n >= 2");
            }
            bound(power_over_factorial(n as u64), true)
        }
        BoundMethod::Block => {
            if !(lambda.is_positive() && lambda < &BigRational::one()) {
                return inapplicable("BLOCK needs 0 < λ < 1");
            }
            if !strict {
                return inapplicable("BLOCK bounds σ only, not σ̄");
            }
            let k = (BigRational::from_integer(BigInt::from(n)) * lambda).floor().to_integer();
            let v = pow2(k.to_u64().expect("block exponent fits"));
            bound(BigRational::from_integer(BigInt::from(v)), false)
        }
    }
}

/// Best applicable bound among all methods, as an integer lower bound.
pub fn best_lower_bound(n: usize, lambda: &BigRational, strict: bool) -> Option<BigUint> {
    [BoundMethod::Pick2d, BoundMethod::Cube, BoundMethod::Volume, BoundMethod::Block]
        .into_iter()
        .filter_map(|m| sigma_lower_bound(n, lambda, strict, m).ok())
        .map(|b| b.integer_floor())
        .max()
}

/// Second route to the PICK2D bound: minimum Pick count over the polygons
/// `(0,0),(u,0),(m,m),(0,v)` with `u, v >= m` and `u + v = 4m - 1` (σ) or
/// `4m - 2` (σ̄, minus the corner `(m,m)` which may sit on the hyperplane).
pub fn pick2d_polygon_family_min(m: u64, strict: bool) -> Result<u64, LatticeError> {
    if m == 0 {
        return Err(LatticeError::MethodInapplicable("m must be positive".into()));
    }
    let total = if strict { 4 * m - 1 } else { 4 * m - 2 };
    let m_i = m as i64;
    let mut best: Option<u64> = None;
    for u in m..=total - m {
        let v = total - u;
        let poly = LatticePolygon::new(vec![(0, 0), (u as i64, 0), (m_i, m_i), (0, v as i64)])?;
        let c = pick_certificate(&poly)?;
        let count = if strict { c.total } else { c.total - 1 };
        best = Some(best.map_or(count, |b| b.min(count)));
    }
    best.ok_or_else(|| LatticeError::MethodInapplicable("empty polygon family".into()))
}

/// Value of the best mask at a covector on the diagonal hyperplane.
struct Evaluation {
    value: BigUint,
    included: Vec<Vec<u64>>,
    excluded: Vec<Vec<u64>>,
}

fn better(candidate: &Evaluation, a: &[BigRational], best: &Option<(Evaluation, Vec<BigRational>)>) -> bool {
    match best {
        None => true,
        Some((b, ba)) => match candidate.value.cmp(&b.value) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => a < ba.as_slice(),
        },
    }
}

/// Exact `σ_{2,λ}` / `σ̄_{2,λ}` for a positive integer λ.
///
/// Restricting to `a1 + a2 = 1/λ` loses nothing: scaling a covector up only
/// removes points. On that segment the count is piecewise constant and only
/// jumps where a lattice point hits the line through `(λ,λ)`. Covectors with
/// an entry below `1/U`, `U` the value at the symmetric point, already hold
/// more than `U` points on an axis, so only lattice points with
/// `x1 + x2 <= U` produce relevant events. Every event and every gap between
/// events is evaluated, so the minimum is exact.
pub fn sigma_exact_2d(lambda: u64, strict: bool) -> Result<SigmaResult, LatticeError> {
    if lambda == 0 {
        return Err(LatticeError::BadArgument("λ must be a positive integer".into()));
    }
    let lam = BigRational::from_integer(BigInt::from(lambda));
    let c = lam.recip();
    let eval = |s: &BigRational| -> Result<Evaluation, LatticeError> { evaluate_2d(s, &c, lambda, strict) };

    let half = &c / int(2);
    let sym = eval(&half)?;
    let u = sym.value.to_u64().expect("symmetric value fits");
    let lo = BigRational::new(BigInt::one(), BigInt::from(u));
    let hi = &c - &lo;

    let mut params = vec![lo.clone(), hi.clone(), half];
    for x1 in 0..=u {
        for x2 in 0..=(u - x1) {
            if x1 == x2 {
                continue;
            }
            // s·x1 + (c - s)·x2 = 1
            let s = (BigRational::one() - &c * int(x2 as i64)) / int(x1 as i64 - x2 as i64);
            if s >= lo && s <= hi {
                params.push(s);
            }
        }
    }
    params.sort();
    params.dedup();
    let mids: Vec<BigRational> = params.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();
    params.extend(mids);
    params.sort();

    let mut best: Option<(Evaluation, Vec<BigRational>)> = None;
    for s in &params {
        let e = eval(s)?;
        let a = vec![s.clone(), &c - s];
        if better(&e, &a, &best) {
            best = Some((e, a));
        }
    }
    let (e, a) = best.expect("parameter list is nonempty");
    let lower = sigma_lower_bound(2, &lam, strict, BoundMethod::Pick2d)?.integer_floor();
    Ok(SigmaResult {
        n: 2,
        lambda: lam,
        strict,
        value: e.value,
        witness: Witness { a, included: e.included, excluded: e.excluded },
        exactness: Exactness::Exact,
        lower_bound: Some(lower),
    })
}

fn evaluate_2d(s: &BigRational, c: &BigRational, lambda: u64, strict: bool) -> Result<Evaluation, LatticeError> {
    let a = vec![s.clone(), c - s];
    let scan = scan_simplex(&a)?;
    if !strict {
        return Ok(Evaluation { value: scan.below, included: vec![], excluded: scan.on_plane });
    }
    // the hyperplane is a line of negative slope through (λ,λ); a tilt with
    // d·(λ,λ) < 0 can pull in one closed side of it and nothing beyond
    let (low, high): (Vec<_>, Vec<_>) = scan.on_plane.iter().cloned().partition(|x| x[0] <= lambda);
    let high_closed: Vec<Vec<u64>> = scan.on_plane.iter().filter(|x| x[0] >= lambda).cloned().collect();
    let low_rest: Vec<Vec<u64>> = scan.on_plane.iter().filter(|x| x[0] < lambda).cloned().collect();
    let (included, excluded) = if low.len() <= high_closed.len() {
        (low, high)
    } else {
        (high_closed, low_rest)
    };
    Ok(Evaluation { value: scan.below + BigUint::from(included.len()), included, excluded })
}

/// Best mask at `a` (with `a·λ1 = 1`) among tilts `d = g - δa`, `Σg = 0`,
/// which include exactly the hyperplane points with `g·x <= 0`.
fn evaluate_general(a: &[BigRational], strict: bool, cap: u128) -> Result<Option<Evaluation>, LatticeError> {
    let Some(scan) = scan_simplex_capped(a, cap)? else {
        return Ok(None);
    };
    if !strict {
        return Ok(Some(Evaluation { value: scan.below, included: vec![], excluded: scan.on_plane }));
    }
    let n = a.len();
    let mut directions: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut g = vec![BigRational::zero(); n];
                g[i] = int(1);
                g[j] = int(-1);
                directions.push(g);
            }
        }
    }
    for h in &scan.on_plane {
        let mean = h.iter().map(|&v| int(v as i64)).sum::<BigRational>() / int(n as i64);
        let g: Vec<BigRational> = h.iter().map(|&v| int(v as i64) - &mean).collect();
        directions.push(g.iter().map(|v| -v).collect());
        directions.push(g);
    }
    let mut best: Option<(Vec<Vec<u64>>, Vec<Vec<u64>>)> = None;
    for g in &directions {
        let (inc, exc): (Vec<_>, Vec<_>) = scan.on_plane.iter().cloned().partition(|x| !dot(g, x).is_positive());
        if best.as_ref().map_or(true, |(b, _)| inc.len() < b.len()) {
            best = Some((inc, exc));
        }
    }
    let (included, excluded) = best.expect("direction list is nonempty");
    Ok(Some(Evaluation { value: scan.below + BigUint::from(included.len()), included, excluded }))
}

/// Advances to the next nondecreasing vector with entries in `[1, k]`.
fn next_nondecreasing(w: &mut [u64], k: u64) -> bool {
    let Some(i) = w.iter().rposition(|&v| v < k) else {
        return false;
    };
    w[i] += 1;
    let v = w[i];
    for x in w[i + 1..].iter_mut() {
        *x = v;
    }
    true
}

/// Exact solve of a square system by Gauss-Jordan elimination.
fn solve_square(mut m: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        rhs[col] /= &p;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in 0..n {
                    let sub = &f * &m[col][k];
                    m[r][k] -= sub;
                }
                let sub = &f * &rhs[col];
                rhs[r] -= sub;
            }
        }
    }
    Some(rhs)
}

/// Budgeted search for small witnesses; returns a realized upper bound.
///
/// Candidates, in order: the symmetric covector, sorted integer weight
/// vectors, hyperplanes through `(λ,…,λ)` and `n - 1` small lattice points,
/// then seeded random refinements of the incumbent. `budget` caps the number
/// of candidate covectors evaluated. Ties go to the lexicographically
/// smallest covector, so the result depends only on the inputs and the seed.
pub fn sigma_upper_search(
    n: usize,
    lambda: &BigRational,
    strict: bool,
    budget: usize,
    seed: u64,
) -> Result<SigmaResult, LatticeError> {
    if n < 2 {
        return Err(LatticeError::BadArgument("search needs n >= 2".into()));
    }
    if !lambda.is_positive() {
        return Err(LatticeError::BadArgument("λ must be positive".into()));
    }
    let budget = budget.max(1);
    let target_sum = lambda.recip();
    let normalize = |w: &[BigRational]| -> Vec<BigRational> {
        let s: BigRational = w.iter().sum();
        w.iter().map(|v| v * &target_sum / &s).collect()
    };

    let mut best: Option<(Evaluation, Vec<BigRational>)> = None;
    let used = Cell::new(0usize);
    let consider = |a: Vec<BigRational>, best: &mut Option<(Evaluation, Vec<BigRational>)>| -> Result<(), LatticeError> {
        used.set(used.get() + 1);
        if a.iter().any(|v| !v.is_positive()) {
            return Ok(());
        }
        let cap = best.as_ref().map_or(u128::MAX, |(b, _)| b.value.to_u128().unwrap_or(u128::MAX));
        if let Some(e) = evaluate_general(&a, strict, cap)? {
            if better(&e, &a, best) {
                *best = Some((e, a));
            }
        }
        Ok(())
    };

    consider(normalize(&vec![int(1); n]), &mut best)?;

    // sorted integer weights in [1, k]
    let mut k = 2u64;
    let grid_share = budget / 3;
    'grid: while used.get() < grid_share && k <= 64 {
        let mut w = vec![1u64; n];
        loop {
            if *w.iter().max().unwrap() == k {
                if used.get() >= grid_share {
                    break 'grid;
                }
                let wr: Vec<BigRational> = w.iter().map(|&v| int(v as i64)).collect();
                consider(normalize(&wr), &mut best)?;
            }
            if !next_nondecreasing(&mut w, k) {
                break;
            }
        }
        k += 1;
    }

    // hyperplanes through the diagonal point and n - 1 lattice points
    let radius = (lambda * int(2 * n as i64)).ceil().to_integer().to_u64().unwrap_or(4).max(2);
    let small_points: Vec<Vec<u64>> = {
        let mut pts = Vec::new();
        let mut p = vec![0u64; n];
        loop {
            if p.iter().sum::<u64>() <= radius && p.iter().any(|&v| v > 0) {
                pts.push(p.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                p[i] += 1;
                if p[i] <= radius {
                    break;
                }
                p[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        pts
    };
    let plane_share = 2 * budget / 3;
    let mut idx = vec![0usize; n - 1];
    for (j, v) in idx.iter_mut().enumerate() {
        *v = j;
    }
    if small_points.len() >= n - 1 {
        'tuples: loop {
            if used.get() >= plane_share {
                break;
            }
            let mut rows: Vec<Vec<BigRational>> = vec![vec![lambda.clone(); n]];
            for &j in &idx {
                rows.push(small_points[j].iter().map(|&v| int(v as i64)).collect());
            }
            if let Some(a) = solve_square(rows, vec![BigRational::one(); n]) {
                consider(a, &mut best)?;
            }
            // next combination
            let mut i = n - 1;
            loop {
                if i == 0 {
                    break 'tuples;
                }
                i -= 1;
                if idx[i] < small_points.len() - (n - 1 - i) {
                    idx[i] += 1;
                    for j in i + 1..n - 1 {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    // random refinements around the incumbent
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while used.get() < budget {
        let Some((_, incumbent)) = best.as_ref() else { break };
        let scale = int(rng.gen_range(8..=64));
        let w: Vec<BigRational> = incumbent
            .iter()
            .map(|v| (v * &scale / &target_sum).round() + int(rng.gen_range(-2..=2)))
            .collect();
        if w.iter().all(|v| v.is_positive()) {
            consider(normalize(&w), &mut best)?;
        } else {
            used.set(used.get() + 1);
        }
    }

    let (e, a) = best.ok_or_else(|| LatticeError::BadArgument("no candidate covector evaluated".into()))?;
    let result = SigmaResult {
        n,
        lambda: lambda.clone(),
        strict,
        value: e.value,
        witness: Witness { a, included: e.included, excluded: e.excluded },
        exactness: Exactness::UpperBound,
        lower_bound: best_lower_bound(n, lambda, strict),
    };
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn bu(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn lower_bound_examples() {
        let b = sigma_lower_bound(2, &int(5), true, BoundMethod::Pick2d).unwrap();
        assert_eq!(b.value, int(59));
        let b = sigma_lower_bound(2, &int(11), false, BoundMethod::Pick2d).unwrap();
        assert_eq!(b.value, int(253));
        for n in 1..=8 {
            let b = sigma_lower_bound(n, &int(1), false, BoundMethod::Cube).unwrap();
            assert_eq!(b.integer_floor(), (bu(1) << n) - 1u32);
        }
        for (n, m) in [(6usize, 2i64), (7, 3), (12, 4), (5, 5)] {
            let b = sigma_lower_bound(n, &ratio(1, m), true, BoundMethod::Block).unwrap();
            assert_eq!(b.integer_floor(), bu(1) << (n as i64 / m));
        }
        let v = sigma_lower_bound(3, &int(1), false, BoundMethod::Volume).unwrap();
        assert_eq!(v.value, ratio(9, 2));
        assert!(v.bound_strict);
        assert_eq!(v.integer_floor(), bu(5));
    }

    #[test]
    fn inapplicable_methods() {
        let err = |n, l: BigRational, s, m| matches!(sigma_lower_bound(n, &l, s, m), Err(LatticeError::MethodInapplicable(_)));
        assert!(err(3, int(1), true, BoundMethod::Pick2d));
        assert!(err(2, ratio(3, 2), true, BoundMethod::Pick2d));
        assert!(err(3, int(2), true, BoundMethod::Cube));
        assert!(err(1, int(1), false, BoundMethod::Volume));
        assert!(err(4, int(1), true, BoundMethod::Block));
        assert!(err(4, ratio(1, 2), false, BoundMethod::Block));
    }

    #[test]
    fn pick_family_meets_formula() {
        for m in 1..=20u64 {
            for strict in [true, false] {
                let formula = sigma_lower_bound(2, &int(m as i64), strict, BoundMethod::Pick2d).unwrap().integer_floor();
                let family = pick2d_polygon_family_min(m, strict).unwrap();
                assert!(bu(family) >= formula, "m={m} strict={strict}: {family} < {formula}");
            }
        }
    }

    #[test]
    fn exact_2d_small_values() {
        let r = sigma_exact_2d(1, false).unwrap();
        assert_eq!(r.value, bu(3));
        assert_eq!(r.witness.a, vec![ratio(1, 2), ratio(1, 2)]);
        r.verify().unwrap();

        let r = sigma_exact_2d(1, true).unwrap();
        assert_eq!(r.value, bu(5));
        assert_eq!(r.witness.a, vec![ratio(1, 3), ratio(2, 3)]);
        assert_eq!(r.witness.included, vec![vec![1, 1]]);
        assert_eq!(r.witness.excluded, vec![vec![3, 0]]);
        r.verify().unwrap();

        let r = sigma_exact_2d(2, true).unwrap();
        assert_eq!(r.value, bu(13));
        assert_eq!(r.witness.a, vec![ratio(1, 5), ratio(3, 10)]);
        assert!(r.witness.included.contains(&vec![2, 2]));
        r.verify().unwrap();

        let r = sigma_exact_2d(2, false).unwrap();
        assert_eq!(r.value, bu(10));
        r.verify().unwrap();
    }

    #[test]
    fn bad_masks_are_rejected() {
        // include (3,0) but not (1,1): any tilt pulling (3,0) in while
        // pushing the diagonal point inside must also pull (1,1) in
        let w = Witness { a: vec![ratio(1, 3), ratio(2, 3)], included: vec![vec![3, 0]], excluded: vec![vec![1, 1]] };
        assert!(w.tilt_direction(&int(1), true).is_none());
        // closed: no tilt is needed
        let w = Witness { a: vec![ratio(1, 3), ratio(2, 3)], included: vec![], excluded: vec![vec![1, 1], vec![3, 0]] };
        assert!(w.tilt_direction(&int(1), false).is_some());
        // strict with nothing included cannot push (1,1) inside
        assert!(w.tilt_direction(&int(1), true).is_none());
        // incomplete mask
        let w = Witness { a: vec![ratio(1, 3), ratio(2, 3)], included: vec![], excluded: vec![vec![3, 0]] };
        assert!(w.count().is_err());
    }

    #[test]
    fn realized_covector_counts_plainly() {
        let r = sigma_exact_2d(1, true).unwrap();
        let a = r.witness.realize(&r.lambda, true).unwrap();
        assert!(diag_dot(&a, &r.lambda) < int(1));
        assert_eq!(count_simplex(&SimplexSpec::new(a, true).unwrap()).unwrap(), bu(5));
    }

    #[test]
    fn search_examples() {
        let r = sigma_upper_search(2, &int(1), true, 300, 7).unwrap();
        assert_eq!(r.value, bu(5));
        r.verify().unwrap();
        let r = sigma_upper_search(2, &int(2), false, 300, 7).unwrap();
        assert_eq!(r.value, bu(10));
        r.verify().unwrap();
        let r = sigma_upper_search(3, &int(1), false, 300, 7).unwrap();
        assert!(r.value <= bu(10) && r.value >= bu(7));
        r.verify().unwrap();
        assert_eq!(r.exactness, Exactness::UpperBound);
    }

    #[test]
    fn search_is_deterministic() {
        let a = sigma_upper_search(3, &ratio(1, 2), true, 200, 11).unwrap();
        let b = sigma_upper_search(3, &ratio(1, 2), true, 200, 11).unwrap();
        assert_eq!(a, b);
        a.verify().unwrap();
    }

    #[test]
    fn record_round_trip() {
        let r = sigma_exact_2d(2, true).unwrap();
        let json = serde_json::to_string(&r.to_record()).unwrap();
        let back: SigmaRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(SigmaResult::from_record(&back).unwrap(), r);
        assert!(json.contains("\"a\":[\"1/5\",\"3/10\"]"));
        assert!(json.contains("\"exactness\":\"EXACT\""));
    }
}
