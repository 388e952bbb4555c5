//! Lattice points in rational simplices `Q_a = {x >= 0 : a·x < 1}`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::LatticeError;

/// A positive covector together with the comparison used for counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexSpec {
    pub a: Vec<BigRational>,
    /// `true` counts `a·x < 1`, `false` counts `a·x <= 1`.
    pub strict: bool,
}

impl SimplexSpec {
    pub fn new(a: Vec<BigRational>, strict: bool) -> Result<Self, LatticeError> {
        validate(&a)?;
        Ok(Self { a, strict })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }
}

fn validate(a: &[BigRational]) -> Result<(), LatticeError> {
    if a.is_empty() {
        return Err(LatticeError::EmptyDimension);
    }
    if let Some(coordinate) = a.iter().position(|v| !v.is_positive()) {
        return Err(LatticeError::Unbounded { coordinate });
    }
    Ok(())
}

/// Lattice points strictly below the hyperplane and those on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexScan {
    pub below: BigUint,
    pub on_plane: Vec<Vec<u64>>,
}

impl SimplexScan {
    pub fn closed(&self) -> BigUint {
        &self.below + BigUint::from(self.on_plane.len())
    }
}

pub fn count_simplex(spec: &SimplexSpec) -> Result<BigUint, LatticeError> {
    let scan = scan_simplex(&spec.a)?;
    Ok(if spec.strict { scan.below } else { scan.closed() })
}

/// Counts `{a·x < 1}` and lists `{a·x = 1}` in one pass.
///
/// Hyperplane points come back in lexicographic order.
pub fn scan_simplex(a: &[BigRational]) -> Result<SimplexScan, LatticeError> {
    Ok(scan_simplex_capped(a, u128::MAX)?.expect("uncapped scan always finishes"))
}

/// Like [`scan_simplex`] but gives up with `None` once more than `cap`
/// points below the hyperplane have been seen.
pub fn scan_simplex_capped(a: &[BigRational], cap: u128) -> Result<Option<SimplexScan>, LatticeError> {
    validate(a)?;
    let (weights, total) = integerize(a);
    let mut order: Vec<usize> = (0..a.len()).collect();
    // largest a_i outermost: fewest branches at the top
    order.sort_by(|&i, &j| a[j].cmp(&a[i]).then(i.cmp(&j)));
    let ordered: Vec<BigInt> = order.iter().map(|&i| weights[i].clone()).collect();

    let fits = ordered.iter().chain(std::iter::once(&total)).all(|w| w.bits() < 62);
    let mut acc = Counter::default();
    let mut plane = Vec::new();
    let mut point = vec![0u64; a.len()];
    if fits {
        let w: Vec<i128> = ordered.iter().map(|v| v.to_i128().unwrap()).collect();
        if !walk(&w, 0, total.to_i128().unwrap(), &mut point, &mut acc, &mut plane, cap)? {
            return Ok(None);
        }
    } else if !walk(&ordered, 0, total, &mut point, &mut acc, &mut plane, cap)? {
        return Ok(None);
    }
    let mut on_plane: Vec<Vec<u64>> = plane
        .into_iter()
        .map(|p: Vec<u64>| {
            let mut x = vec![0u64; a.len()];
            for (slot, &orig) in order.iter().enumerate() {
                x[orig] = p[slot];
            }
            x
        })
        .collect();
    on_plane.sort();
    Ok(Some(SimplexScan { below: acc.finish(), on_plane }))
}

/// Integer weights `w` and threshold `D` with `a = w / D`.
pub fn integerize(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let lcm = a.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let weights = a.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    (weights, lcm)
}

#[derive(Default)]
struct Counter {
    small: u128,
    big: BigUint,
}

impl Counter {
    fn add_small(&mut self, v: u128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    fn add<T: ToPrimitive>(&mut self, v: &T, fallback: impl FnOnce() -> BigUint) {
        match v.to_u128() {
            Some(x) => self.add_small(x),
            None => self.big += fallback(),
        }
    }

    fn exceeds(&self, cap: u128) -> bool {
        self.small > cap || !self.big.is_zero()
    }

    fn finish(self) -> BigUint {
        self.big + self.small
    }
}

/// `budget` is `D - Σ_{j < level} w_j x_j`, always positive here.
/// Returns false once the running count passes `cap`.
fn walk<T>(
    w: &[T],
    level: usize,
    budget: T,
    point: &mut Vec<u64>,
    acc: &mut Counter,
    plane: &mut Vec<Vec<u64>>,
    cap: u128,
) -> Result<bool, LatticeError>
where
    T: Clone + Integer + Signed + ToPrimitive,
    BigInt: From<T>,
{
    let wl = &w[level];
    if level + 1 == w.len() {
        // x_last in [0, ceil(budget / w) - 1] lies strictly below
        let (q, r) = budget.div_rem(wl);
        let below = if r.is_zero() { q.clone() } else { q.clone() + T::one() };
        acc.add(&below, || BigInt::from(below.clone()).to_biguint().unwrap());
        if r.is_zero() {
            point[level] = q.to_u64().ok_or(LatticeError::CoordinateOverflow)?;
            plane.push(point.clone());
        }
        return Ok(cap == u128::MAX || !acc.exceeds(cap));
    }
    let mut x = 0u64;
    let mut rest = budget;
    loop {
        if rest.is_negative() {
            break;
        }
        point[level] = x;
        if rest.is_zero() {
            // remaining coordinates all zero: the point is on the hyperplane
            for p in point[level + 1..].iter_mut() {
                *p = 0;
            }
            plane.push(point.clone());
            break;
        }
        if !walk(w, level + 1, rest.clone(), point, acc, plane, cap)? {
            return Ok(false);
        }
        rest = rest - wl.clone();
        x += 1;
    }
    point[level] = 0;
    Ok(true)
}

/// Exact `a·x` for a nonnegative lattice point.
pub fn dot(a: &[BigRational], x: &[u64]) -> BigRational {
    a.iter()
        .zip(x)
        .filter(|(_, &xi)| xi != 0)
        .map(|(ai, &xi)| ai * BigRational::from_integer(BigInt::from(xi)))
        .sum()
}

/// All lattice points with `a·x < bound` (bound > 0), lexicographic.
pub fn points_below(a: &[BigRational], bound: &BigRational) -> Result<Vec<Vec<u64>>, LatticeError> {
    validate(a)?;
    let scaled: Vec<BigRational> = a.iter().map(|v| v / bound).collect();
    let mut out = Vec::new();
    let mut point = vec![0u64; a.len()];
    fn rec(a: &[BigRational], i: usize, used: BigRational, point: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == a.len() {
            out.push(point.clone());
            return;
        }
        let mut used_here = used;
        let mut x = 0u64;
        while used_here < BigRational::one() {
            point[i] = x;
            rec(a, i + 1, used_here.clone(), point, out);
            used_here += &a[i];
            x += 1;
        }
        point[i] = 0;
    }
    rec(&scaled, 0, BigRational::zero(), &mut point, &mut out);
    Ok(out)
}
