use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use rand::Rng;

use super::poly::{parse_field, CurveFile, PiecewisePolynomial, Polynomial};
use super::KError;
use crate::arith::{int, Decision};

/// `vol(L - xF)` as a function of x, starting at the degree `Ln`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeCurve {
    ln: BigRational,
    dim_n: u64,
    vol: PiecewisePolynomial,
}

impl VolumeCurve {
    pub fn new(dim_n: u64, vol: PiecewisePolynomial) -> Result<Self, KError> {
        if !vol.start().is_zero() {
            return Err(KError::InvalidCurve("domain must start at 0".into()));
        }
        let ln = vol.eval(vol.start()).unwrap();
        if !ln.is_positive() {
            return Err(KError::InvalidCurve("vol(0) must be positive".into()));
        }
        match vol.certify_nonincreasing() {
            Decision::True => {}
            Decision::False => return Err(KError::InvalidCurve("vol must be nonincreasing".into())),
            Decision::Inconclusive => return Err(KError::Inconclusive("monotonicity".into())),
        }
        if vol.eval(vol.end()).unwrap().is_negative() {
            return Err(KError::InvalidCurve("vol must stay nonnegative".into()));
        }
        Ok(Self { ln, dim_n, vol })
    }

    pub fn from_file(file: &CurveFile) -> Result<Self, KError> {
        Self::new(file.n, file.function()?)
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile::from_function(self.dim_n, None, None, &self.vol)
    }

    pub fn ln(&self) -> &BigRational {
        &self.ln
    }

    pub fn dim_n(&self) -> u64 {
        self.dim_n
    }

    pub fn vol(&self) -> &PiecewisePolynomial {
        &self.vol
    }

    /// `(n+1-x)^n` on `[0, n+1]`: the anticanonical curve of a hyperplane in `P^n`.
    pub fn projective_space(n: u64) -> Self {
        let t = int(n as i64 + 1);
        let p = Polynomial::linear(t.clone(), -BigRational::one()).pow(n as u32);
        Self::new(n, PiecewisePolynomial::single(BigRational::zero(), t, p).unwrap()).unwrap()
    }
}

/// First breakpoint at which the volume vanishes.
pub fn tau_of(curve: &VolumeCurve) -> Result<BigRational, KError> {
    curve
        .vol
        .breakpoints()
        .iter()
        .find(|b| curve.vol.eval(b).unwrap().is_zero())
        .cloned()
        .ok_or(KError::NeverZero)
}

/// `A·Ln - ∫ vol`.
pub fn beta(a: &BigRational, curve: &VolumeCurve) -> BigRational {
    a * &curve.ln - curve.vol.integral()
}

/// Restricted volume `V` on `[0, τ]` with the movable threshold η declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedVolumeProfile {
    dim_n: u64,
    eta: BigRational,
    tau: BigRational,
    v: PiecewisePolynomial,
}

impl RestrictedVolumeProfile {
    pub fn new(dim_n: u64, eta: BigRational, tau: BigRational, v: PiecewisePolynomial) -> Result<Self, KError> {
        if dim_n == 0 {
            return Err(KError::InvalidProfile("dimension must be at least 1".into()));
        }
        if eta.is_negative() || eta > tau {
            return Err(KError::BadRange);
        }
        if !v.start().is_zero() || v.end() != &tau {
            return Err(KError::InvalidProfile("domain must be [0, tau]".into()));
        }
        match v.certify_nonnegative() {
            Decision::True => {}
            Decision::False => return Err(KError::InvalidProfile("V must be nonnegative".into())),
            Decision::Inconclusive => return Err(KError::Inconclusive("nonnegativity".into())),
        }
        Ok(Self { dim_n, eta, tau, v })
    }

    pub fn from_file(file: &CurveFile) -> Result<Self, KError> {
        let v = file.function()?;
        let eta = file.eta.as_deref().map(parse_field).transpose()?;
        let tau = file.tau.as_deref().map(parse_field).transpose()?.unwrap_or_else(|| v.end().clone());
        let eta = eta.ok_or_else(|| KError::InvalidProfile("eta is required".into()))?;
        Self::new(file.n, eta, tau, v)
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile::from_function(self.dim_n, Some(&self.eta), Some(&self.tau), &self.v)
    }

    pub fn dim_n(&self) -> u64 {
        self.dim_n
    }

    pub fn eta(&self) -> &BigRational {
        &self.eta
    }

    pub fn tau(&self) -> &BigRational {
        &self.tau
    }

    pub fn v(&self) -> &PiecewisePolynomial {
        &self.v
    }
}

pub fn barycenter(profile: &RestrictedVolumeProfile) -> Result<BigRational, KError> {
    let mass = profile.v.integral();
    if mass.is_zero() {
        return Err(KError::ZeroMass);
    }
    Ok(profile.v.first_moment() / mass)
}

/// `(x/η)^{n-1}·V_η` up to η, then `((τ-x)/(τ-η))^{n-1}·V_η`.
pub fn extremal_profile(
    n: u64,
    eta: &BigRational,
    tau: &BigRational,
    v_eta: &BigRational,
) -> Result<RestrictedVolumeProfile, KError> {
    if !eta.is_positive() || eta > tau {
        return Err(KError::BadRange);
    }
    if !v_eta.is_positive() || n == 0 {
        return Err(KError::InvalidProfile("need V_eta > 0 and n >= 1".into()));
    }
    let e = (n - 1) as u32;
    let rise = Polynomial::linear(BigRational::zero(), eta.recip()).pow(e).scale(v_eta);
    let mut breakpoints = vec![BigRational::zero(), eta.clone()];
    let mut pieces = vec![rise];
    if eta < tau {
        let width = tau - eta;
        let fall = Polynomial::linear(tau / &width, -width.recip()).pow(e).scale(v_eta);
        breakpoints.push(tau.clone());
        pieces.push(fall);
    }
    RestrictedVolumeProfile::new(n, eta.clone(), tau.clone(), PiecewisePolynomial::new(breakpoints, pieces)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycenterCheck {
    pub b: BigRational,
    pub bound: BigRational,
    pub holds: bool,
    pub equality: bool,
}

/// `b <= τ/(n+1) + (n-1)η/(n+1)`, compared exactly.
pub fn check_barycenter_bound(profile: &RestrictedVolumeProfile) -> Result<BarycenterCheck, KError> {
    let b = barycenter(profile)?;
    let n = profile.dim_n as i64;
    let bound = (&profile.tau + int(n - 1) * &profile.eta) / int(n + 1);
    Ok(BarycenterCheck { holds: b <= bound, equality: b == bound, b, bound })
}

/// `vol(x) = n·∫_x^τ V`; the identity `∫vol = n·∫tV` is asserted exactly.
pub fn vol_from_restricted(profile: &RestrictedVolumeProfile) -> Result<VolumeCurve, KError> {
    let n = int(profile.dim_n as i64);
    let intervals: Vec<_> = profile.v.intervals().collect();
    let mut tail = BigRational::zero();
    let mut pieces = vec![Polynomial::zero(); intervals.len()];
    for (i, (lo, hi, p)) in intervals.iter().enumerate().rev() {
        let f = p.antiderivative();
        let c = f.eval(hi) + &tail;
        pieces[i] = Polynomial::constant(c).sub(&f).scale(&n);
        tail += p.integrate(lo, hi);
    }
    let vol = PiecewisePolynomial::new(profile.v.breakpoints().to_vec(), pieces)?;
    let curve = VolumeCurve::new(profile.dim_n, vol)?;
    assert_eq!(
        curve.vol.integral(),
        &n * profile.v.first_moment(),
        "integration by parts must hold exactly"
    );
    Ok(curve)
}

/// Midpoint log-concavity `f(m)² >= f(x)f(y)` on `samples` grid pairs,
/// widest spans first. A sampled check, not a proof.
pub fn logconcave_check(f: &PiecewisePolynomial, samples: usize) -> bool {
    let mut g = 1u64;
    while (g * (g + 1) / 2) < samples as u64 {
        g += 1;
    }
    let grid = f.grid(g);
    let mut pairs: Vec<(usize, usize)> =
        (0..grid.len()).flat_map(|i| (i + 1..grid.len()).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| (std::cmp::Reverse(j - i), i));
    pairs.into_iter().take(samples.max(1)).all(|(i, j)| {
        let mid = (&grid[i] + &grid[j]) / int(2);
        let fm = f.eval(&mid).unwrap();
        &fm * &fm >= f.eval(&grid[i]).unwrap() * f.eval(&grid[j]).unwrap()
    })
}

fn small_ratio<R: Rng>(rng: &mut R, num: std::ops::RangeInclusive<i64>, den: i64) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(num)), BigInt::from(den))
}

/// A random profile whose `(n-1)`-th root is concave and positive on
/// `[0, η]`, extended by the extremal decay on `[η, τ]`.
pub fn random_profile<R: Rng>(rng: &mut R) -> RestrictedVolumeProfile {
    let n: u64 = rng.gen_range(2..=6);
    let tau = small_ratio(rng, 1..=20, 4);
    let eta = &tau * small_ratio(rng, 1..=7, 8);
    let m = rng.gen_range(1..=3usize);
    let mut cuts: Vec<BigRational> = (1..m).map(|_| &eta * small_ratio(rng, 1..=15, 16)).collect();
    cuts.sort();
    cuts.dedup();
    let mut xs = vec![BigRational::zero()];
    xs.extend(cuts);
    xs.push(eta.clone());
    let mut slopes: Vec<BigRational> = (0..xs.len() - 1).map(|_| small_ratio(rng, -8..=8, 4)).collect();
    slopes.sort_by(|a, b| b.cmp(a));
    let mut g = vec![small_ratio(rng, 1..=8, 2)];
    for (i, s) in slopes.iter().enumerate() {
        let next = &g[i] + s * (&xs[i + 1] - &xs[i]);
        g.push(next);
    }
    let lowest = g.iter().min().unwrap().clone();
    if !lowest.is_positive() {
        let lift = BigRational::one() - lowest;
        g.iter_mut().for_each(|v| *v += &lift);
    }
    let e = (n - 1) as u32;
    let mut pieces: Vec<Polynomial> = (0..slopes.len())
        .map(|i| Polynomial::linear(&g[i] - &slopes[i] * &xs[i], slopes[i].clone()).pow(e))
        .collect();
    let v_eta = Pow::pow(g.last().unwrap(), e);
    let width = &tau - &eta;
    pieces.push(Polynomial::linear(&tau / &width, -width.recip()).pow(e).scale(&v_eta));
    xs.push(tau.clone());
    let v = PiecewisePolynomial::new(xs, pieces).expect("constructed continuous");
    RestrictedVolumeProfile::new(n, eta, tau, v).expect("constructed nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn single(tau: BigRational, p: Polynomial) -> PiecewisePolynomial {
        PiecewisePolynomial::single(BigRational::zero(), tau, p).unwrap()
    }

    fn line_model() -> VolumeCurve {
        VolumeCurve::new(1, single(int(2), Polynomial::linear(int(2), int(-1)))).unwrap()
    }

    #[test]
    fn tau_and_beta_on_models() {
        let c = line_model();
        assert_eq!(tau_of(&c).unwrap(), int(2));
        assert_eq!(beta(&int(1), &c), int(0));
        assert_eq!(beta(&int(2), &c), int(2));
        for n in 1..=5u64 {
            let c = VolumeCurve::projective_space(n);
            assert_eq!(tau_of(&c).unwrap(), int(n as i64 + 1));
            assert_eq!(beta(&int(1), &c), int(0), "n = {n}");
        }
        let padded = VolumeCurve::new(1, c_vol_with_tail(&line_model())).unwrap();
        assert_eq!(tau_of(&padded).unwrap(), int(2));
    }

    fn c_vol_with_tail(c: &VolumeCurve) -> PiecewisePolynomial {
        c.vol().with_zero_tail(int(5)).unwrap()
    }

    #[test]
    fn curve_invariants() {
        let never = VolumeCurve::new(1, single(int(1), Polynomial::linear(int(2), int(-1)))).unwrap();
        assert_eq!(tau_of(&never), Err(KError::NeverZero));
        let rising = VolumeCurve::new(1, single(int(1), Polynomial::linear(int(1), int(1))));
        assert!(matches!(rising, Err(KError::InvalidCurve(_))));
        let zero = VolumeCurve::new(1, single(int(1), Polynomial::zero()));
        assert!(matches!(zero, Err(KError::InvalidCurve(_))));
    }

    #[test]
    fn beta_affine_in_a() {
        let c = VolumeCurve::projective_space(3);
        let (b1, b2) = (beta(&ratio(1, 3), &c), beta(&ratio(7, 3), &c));
        assert_eq!(b2 - b1, int(2) * c.ln());
    }

    #[test]
    fn barycenter_examples() {
        let tau = int(3);
        let flat = RestrictedVolumeProfile::new(2, int(1), tau.clone(), single(tau.clone(), Polynomial::constant(int(4)))).unwrap();
        assert_eq!(barycenter(&flat).unwrap(), ratio(3, 2));
        for n in 1..=5u64 {
            let p = Polynomial::linear(tau.clone(), int(-1)).pow(n as u32 - 1);
            let prof = RestrictedVolumeProfile::new(n, int(0), tau.clone(), single(tau.clone(), p)).unwrap();
            assert_eq!(barycenter(&prof).unwrap(), &tau / int(n as i64 + 1));
            let chk = check_barycenter_bound(&prof).unwrap();
            assert!(chk.equality);
        }
        let ext = extremal_profile(3, &int(1), &int(2), &int(1)).unwrap();
        assert_eq!(barycenter(&ext).unwrap(), int(1));
        let dead = RestrictedVolumeProfile::new(2, int(1), int(1), single(int(1), Polynomial::zero())).unwrap();
        assert_eq!(barycenter(&dead), Err(KError::ZeroMass));
    }

    #[test]
    fn extremal_pieces() {
        let p = extremal_profile(3, &int(1), &int(2), &int(1)).unwrap();
        assert_eq!(p.v().pieces()[0].coeffs(), &[int(0), int(0), int(1)]);
        assert_eq!(p.v().pieces()[1].coeffs(), &[int(4), int(-4), int(1)]);
        let c = extremal_profile(1, &ratio(1, 2), &int(2), &int(7)).unwrap();
        assert!(c.v().pieces().iter().all(|q| q.coeffs() == [int(7)]));
        let q = extremal_profile(2, &int(1), &int(3), &int(2)).unwrap();
        assert_eq!(q.v().pieces()[0].coeffs(), &[int(0), int(2)]);
        assert_eq!(q.v().pieces()[1].coeffs(), &[int(3), int(-1)]);
        let full = extremal_profile(4, &int(2), &int(2), &int(1)).unwrap();
        assert_eq!(full.v().pieces().len(), 1);
        assert_eq!(extremal_profile(2, &int(3), &int(2), &int(1)), Err(KError::BadRange));
        assert_eq!(extremal_profile(2, &int(0), &int(2), &int(1)), Err(KError::BadRange));
    }

    #[test]
    fn bound_examples() {
        let chk = check_barycenter_bound(&extremal_profile(3, &int(1), &int(2), &int(1)).unwrap()).unwrap();
        assert_eq!((chk.b.clone(), chk.bound.clone()), (int(1), int(1)));
        assert!(chk.holds && chk.equality);
        let flat = RestrictedVolumeProfile::new(2, int(2), int(2), single(int(2), Polynomial::constant(int(1)))).unwrap();
        let chk = check_barycenter_bound(&flat).unwrap();
        assert_eq!(chk.bound, ratio(4, 3));
        assert!(chk.holds && !chk.equality);
    }

    #[test]
    fn extremal_grid_is_tight() {
        for n in 2..=6u64 {
            for t in 1..=5i64 {
                for (p, q) in [(1, 4), (1, 2), (3, 4)] {
                    let tau = int(t);
                    let eta = &tau * ratio(p, q);
                    let chk = check_barycenter_bound(&extremal_profile(n, &eta, &tau, &ratio(3, 2)).unwrap()).unwrap();
                    assert!(chk.equality, "n={n} tau={t} eta={eta}");
                }
            }
        }
    }

    #[test]
    fn integration_by_parts() {
        let line = RestrictedVolumeProfile::new(1, int(1), int(2), single(int(2), Polynomial::constant(int(1)))).unwrap();
        let c = vol_from_restricted(&line).unwrap();
        assert_eq!(c, line_model());
        let tau = ratio(7, 2);
        for n in 1..=5u64 {
            let v = Polynomial::linear(tau.clone(), int(-1)).pow(n as u32 - 1);
            let prof = RestrictedVolumeProfile::new(n, int(0), tau.clone(), single(tau.clone(), v)).unwrap();
            let c = vol_from_restricted(&prof).unwrap();
            assert_eq!(c.vol().pieces()[0], Polynomial::linear(tau.clone(), int(-1)).pow(n as u32));
            assert_eq!(c.ln(), &(0..n).fold(int(1), |a, _| a * &tau));
        }
        let zero = RestrictedVolumeProfile::new(2, int(1), int(1), single(int(1), Polynomial::zero())).unwrap();
        assert!(matches!(vol_from_restricted(&zero), Err(KError::InvalidCurve(_))));
    }

    #[test]
    fn logconcavity_samples() {
        let tau = int(3);
        assert!(logconcave_check(&single(tau.clone(), Polynomial::linear(tau, int(-1)).pow(3)), 50));
        assert!(logconcave_check(extremal_profile(3, &int(1), &int(2), &int(1)).unwrap().v(), 50));
        let kink = PiecewisePolynomial::new(
            vec![int(0), ratio(1, 2), int(1)],
            vec![Polynomial::linear(int(1), int(-1)), Polynomial::linear(int(0), int(1))],
        )
        .unwrap();
        assert!(!logconcave_check(&kink, 10));
    }

    #[test]
    fn random_profiles_satisfy_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let p = random_profile(&mut rng);
            let chk = check_barycenter_bound(&p).unwrap();
            assert!(chk.holds, "{:?}", p.to_file());
            let c = vol_from_restricted(&p).unwrap();
            assert_eq!(c.vol().integral() / c.ln(), chk.b);
            assert!(logconcave_check(&p.v().head(p.eta()).unwrap(), 40));
        }
    }

    #[test]
    fn profile_file_round_trip() {
        let p = extremal_profile(3, &ratio(1, 3), &int(2), &int(5)).unwrap();
        let json = serde_json::to_string(&p.to_file()).unwrap();
        let back = RestrictedVolumeProfile::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
