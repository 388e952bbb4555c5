//! Invariants as property tests, each against an independent oracle.

use std::cmp::Ordering;

use lctcert::arith::{
    binomial, compare_pow2_fractional, compare_surd, e_enclosure, int, isqrt, ratio, QuadraticSurd,
};
use lctcert::certificates::{certify_lct, ColengthBound, Flavor};
use lctcert::kstability::{check_barycenter_bound, extremal_profile, random_profile, vol_from_restricted};
use lctcert::lattice::{
    count_simplex, pick_certificate, sigma_exact_2d, sigma_lower_bound, sigma_upper_search, BoundMethod,
    LatticePolygon, SimplexSpec,
};
use lctcert::monomial::{
    colength, diagonal_primal_value, lct_monomial, supporting_normal, ExponentVector, MonomialIdeal,
};
use lctcert::surface::{pairing, DivisorClass, IntersectionForm};
use lctcert::thresholds::{check_lct_cpi, check_superrigidity_dim, conditional_row, min_n, Cert, ThresholdQuery, Which};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

mod common;
use common::{brute_counts, plane_staircases, shoelace2, star_polygon, surd_interval};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, max_global_rejects: 20_000, ..ProptestConfig::default() }
}

// ---------- polygons ----------

proptest! {
    #![proptest_config(cfg(500))]
    #[test]
    fn pick_matches_brute_force(pts in prop::collection::vec((-7i64..=7, -7i64..=7), 3..9)) {
        let verts = star_polygon(&pts);
        prop_assume!(verts.len() >= 3);
        let poly = LatticePolygon::new(verts.clone());
        prop_assume!(poly.is_ok());
        let c = pick_certificate(&poly.unwrap()).unwrap();
        let (i, b) = brute_counts(&verts);
        prop_assert_eq!((c.interior, c.boundary), (i, b));
        prop_assert_eq!(c.area.clone() * int(2), int(shoelace2(&verts)));
        // i + b/2 = A + 1
        prop_assert_eq!(int(i as i64) + ratio(b as i64, 2), c.area + int(1));
    }
}

// ---------- surds ----------

proptest! {
    #![proptest_config(cfg(1000))]
    #[test]
    fn surd_agrees_with_intervals(an in -50i64..50, ad in 1i64..8, bn in -20i64..20, bd in 1i64..8, c in 0u64..60, rn in -60i64..60, rd in 1i64..8) {
        let (a, b, r) = (ratio(an, ad), ratio(bn, bd), ratio(rn, rd));
        let s = QuadraticSurd::new(a.clone(), b.clone(), c);
        let got = compare_surd(&s, &r);
        let root = isqrt(&BigUint::from(c));
        if b.is_zero() {
            prop_assert_eq!(got, a.cmp(&r));
        } else if &root * &root == BigUint::from(c) {
            let exact = a + b * BigRational::from_integer(BigInt::from(root));
            prop_assert_eq!(got, exact.cmp(&r));
        } else {
            let mut k = 4;
            loop {
                let (lo, hi) = surd_interval(&a, &b, c, k);
                if hi < r { prop_assert_eq!(got, Ordering::Less); break; }
                if lo > r { prop_assert_eq!(got, Ordering::Greater); break; }
                k += 4;
                prop_assert!(k < 80, "interval never resolved");
            }
        }
        // antisymmetry through negation
        prop_assert_eq!(compare_surd(&s.neg(), &-r), got.reverse());
    }

    #[test]
    fn binomial_identities(n in 1u64..120, k in 0u64..120) {
        prop_assume!(k <= n);
        prop_assert_eq!(binomial(n, k), binomial(n, n - k));
        if k >= 1 {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }

    #[test]
    fn pow2_comparison_scales(q in 1u64..10_000, p in -5i64..60, m in 1u32..5, t in 1u32..4) {
        // q vs 2^(p/m) is unchanged by raising both sides to t, or by rewriting p/m as pt/mt
        let q = BigUint::from(q);
        let base = compare_pow2_fractional(&q, p, m);
        prop_assert_eq!(base, compare_pow2_fractional(&q.pow(t), p * t as i64, m));
        prop_assert_eq!(base, compare_pow2_fractional(&q, p * t as i64, m * t));
    }
}

#[test]
fn e_enclosures_nest() {
    for power in [1, 2] {
        let mut prev = e_enclosure(power, 0);
        for d in 1..=30 {
            let cur = e_enclosure(power, d);
            assert!(prev.contains_interval(&cur), "power {power} digits {d}");
            prev = cur;
        }
    }
}

// ---------- conditional family against floating logs ----------

fn log2_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).log2()).sum()
}

proptest! {
    #![proptest_config(cfg(100))]
    #[test]
    fn conditional_agrees_with_log_evaluation(n in 1u64..=300, r in 1u64..=4, m in 1u64..=4) {
        let row = conditional_row(n, r, m).unwrap();
        let lb = log2_binomial(n + m + r, m * r + m + r - 1);
        if lb == f64::NEG_INFINITY {
            prop_assert!(row.pass);
        } else {
            // implemented form m·log C <= n - m; strict form log C < n/m - 1
            let diff = m as f64 * lb - (n as f64 - m as f64);
            if diff.abs() > 1e-6 {
                prop_assert_eq!(row.pass, diff < 0.0);
                prop_assert_eq!(row.strict_form_pass, Some(diff < 0.0));
            }
        }
    }
}

// ---------- monomial ideals ----------

fn colength_at_least_simplex(ideal: &MonomialIdeal) {
    let q = supporting_normal(ideal).unwrap();
    assert!(q.certifies(ideal));
    let count = count_simplex(&SimplexSpec::new(q.supporting_normal.clone(), true).unwrap()).unwrap();
    let col = colength(ideal).unwrap();
    assert!(col >= count, "{ideal}: colength {col} < {count}");
    assert_eq!(lct_monomial(ideal), q.mu.recip());
}

#[test]
fn colength_dominates_simplex_count_in_the_plane() {
    let family = plane_staircases(6);
    assert!(family.len() > 900);
    for ideal in &family {
        colength_at_least_simplex(ideal);
    }
}

#[test]
fn colength_dominates_simplex_count_in_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    use rand::Rng;
    for _ in 0..300 {
        let mut gens: Vec<ExponentVector> =
            (0..3).map(|i| { let mut e = vec![0u32; 3]; e[i] = rng.gen_range(1..=5); ExponentVector(e) }).collect();
        for _ in 0..rng.gen_range(0..5) {
            let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=4)).collect();
            if e.iter().any(|&v| v > 0) {
                gens.push(ExponentVector(e));
            }
        }
        let ideal = MonomialIdeal::new(3, gens).unwrap();
        colength_at_least_simplex(&ideal);
    }
}

proptest! {
    #![proptest_config(cfg(200))]
    #[test]
    fn adding_generators_is_monotone(gens in prop::collection::vec((0u32..6, 0u32..6), 0..4), ax in 1u32..7, by in 1u32..7, extra in (0u32..6, 0u32..6)) {
        let mut g: Vec<ExponentVector> = gens.into_iter().map(|(a, b)| ExponentVector(vec![a, b])).collect();
        g.push(ExponentVector(vec![ax, 0]));
        g.push(ExponentVector(vec![0, by]));
        prop_assume!(g.iter().all(|e| !e.is_zero()));
        prop_assume!(extra != (0, 0));
        let j = MonomialIdeal::new(2, g).unwrap();
        let bigger = j.with_generator(ExponentVector(vec![extra.0, extra.1])).unwrap();
        prop_assert!(lct_monomial(&bigger) >= lct_monomial(&j));
        prop_assert!(colength(&bigger).unwrap() <= colength(&j).unwrap());
        // lazily generated dual against the full primal program
        prop_assert_eq!(lct_monomial(&bigger).recip(), diagonal_primal_value(&bigger));
    }
}

#[test]
fn powers_of_maximal_ideal() {
    for n in 1..=8usize {
        for k in 1..=8u32 {
            assert_eq!(lct_monomial(&MonomialIdeal::power_of_maximal(n, k)), ratio(n as i64, k as i64));
        }
    }
}

// ---------- simplices and σ ----------

proptest! {
    #![proptest_config(cfg(200))]
    #[test]
    fn simplex_counts_are_monotone(a in prop::collection::vec((1i64..6, 2i64..12), 1..4), bump in 0usize..3, up in 1i64..4) {
        let a: Vec<BigRational> = a.into_iter().map(|(p, q)| ratio(p, q)).collect();
        let count = |a: &[BigRational], strict| count_simplex(&SimplexSpec::new(a.to_vec(), strict).unwrap()).unwrap();
        prop_assert!(count(&a, true) <= count(&a, false));
        let mut b = a.clone();
        let i = bump % b.len();
        b[i] = &b[i] + ratio(up, 7);
        prop_assert!(count(&b, true) <= count(&a, true));
        prop_assert!(count(&b, false) <= count(&a, false));
    }
}

#[test]
fn exact_planar_values_sit_above_pick_bounds() {
    for m in 1..=6u64 {
        for strict in [true, false] {
            let r = sigma_exact_2d(m, strict).unwrap();
            r.verify().unwrap();
            assert_eq!(r.witness.count().unwrap(), r.value);
            let b = sigma_lower_bound(2, &int(m as i64), strict, BoundMethod::Pick2d).unwrap().integer_floor();
            assert!(r.value >= b);
            if m <= 2 {
                assert_eq!(r.value, b, "m = {m}");
            }
        }
    }
}

#[test]
fn search_stays_above_cube_bound() {
    for n in 2..=4usize {
        let r = sigma_upper_search(n, &int(1), false, 80, 11).unwrap();
        r.verify().unwrap();
        assert!(r.value >= BigUint::from((1u64 << n) - 1));
    }
}

// ---------- certificates and thresholds ----------

proptest! {
    #![proptest_config(cfg(300))]
    #[test]
    fn certify_is_monotone(h0 in 0u64..400, drop in 0u64..50, bound in 1i64..400, raise in 0i64..50, lam in 1i64..12) {
        let cb = ColengthBound::new(int(lam), int(bound), false, Flavor::NonKlt).unwrap();
        let up = ColengthBound::new(int(lam), int(bound + raise), false, Flavor::NonKlt).unwrap();
        if let Ok(c) = certify_lct(&BigUint::from(h0), &cb) {
            let lower = certify_lct(&BigUint::from(h0.saturating_sub(drop)), &cb).unwrap();
            prop_assert!(lower.conclusion >= c.conclusion);
            let wider = certify_lct(&BigUint::from(h0), &up).unwrap();
            prop_assert!(wider.conclusion >= c.conclusion);
        }
    }
}

#[test]
fn threshold_tables_are_monotone_and_bracketed() {
    for which in [Which::LctCpi, Which::Superrigid] {
        for cert in [Cert::Volume, Cert::Cube, Cert::Pick2dNa, Cert::Best] {
            for r in 1..=6u64 {
                let rep = min_n(ThresholdQuery { r, m: 1, cert }, which, 150).unwrap();
                let Some(m) = rep.minimal_n else { continue };
                // only rows where the certificate applies can fail the tail
                assert!(rep.table.iter().filter(|row| row.n >= m && row.rhs.is_some()).all(|row| row.pass));
                assert!(rep.monotone_tail, "{which:?} {cert:?} r={r}: {:?}", rep.non_monotone);
                assert!(rep.row(m).unwrap().pass);
                if let Some(prev) = rep.row(m - 1) {
                    assert!(!prev.pass);
                }
            }
        }
    }
    for r in 1..=3u64 {
        for m in 1..=4u64 {
            let rep = min_n(ThresholdQuery { r, m, cert: Cert::Block }, Which::Conditional, 400).unwrap();
            if rep.minimal_n.is_some() {
                assert!(rep.monotone_tail, "conditional r={r} m={m}");
            }
        }
    }
}

#[test]
fn best_dominates_single_certificates() {
    for r in 1..=5u64 {
        for n in 1..=80u64 {
            for (check, start) in [(check_lct_cpi as fn(u64, u64, Cert) -> _, r + 1), (check_superrigidity_dim, 2 * r)] {
                if n < start {
                    continue;
                }
                let any = Cert::SINGLE.iter().any(|&c| check(n, r, c).unwrap_or(false));
                assert_eq!(check(n, r, Cert::Best).unwrap(), any, "n={n} r={r}");
            }
        }
    }
}

// ---------- surfaces ----------

proptest! {
    #![proptest_config(cfg(300))]
    #[test]
    fn pairing_is_bilinear_and_symmetric(
        g in prop::collection::vec(-9i64..10, 6),
        u in prop::collection::vec(-6i64..7, 3),
        v in prop::collection::vec(-6i64..7, 3),
        w in prop::collection::vec(-6i64..7, 3),
        s in -5i64..6,
    ) {
        let gram = vec![vec![g[0], g[1], g[2]], vec![g[1], g[3], g[4]], vec![g[2], g[4], g[5]]];
        let f = IntersectionForm::new(gram, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let (u, v, w) = (DivisorClass::from_ints(&u), DivisorClass::from_ints(&v), DivisorClass::from_ints(&w));
        prop_assert_eq!(pairing(&f, &u, &v).unwrap(), pairing(&f, &v, &u).unwrap());
        let comb = u.sub_scaled(&int(-s), &w); // u + s·w
        prop_assert_eq!(
            pairing(&f, &comb, &v).unwrap(),
            pairing(&f, &u, &v).unwrap() + int(s) * pairing(&f, &w, &v).unwrap()
        );
    }
}

// ---------- volume profiles ----------

#[test]
fn random_profiles_satisfy_the_barycenter_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let p = random_profile(&mut rng);
        let c = check_barycenter_bound(&p).unwrap();
        assert!(c.holds, "{}", serde_json::to_string(&p.to_file()).unwrap());
        let curve = vol_from_restricted(&p).unwrap();
        assert_eq!(curve.vol().integral() / curve.ln(), c.b);
    }
}

proptest! {
    #![proptest_config(cfg(100))]
    #[test]
    fn extremal_profiles_are_tight(n in 2u64..=6, tn in 1i64..=20, frac in 1i64..16) {
        let tau = ratio(tn, 4);
        let eta = &tau * ratio(frac, 16);
        let c = check_barycenter_bound(&extremal_profile(n, &eta, &tau, &BigRational::one()).unwrap()).unwrap();
        prop_assert!(c.equality);
        prop_assert!(c.b.to_f64().unwrap() > 0.0);
        prop_assert!(!c.bound.is_zero());
    }
}
