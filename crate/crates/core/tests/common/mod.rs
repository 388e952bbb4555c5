//! Independent oracles shared by the property and acceptance tests.

#![allow(dead_code)]

use lctcert::arith::isqrt;
use lctcert::monomial::{ExponentVector, MonomialIdeal};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;

/// Orders vertices by angle around their centroid, exactly; collinear
/// directions keep only the farthest point.
pub fn star_polygon(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let k = pts.len() as i64;
    let (sx, sy) = pts.iter().fold((0, 0), |(a, b), p| (a + p.0, b + p.1));
    let rel: Vec<((i64, i64), (i64, i64))> = pts.iter().map(|&p| ((p.0 * k - sx, p.1 * k - sy), p)).collect();
    let half = |v: (i64, i64)| if v.1 > 0 || (v.1 == 0 && v.0 > 0) { 0 } else { 1 };
    let mut rel: Vec<_> = rel.into_iter().filter(|(v, _)| *v != (0, 0)).collect();
    rel.sort_by(|(a, _), (b, _)| {
        half(*a).cmp(&half(*b)).then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0))).then_with(|| {
            (b.0 * b.0 + b.1 * b.1).cmp(&(a.0 * a.0 + a.1 * a.1))
        })
    });
    let mut out: Vec<((i64, i64), (i64, i64))> = Vec::new();
    for e in rel {
        if let Some(last) = out.last() {
            let (a, b) = (last.0, e.0);
            if half(a) == half(b) && a.0 * b.1 - a.1 * b.0 == 0 {
                continue;
            }
        }
        out.push(e);
    }
    out.into_iter().map(|(_, p)| p).collect()
}

/// Crossing-number and on-segment tests, no Pick involved.
pub fn brute_counts(v: &[(i64, i64)]) -> (u64, u64) {
    let (minx, maxx) = (v.iter().map(|p| p.0).min().unwrap(), v.iter().map(|p| p.0).max().unwrap());
    let (miny, maxy) = (v.iter().map(|p| p.1).min().unwrap(), v.iter().map(|p| p.1).max().unwrap());
    let (mut interior, mut boundary) = (0, 0);
    for x in minx..=maxx {
        for y in miny..=maxy {
            let mut on = false;
            let mut inside = false;
            for i in 0..v.len() {
                let (a, b) = (v[i], v[(i + 1) % v.len()]);
                let cross = (b.0 - a.0) * (y - a.1) - (b.1 - a.1) * (x - a.0);
                if cross == 0 && x >= a.0.min(b.0) && x <= a.0.max(b.0) && y >= a.1.min(b.1) && y <= a.1.max(b.1) {
                    on = true;
                }
                if (a.1 > y) != (b.1 > y) {
                    // x-coordinate of the crossing compared exactly
                    let lhs = (x - a.0) * (b.1 - a.1);
                    let rhs = (y - a.1) * (b.0 - a.0);
                    if (b.1 - a.1 > 0 && lhs < rhs) || (b.1 - a.1 < 0 && lhs > rhs) {
                        inside = !inside;
                    }
                }
            }
            if on {
                boundary += 1;
            } else if inside {
                interior += 1;
            }
        }
    }
    (interior, boundary)
}

pub fn shoelace2(v: &[(i64, i64)]) -> i64 {
    (0..v.len()).map(|i| v[i].0 * v[(i + 1) % v.len()].1 - v[(i + 1) % v.len()].0 * v[i].1).sum::<i64>().abs()
}

/// Interval for `a + b√c` from integer square roots at scale 10^k.
pub fn surd_interval(a: &BigRational, b: &BigRational, c: u64, k: u32) -> (BigRational, BigRational) {
    let scale = BigUint::from(10u32).pow(k);
    let s = isqrt(&(BigUint::from(c) * &scale * &scale));
    let den = BigInt::from(scale);
    let lo = BigRational::new(BigInt::from(s.clone()), den.clone());
    let hi = BigRational::new(BigInt::from(s + 1u32), den);
    let (x, y) = if b.is_negative() { (b * &hi, b * &lo) } else { (b * &lo, b * &hi) };
    (a + x, a + y)
}

/// All zero-dimensional plane ideals whose staircase fits in [0, side]².
pub fn plane_staircases(side: u32) -> Vec<MonomialIdeal> {
    fn rec(x: u32, prev: u32, side: u32, h: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if x > side {
            if *h.last().unwrap() == 0 {
                out.push(h.clone());
            }
            return;
        }
        for y in 0..=prev {
            h.push(y);
            rec(x + 1, y, side, h, out);
            h.pop();
        }
    }
    let mut heights = Vec::new();
    for h0 in 1..=side {
        let mut h = vec![h0];
        rec(1, h0, side, &mut h, &mut heights);
    }
    heights.sort();
    heights.dedup();
    heights
        .into_iter()
        .map(|h| {
            let gens: Vec<ExponentVector> = (0..h.len())
                .filter(|&x| x == 0 || h[x] < h[x - 1])
                .map(|x| ExponentVector(vec![x as u32, h[x]]))
                .collect();
            MonomialIdeal::new(2, gens).unwrap()
        })
        .collect()
}

