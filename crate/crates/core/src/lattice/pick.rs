//! Pick's theorem certificates for simple lattice polygons.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::LatticeError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PickCertificate {
    pub area: BigRational,
    pub boundary: u64,
    pub interior: u64,
    pub total: u64,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    let (ax, ay) = ((a.0 - o.0) as i128, (a.1 - o.1) as i128);
    let (bx, by) = ((b.0 - o.0) as i128, (b.1 - o.1) as i128);
    ax * by - ay * bx
}

fn on_segment(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    cross(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

fn segments_intersect(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> bool {
    let d1 = cross(c, d, a).signum();
    let d2 = cross(c, d, b).signum();
    let d3 = cross(a, b, c).signum();
    let d4 = cross(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(a, c, d) || on_segment(b, c, d) || on_segment(c, a, b) || on_segment(d, a, b)
}

impl LatticePolygon {
    /// Validates simplicity and stores the vertices counterclockwise.
    pub fn new(mut vertices: Vec<(i64, i64)>) -> Result<Self, LatticeError> {
        if vertices.len() < 3 {
            return Err(LatticeError::TooFewVertices);
        }
        let k = vertices.len();
        for i in 0..k {
            if vertices[i] == vertices[(i + 1) % k] {
                return Err(LatticeError::NotSimple);
            }
        }
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            for j in i + 1..k {
                let (c, d) = (vertices[j], vertices[(j + 1) % k]);
                let adjacent = j == i + 1 || (i == 0 && j == k - 1);
                if adjacent {
                    // shared endpoint only; reject folding back along the same line
                    let shared = if j == i + 1 { b } else { a };
                    let (p, q) = if j == i + 1 { (a, d) } else { (b, c) };
                    if cross(shared, p, q) == 0 {
                        let dot = ((p.0 - shared.0) as i128) * ((q.0 - shared.0) as i128)
                            + ((p.1 - shared.1) as i128) * ((q.1 - shared.1) as i128);
                        if dot > 0 {
                            return Err(LatticeError::NotSimple);
                        }
                    }
                } else if segments_intersect(a, b, c, d) {
                    return Err(LatticeError::NotSimple);
                }
            }
        }
        let twice = twice_area(&vertices);
        if twice == 0 {
            return Err(LatticeError::NotSimple);
        }
        if twice < 0 {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    fn edges(&self) -> impl Iterator<Item = ((i64, i64), (i64, i64))> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| (self.vertices[i], self.vertices[(i + 1) % k]))
    }

    fn contains_strictly(&self, p: (i64, i64)) -> bool {
        // even-odd ray cast to +x; caller has excluded boundary points
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.1 > p.1) != (b.1 > p.1) {
                let lhs = cross(a, b, p);
                if (b.1 > a.1) == (lhs > 0) {
                    inside = !inside;
                }
            }
        }
        inside
    }
}

fn twice_area(v: &[(i64, i64)]) -> i128 {
    let k = v.len();
    (0..k)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % k]);
            a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
        })
        .sum()
}

/// Area, boundary and interior counts, with the interior derived from Pick's
/// identity and confirmed by scanning the bounding box.
pub fn pick_certificate(p: &LatticePolygon) -> Result<PickCertificate, LatticeError> {
    let twice = twice_area(&p.vertices);
    let area = BigRational::new(BigInt::from(twice), BigInt::from(2));
    let boundary: u64 = p
        .edges()
        .map(|(a, b)| (a.0 - b.0).unsigned_abs().gcd(&(a.1 - b.1).unsigned_abs()))
        .sum();
    // i = A - b/2 + 1, i.e. 2i = 2A - b + 2
    let twice_interior = twice - boundary as i128 + 2;
    let interior = (twice_interior / 2) as u64;

    let mut bx = 0u64;
    let xs = p.vertices.iter().map(|v| v.0);
    let ys = p.vertices.iter().map(|v| v.1);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut brute_interior = 0u64;
    for x in x0..=x1 {
        for y in y0..=y1 {
            if p.edges().any(|(a, b)| on_segment((x, y), a, b)) {
                bx += 1;
            } else if p.contains_strictly((x, y)) {
                brute_interior += 1;
            }
        }
    }
    if twice_interior % 2 != 0 || brute_interior != interior || bx != boundary {
        return Err(LatticeError::PickMismatch {
            pick_interior: interior,
            scanned_interior: brute_interior,
            pick_boundary: boundary,
            scanned_boundary: bx,
        });
    }
    Ok(PickCertificate { area, boundary, interior, total: interior + boundary })
}
