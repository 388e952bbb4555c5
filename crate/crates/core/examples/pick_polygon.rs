//! Pick counts, cross-checked against a direct scan inside the certificate.

use lctcert::arith::fmt_ratio;
use lctcert::lattice::{pick2d_polygon_family_min, pick_certificate, LatticePolygon};

fn main() {
    for verts in [vec![(0, 0), (4, 0), (0, 4)], vec![(0, 0), (3, 0), (3, 1), (1, 1), (1, 3), (0, 3)]] {
        let p = LatticePolygon::new(verts.clone()).unwrap();
        let c = pick_certificate(&p).unwrap();
        println!("{verts:?}: area {} boundary {} interior {} total {}", fmt_ratio(&c.area), c.boundary, c.interior, c.total);
    }
    for m in [1, 2, 5, 11] {
        println!(
            "m = {m:>2}: polygon-family minimum {} (strict), {} (closed)",
            pick2d_polygon_family_min(m, true).unwrap(),
            pick2d_polygon_family_min(m, false).unwrap()
        );
    }
}
