//! From a section count and a colength bound to an lct lower bound.

use lctcert::arith::int;
use lctcert::certificates::{certify_lct, h0_k3, max_bad_points, ColengthBound};
use lctcert::lattice::{sigma_lower_bound, BoundMethod};

fn main() {
    // sextic K3: 9H has 245 sections, and σ̄_{2,11} >= 253
    let bound = sigma_lower_bound(2, &int(11), false, BoundMethod::Pick2d).unwrap();
    let cb = ColengthBound::from_sigma(int(11), &bound).unwrap();
    let h0 = h0_k3(9, 6).unwrap();
    let cert = certify_lct(&h0, &cb).unwrap();
    println!("h0 = {h0}, bound = {}: {}", bound.integer_floor(), cert.statement());
    for a in &cert.assumptions {
        println!("  assuming {a}");
    }

    // counting bad points when one point already eats 59 sections
    let h6 = h0_k3(6, 6).unwrap();
    println!("h0(6H) = {h6}: at most {} point(s)", max_bad_points(110, 59).unwrap());

    // a smooth point alone gives n/(n+1)
    let c = certify_lct(&1u32.into(), &ColengthBound::smooth_point(4)).unwrap();
    println!("smooth point of a 4-fold: {}", c.statement());
}
