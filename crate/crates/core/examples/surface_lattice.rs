//! Intersection numbers on a sextic K3 containing a line.

use lctcert::arith::fmt_ratio;
use lctcert::surface::{gamma_mult_bound, max_mult_from_selfint, pairing, DivisorClass, IntersectionForm};

fn main() {
    let g = IntersectionForm::sextic_k3_line();
    for s in 0..=3 {
        let z = DivisorClass::from_ints(&[2, -s]);
        println!("(2H - {s}C)^2 = {}", fmt_ratio(&pairing(&g, &z, &z).unwrap()));
    }
    let s = max_mult_from_selfint(&g, &DivisorClass::from_ints(&[2, 0]), 1, -2).unwrap();
    println!("self-intersection >= -2 forces s <= {s}");
    let (v, below) = gamma_mult_bound(6, 6);
    println!("{v} < 4: {below}");
}
