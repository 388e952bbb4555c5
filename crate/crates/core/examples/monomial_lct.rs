//! Threshold of a staircase ideal from its Newton polygon.

use lctcert::arith::fmt_ratio;
use lctcert::monomial::{colength, lct_monomial, supporting_normal, MonomialIdeal};

fn main() {
    let ideal: MonomialIdeal = include_str!("data/staircase.txt").parse().expect("valid ideal");
    let lct = lct_monomial(&ideal);
    let q = supporting_normal(&ideal).expect("nondegenerate normal");
    let normal: Vec<String> = q.supporting_normal.iter().map(fmt_ratio).collect();
    println!("generators:\n{ideal}");
    println!("lct = {}", fmt_ratio(&lct));
    println!("normal = ({}) certifies: {}", normal.join(", "), q.certifies(&ideal));
    println!("colength = {}", colength(&ideal).expect("finite colength"));

    for n in 1..=6 {
        println!("maximal ideal in dim {n}: lct = {}", fmt_ratio(&lct_monomial(&MonomialIdeal::maximal(n))));
    }
}
