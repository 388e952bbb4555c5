//! Minimal dimensions for the section-count inequalities.

use lctcert::thresholds::{claim_registry, conditional_N, evaluate_claim, min_n, Cert, ThresholdQuery, Which};

fn main() {
    for which in [Which::LctCpi, Which::Superrigid] {
        for cert in [Cert::Volume, Cert::Cube, Cert::Best] {
            let mins: Vec<String> = (1..=5)
                .map(|r| {
                    let rep = min_n(ThresholdQuery { r, m: 1, cert }, which, 200).unwrap();
                    rep.minimal_n.map_or("-".into(), |n| n.to_string())
                })
                .collect();
            println!("{which:?} {cert:?}: r = 1..5 -> {}", mins.join(" "));
        }
    }

    let n12 = conditional_N(1, 2, 60, Some(36)).unwrap();
    let row = n12.row(34).unwrap();
    println!("N(1,2): minimal {:?}, claim 36 {:?}", n12.minimal_n, n12.claim_status.unwrap());
    println!("  n = 34: C = {} and C^2 > 2^32", row.lhs);

    for claim in claim_registry().iter().take(2) {
        let rep = evaluate_claim(claim, 100).unwrap();
        println!("{}: minimal {:?}, {:?}", claim.id, rep.minimal_n, rep.claim_status.unwrap());
    }
}
