//! Exact planar σ values, their lower bounds and a higher-dimensional search.

use lctcert::arith::{fmt_ratio, int};
use lctcert::lattice::{best_lower_bound, sigma_exact_2d, sigma_upper_search};

fn main() {
    for m in 1..=4u64 {
        for strict in [true, false] {
            let r = sigma_exact_2d(m, strict).unwrap();
            r.verify().unwrap();
            let a: Vec<String> = r.witness.a.iter().map(fmt_ratio).collect();
            println!(
                "{}_{{2,{m}}} = {:>3}  a = ({})  bound {}",
                if strict { "sigma" } else { "sigma_bar" },
                r.value,
                a.join(", "),
                best_lower_bound(2, &int(m as i64), strict).unwrap()
            );
        }
    }

    // n = 3 has no exact method; the search gives a certified upper bound
    let r = sigma_upper_search(3, &int(1), false, 200, 7).unwrap();
    r.verify().unwrap();
    println!("sigma_bar_{{3,1}} in [{}, {}]", r.lower_bound.unwrap(), r.value);
}
