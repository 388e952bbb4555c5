//! β of model volume curves and the barycenter bound on profiles.

use lctcert::arith::{fmt_ratio, int, ratio};
use lctcert::kstability::{
    beta, check_barycenter_bound, extremal_profile, random_profile, tau_of, vol_from_restricted, CurveFile,
    RestrictedVolumeProfile, VolumeCurve,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let file: CurveFile = serde_json::from_str(include_str!("data/p2_curve.json")).unwrap();
    let curve = VolumeCurve::from_file(&file).unwrap();
    println!("P^2 curve: tau = {}, beta = {}", fmt_ratio(&tau_of(&curve).unwrap()), fmt_ratio(&beta(&int(1), &curve)));

    let file: CurveFile = serde_json::from_str(include_str!("data/extremal_profile.json")).unwrap();
    let p = RestrictedVolumeProfile::from_file(&file).unwrap();
    let c = check_barycenter_bound(&p).unwrap();
    println!("extremal profile: b = {}, bound = {}, equality {}", fmt_ratio(&c.b), fmt_ratio(&c.bound), c.equality);

    let p = extremal_profile(4, &ratio(1, 2), &int(3), &int(2)).unwrap();
    let v = vol_from_restricted(&p).unwrap();
    println!("Ln = {} for the (4, 1/2, 3) extremal profile", fmt_ratio(v.ln()));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let worst = (0..100)
        .map(|_| {
            let c = check_barycenter_bound(&random_profile(&mut rng)).unwrap();
            c.bound - c.b
        })
        .min()
        .unwrap();
    println!("100 random profiles: smallest slack {}", fmt_ratio(&worst));
}
