//! Persisting σ witnesses; every read recounts before trusting.

use lctcert::arith::int;
use lctcert::cache::SigmaCache;
use lctcert::lattice::sigma_exact_2d;

fn main() {
    let path = std::env::temp_dir().join(format!("lctcert-example-{}.jsonl", std::process::id()));
    let mut cache = SigmaCache::open(&path).unwrap();
    for m in 1..=3 {
        cache.put(&sigma_exact_2d(m, true).unwrap()).unwrap();
    }
    let mut cache = SigmaCache::open(&path).unwrap();
    let hit = cache.get(2, &int(3), true).unwrap();
    println!("{} entries; sigma_{{2,3}} = {} (rejected {})", cache.len(), hit.value, cache.rejected);
    std::fs::remove_file(&path).unwrap();
}
