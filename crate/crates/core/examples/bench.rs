//! Run the random benchmark family into a temporary directory.
//!
//! Run with `cargo run --release --example bench [seed] [count]`.

use minent::bench::{run_bench, Family, Verdict};
use minent::tableau::BuildOptions;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(1, |s| s.parse().expect("seed"));
    let count = args.next().map_or(200, |s| s.parse().expect("count"));
    let out = std::env::temp_dir().join(format!("minent-bench-{seed}"));
    let records = run_bench(&Family::Random { seed, count }, &out, BuildOptions::default()).unwrap();

    let valid: Vec<_> = records.iter().filter(|r| r.verdict == Verdict::Valid).collect();
    let steps: usize = valid.iter().filter_map(|r| r.translated_steps).sum();
    let biggest = valid.iter().max_by_key(|r| r.translated_steps).unwrap();
    println!("{} instances, {} valid", records.len(), valid.len());
    println!("mean translated proof: {:.1} steps", steps as f64 / valid.len().max(1) as f64);
    println!("largest: {} ({} steps)", biggest.sequent, biggest.translated_steps.unwrap());
    println!("records written to {}", out.display());
}
