//! Tableau branches against direct MLK proof size on the unsatisfiable
//! clause sets phi_n.
//!
//! Run with `cargo run --release --example phi_separation`.

use minent::phi::{phi_sequent, phi_size, prove_phi_mlk};
use minent::tableau::build_tableau;
use minent::Strategy;

fn main() {
    println!("{:>2} {:>6} {:>10} {:>10} {:>10}", "n", "|phi|", "branches", "n!", "MLK steps");
    let mut fact = 1usize;
    for n in 1..=5 {
        fact *= n;
        let t = build_tableau(&phi_sequent(n).unwrap(), Strategy::MostConstrainedShallow).unwrap();
        let p = prove_phi_mlk(n).unwrap();
        p.check().unwrap();
        println!(
            "{n:>2} {:>6} {:>10} {fact:>10} {:>10}",
            phi_size(n).unwrap(),
            t.branches().len(),
            p.steps.len()
        );
    }
}
