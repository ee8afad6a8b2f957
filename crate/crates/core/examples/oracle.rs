//! Decide a few minimal-entailment questions by enumerating minimal models.
//!
//! Run with `cargo run --example oracle`.

use std::collections::BTreeSet;

use minent::{holds, minimal_models, parse_formula, parse_sequent, vars, Formula};

fn main() {
    let theory: BTreeSet<Formula> = ["a | b", "c -> a"].iter().map(|f| parse_formula(f).unwrap()).collect();
    let universe = vars(&theory);
    println!("minimal models of {{a | b, c -> a}} over {{a, b, c}}:");
    for m in minimal_models(&theory, &universe).unwrap() {
        let atoms: Vec<_> = m.atoms().iter().map(|a| a.name()).collect();
        println!("  {{{}}}", atoms.join(", "));
    }

    // Adding `b` to the theory withdraws `~b`: the entailment is nonmonotonic.
    // The last line is the classical reading of the first and fails.
    for s in ["a | b |-m ~a | ~b", "a | b |-m ~c", "a | b, b |-m ~b", "a | b |- ~a | ~b"] {
        let s = parse_sequent(s).unwrap();
        println!("{s:<24} {}", holds(&s).unwrap());
    }
}
