//! Translate accepted tableaux into MLK proofs and report their sizes.
//!
//! Run with `cargo run --example translate`.

use minent::tableau::build_tableau;
use minent::translate::{stats, translate};
use minent::{holds, parse_sequent, Strategy};

fn main() {
    let cases = [
        "a | b |-m ~a | ~b",
        "a | b |-m ~(a & b)",
        "a | (a & b) |-m ~b",
        "a | (a & b), c | (c & d) |-m ~b",
        "p, p -> q |-m q & ~r",
        "a | b, a -> c, b -> c |-m c",
    ];
    println!("{:<34} {:>6} {:>8} {:>7} {:>8}", "sequent", "nodes", "branches", "steps", "symbols");
    for text in cases {
        let s = parse_sequent(text).unwrap();
        assert!(holds(&s).unwrap());
        let t = build_tableau(&s, Strategy::default()).unwrap();
        let p = translate(&t).unwrap();
        p.check().expect("translated proofs check");
        assert_eq!(p.conclusion(), &s);
        let st = stats(&t, &p);
        println!(
            "{:<34} {:>6} {:>8} {:>7} {:>8}",
            text, st.tableau_nodes, st.branches, st.proof_steps, st.proof_symbols
        );
    }
}
