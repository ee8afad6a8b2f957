//! Check an MLK proof, corrupt it, and watch the checker point at the step.
//!
//! Run with `cargo run --example check_proof`.

use minent::parse_sequent;
use minent::proof::Proof;
use minent::tableau::build_tableau;
use minent::translate::translate;

fn main() {
    let s = parse_sequent("a | b |-m ~a | ~b").unwrap();
    let p = translate(&build_tableau(&s, Default::default()).unwrap()).unwrap();
    print!("{p}");
    println!("check: {:?}", p.check());

    // The serialized form checks the same way.
    let back = Proof::from_json(&p.to_json()).unwrap();
    assert_eq!(back, p);

    // Drop the succedent of an inner step. Either that step or the first
    // step using it no longer matches its rule.
    let mut bad = p.clone();
    let mid = bad.steps.len() / 2;
    bad.steps[mid].sequent.succedent.clear();
    println!("cleared the succedent of step {mid}");
    match bad.check() {
        Ok(()) => println!("corrupted proof accepted?"),
        Err(e) => println!("corrupted proof: step {} rejected ({})", e.step, e.reason),
    }
}
