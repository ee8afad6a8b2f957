//! Build OTAB tableaux under each expansion strategy and inspect branches.
//!
//! Run with `cargo run --example tableau`.

use minent::tableau::{analyze, build_tableau, StatusCounts};
use minent::{parse_sequent, Strategy};

fn main() {
    let s = parse_sequent("a | b, a -> c |-m ~b | c").unwrap();
    let t = build_tableau(&s, Strategy::default()).unwrap();
    println!("{s}: {} nodes, {} branches", t.nodes().len(), t.branches().len());
    for info in analyze(&t) {
        let at: Vec<_> = info.at.iter().map(|a| a.name()).collect();
        let theta = info.theta.map(|b| format!(" (smaller model on branch {b})")).unwrap_or_default();
        println!("  branch {}: {:<12} atoms {{{}}}{theta}", info.id, info.status().name(), at.join(", "));
    }

    println!("\nbranch counts per strategy:");
    let s = parse_sequent("p | q, p | ~q, ~p | q, ~p | ~q |-m").unwrap();
    for strategy in Strategy::ALL {
        let t = build_tableau(&s, strategy).unwrap();
        let c = StatusCounts::of(&analyze(&t));
        println!("  {:<28} {} branches, {} t-closed", strategy.name(), t.branches().len(), c.t_closed);
    }

    println!("\nserialized tableau for a |-m ~b:");
    let t = build_tableau(&parse_sequent("a |-m ~b").unwrap(), Strategy::default()).unwrap();
    println!("{}", t.to_json());
}
