use std::collections::BTreeSet;

use super::*;
use crate::parser::{parse_formula, parse_sequent};
use crate::proof::check;
use crate::semantics::holds;
use crate::tableau::{build_tableau, Strategy};

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn side(xs: &[&str]) -> Side {
    xs.iter().map(|x| f(x)).collect()
}

fn tableau(s: &str) -> Tableau {
    build_tableau(&parse_sequent(s).unwrap(), Strategy::default()).unwrap()
}

fn assert_proves(p: &Proof, s: &str) {
    assert_eq!(check(p), Ok(()));
    assert_eq!(p.conclusion(), &parse_sequent(s).unwrap());
}

/// The first node with two children.
fn branching(t: &Tableau) -> NodeId {
    (0..t.nodes().len()).find(|&n| t.node(n).children.len() == 2).unwrap()
}

#[test]
fn root_annotations_are_the_sequent() {
    let t = tableau("a & b, c |-m a | d");
    let tr = Translator::new(&t).unwrap();
    assert_eq!(tr.annotations().a[0], side(&["a & b", "c"]));
    assert_eq!(tr.annotations().b[0], side(&["a | d"]));
}

#[test]
fn alpha_and_beta_clauses() {
    let t = tableau("a & b, c |-m a & b");
    let table = annotate_ab(&t);
    let u = (0..t.nodes().len())
        .find(|&n| t.node(n).expansion.is_some_and(|e| t.node(e.principal).label == SignedFormula::t(f("a & b"))))
        .unwrap();
    let v = t.node(u).children[0];
    assert_eq!(table.a[v], side(&["a", "b", "c"]));

    let t = tableau("c |-m a & b");
    let table = annotate_ab(&t);
    let u = branching(&t);
    let (v, w) = (t.node(u).children[0], t.node(u).children[1]);
    assert_eq!(table.b[u], side(&["a & b"]));
    assert_eq!(table.b[v], side(&["a"]));
    assert_eq!(table.b[w], side(&["b"]));
}

#[test]
fn settlement_example() {
    let t = tableau("a | (a & b) |-m ~b");
    let tr = Translator::new(&t).unwrap();
    let table = tr.annotations();
    let right_leaf = t.branch(1).leaf.unwrap();
    assert_eq!(table.c[right_leaf], side(&["a"]));
    assert_eq!(table.d[right_leaf], BTreeSet::from([0]));
    let u = branching(&t);
    let s = &table.settled[&u];
    assert!(table.d[u].is_empty());
    assert_eq!(s.e, BTreeSet::from([0]));
    assert_eq!(s.f, side(&["a"]));
    assert_eq!(s.omega, Some(f("a")));
    assert!(table.c[0].is_empty() && table.d[0].is_empty());
}

#[test]
fn leaves_agree_with_unmarked_formulas() {
    for s in ["a | (a & b) |-m ~b", "~~(a & b), a |-m a", "(a -> b) & a |-m b | c", "~(a | b) |-m ~a & ~b"] {
        let t = tableau(s);
        let table = annotate_ab(&t);
        for b in 0..t.branches().len() {
            let leaf = t.branch(b).leaf.unwrap();
            let (ts, fs) = t.unmarked_sets(b);
            assert_eq!(table.a[leaf], ts, "{s} branch {b}");
            assert_eq!(table.b[leaf], fs, "{s} branch {b}");
        }
    }
}

#[test]
fn branch_formula_proofs() {
    let t = tableau("a | b, c |-m a -> d, c");
    let mut tr = Translator::new(&t).unwrap_or_else(|_| panic!("valid"));
    let p = tr.prove_branch_formula(0, &SignedFormula::t(f("c"))).unwrap();
    assert_eq!(check(&p), Ok(()));
    assert_eq!(p.conclusion().succedent, side(&["c"]));
    let p = tr.prove_branch_formula(0, &SignedFormula::t(f("a | b"))).unwrap();
    assert_eq!(check(&p), Ok(()));
    let p = tr.prove_branch_formula(0, &SignedFormula::f(f("a -> d"))).unwrap();
    assert_eq!(check(&p), Ok(()));
    assert_eq!(p.conclusion().antecedent, side(&["a -> d"]));
    let missing = tr.prove_branch_formula(0, &SignedFormula::t(f("d")));
    assert!(matches!(missing, Err(TranslateError::NotOnBranch { .. })));
}

#[test]
fn omega_lemmas() {
    let t = tableau("a | (a & b) |-m ~b");
    let mut tr = Translator::new(&t).unwrap();
    let u = branching(&t);
    let gamma = f("a | (a & b)");
    let p = tr.prove_omega_gamma(u, &Side::new(), &gamma).unwrap();
    assert_proves(&p, "a |-m a | (a & b)");
    assert!(holds(p.conclusion()).unwrap());
    let all = side(&["a | (a & b)"]);
    assert!(matches!(tr.prove_omega_gamma(u, &all, &gamma), Err(TranslateError::Precondition(_))));
    let p = tr.prove_omega_b(u).unwrap();
    assert_proves(&p, "a | (a & b), a |-m ~b");
}

#[test]
fn translation_examples() {
    for s in ["a |-m a", "a | (a & b) |-m ~b", "a | b |-m ~a | ~b", "p1 | p2, p1 | ~p2, ~p1 | p2, ~p1 | ~p2 |-m"] {
        let p = translate(&tableau(s)).unwrap();
        assert_proves(&p, s);
    }
    assert_eq!(translate(&tableau("a |-m ~a")).unwrap_err(), TranslateError::InvalidTableau);
}

#[test]
fn empty_theta_model_uses_top() {
    // The smaller branch has no true atoms, so its conjunction is top.
    let s = "a | ~b |-m ~a";
    let t = tableau(s);
    let tr = Translator::new(&t).unwrap();
    assert!(tr.annotations().c.iter().any(|c| c.contains(&Formula::Top)));
    assert_proves(&translate(&t).unwrap(), s);
}

#[test]
fn every_node_sequent_is_true() {
    for s in ["a | (a & b) |-m ~b", "a | b | (a & b & c) |-m ~c", "(a | b) & (b | c) |-m ~b | ~a & ~c"] {
        let t = tableau(s);
        let mut tr = Translator::new(&t).unwrap();
        tr.run().unwrap();
        for u in 0..t.nodes().len() {
            let p = tr.node_proof(u).unwrap();
            assert_eq!(check(&p), Ok(()));
            assert_eq!(p.conclusion(), &tr.node_sequent(u));
            assert!(holds(p.conclusion()).unwrap(), "{s} node {u}: {}", p.conclusion());
        }
    }
}

#[test]
fn stats_count_the_pieces() {
    let t = tableau("a | (a & b) |-m ~b");
    let p = translate(&t).unwrap();
    let st = stats(&t, &p);
    assert_eq!(st.tableau_nodes, t.nodes().len());
    assert_eq!(st.branches, 2);
    assert_eq!(st.status.ignorable1, 1);
    assert_eq!(st.status.ignorable2, 1);
    assert_eq!(st.proof_steps, p.steps.len());
}
