//! The clause family `phi_n`: all `2^n` non-tautological clauses of length
//! `n` over `p1..pn`. It is classically unsatisfiable, so `phi_n |-m` holds.
//! OTAB needs at least `n!` branches for it, while the MLK proof below
//! stays polynomial in the size of `phi_n`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::{Atom, Formula};
use crate::proof::{LemmaError, Proof, ProofBuilder, StepId};
use crate::sequent::Sequent;

pub const MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhiError {
    #[error("n must be between 1 and {MAX_N}, got {0}")]
    OutOfRange(usize),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
}

fn var(i: usize) -> Formula {
    Formula::atom(&format!("p{i}"))
}

/// The clause that is false exactly when `p_i` has the value of bit `i-1`
/// of `mask` for every `i`.
fn clause(n: usize, mask: u32) -> Formula {
    Formula::disj((1..=n).map(|i| if mask >> (i - 1) & 1 == 1 { Formula::not(var(i)) } else { var(i) }))
}

pub fn generate_phi(n: usize) -> Result<BTreeSet<Formula>, PhiError> {
    if !(1..=MAX_N).contains(&n) {
        return Err(PhiError::OutOfRange(n));
    }
    Ok((0..1u32 << n).map(|mask| clause(n, mask)).collect())
}

/// `phi_n |-m` as a minimal sequent.
pub fn phi_sequent(n: usize) -> Result<Sequent, PhiError> {
    Ok(Sequent::minimal(generate_phi(n)?, []))
}

/// Total symbol count of the clauses of `phi_n`.
pub fn phi_size(n: usize) -> Result<usize, PhiError> {
    Ok(generate_phi(n)?.iter().map(Formula::size).sum())
}

/// MLK proof of `phi_n |-m`: a classical refutation that cuts on
/// `p1..pn` in turn, refutes each of the `2^n` full assignments with the one
/// clause it falsifies, and ends with the bridge to minimal kind.
pub fn prove_phi_mlk(n: usize) -> Result<Proof, PhiError> {
    let phi = generate_phi(n)?;
    let mut b = ProofBuilder::new();
    let refutation = refute(&mut b, n, &phi, &mut BTreeSet::new(), &mut BTreeSet::new())?;
    let id = b.bridge(refutation).map_err(LemmaError::from)?;
    Ok(b.finish(id))
}

/// `pos, ~neg, phi |-` once every variable is assigned.
fn refute(
    b: &mut ProofBuilder,
    n: usize,
    phi: &BTreeSet<Formula>,
    pos: &mut BTreeSet<Atom>,
    neg: &mut BTreeSet<Atom>,
) -> Result<StepId, LemmaError> {
    let i = pos.len() + neg.len() + 1;
    if i > n {
        let mask = (1..=n).filter(|&k| pos.contains(&Atom::new(&format!("p{k}")))).fold(0u32, |m, k| m | 1 << (k - 1));
        let falsified = clause(n, mask);
        let leaf = b.assignment(pos, neg, &BTreeSet::from([falsified]), &BTreeSet::new())?;
        return Ok(b.weaken(leaf, phi, &BTreeSet::new())?);
    }
    let p = var(i);
    let atom = Atom::new(&format!("p{i}"));
    pos.insert(atom.clone());
    let if_true = refute(b, n, phi, pos, neg)?;
    pos.remove(&atom);
    neg.insert(atom.clone());
    let if_false = refute(b, n, phi, pos, neg)?;
    neg.remove(&atom);
    let np = Formula::not(p.clone());
    let ax = b.axiom(&p)?;
    let middle = b.not_right(ax, &np)?;
    let step = b.cut(middle, if_true, &p, false)?;
    Ok(b.cut(step, if_false, &np, false)?)
}
