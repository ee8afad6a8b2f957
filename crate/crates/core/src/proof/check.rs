use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{Proof, ProofStep, Rule};
use crate::formula::{positive_atoms, Formula};
use crate::sequent::{Sequent, SequentKind};

/// Machine-readable reason for rejecting a step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RejectReason {
    EmptyProof,
    BadConclusion,
    DanglingPremise,
    PremiseArity,
    KindMismatch,
    PrincipalArity,
    PrincipalShape,
    SchemaMismatch,
    SideCondition,
}

impl RejectReason {
    pub fn code(self) -> &'static str {
        match self {
            RejectReason::EmptyProof => "empty-proof",
            RejectReason::BadConclusion => "bad-conclusion",
            RejectReason::DanglingPremise => "dangling-premise",
            RejectReason::PremiseArity => "premise-arity",
            RejectReason::KindMismatch => "kind-mismatch",
            RejectReason::PrincipalArity => "principal-arity",
            RejectReason::PrincipalShape => "principal-shape",
            RejectReason::SchemaMismatch => "schema-mismatch",
            RejectReason::SideCondition => "side-condition",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
#[error("step {step} rejected: {reason}")]
pub struct Reject {
    pub step: usize,
    pub reason: RejectReason,
}

/// Checks every step in order and reports the first failure.
pub fn check(p: &Proof) -> Result<(), Reject> {
    if p.steps.is_empty() {
        return Err(Reject { step: 0, reason: RejectReason::EmptyProof });
    }
    for (i, step) in p.steps.iter().enumerate() {
        let mut premises = Vec::with_capacity(step.premises.len());
        for &q in &step.premises {
            if q >= i {
                return Err(Reject { step: i, reason: RejectReason::DanglingPremise });
            }
            premises.push(&p.steps[q].sequent);
        }
        check_step(step, &premises).map_err(|reason| Reject { step: i, reason })?;
    }
    if p.conclusion >= p.steps.len() {
        return Err(Reject { step: p.conclusion, reason: RejectReason::BadConclusion });
    }
    Ok(())
}

type Side = BTreeSet<Formula>;

/// Whether one context `G` exists with `sides[i].0 = G ∪ sides[i].1` for all
/// `i`. Each listed formula must be present in its side; the context may or
/// may not contain it as well.
fn shared_context(sides: &[(&Side, &[&Formula])]) -> bool {
    for (s, extra) in sides {
        if !extra.iter().all(|x| s.contains(*x)) {
            return false;
        }
    }
    for (i, (s, extra)) in sides.iter().enumerate() {
        for x in s.iter() {
            if extra.contains(&x) {
                continue;
            }
            for (j, (t, _)) in sides.iter().enumerate() {
                if i != j && !t.contains(x) {
                    return false;
                }
            }
        }
    }
    true
}

fn single(xs: &[Formula]) -> Result<&Formula, RejectReason> {
    match xs {
        [x] => Ok(x),
        _ => Err(RejectReason::PrincipalArity),
    }
}

fn ensure(cond: bool) -> Result<(), RejectReason> {
    if cond {
        Ok(())
    } else {
        Err(RejectReason::SchemaMismatch)
    }
}

fn set_of(xs: &[Formula]) -> Side {
    xs.iter().cloned().collect()
}

fn union(a: &Side, b: &Side) -> Side {
    a.union(b).cloned().collect()
}

fn without(a: &Side, x: &Formula) -> Side {
    let mut out = a.clone();
    out.remove(x);
    out
}

fn check_kinds(rule: Rule, conclusion: &Sequent, premises: &[&Sequent]) -> bool {
    let all = |k: SequentKind| premises.iter().all(|p| p.kind == k);
    match rule {
        Rule::MBridge => conclusion.kind == SequentKind::Minimal && all(SequentKind::Classical),
        r if r.is_minimal() => conclusion.kind == SequentKind::Minimal && all(SequentKind::Minimal),
        _ => conclusion.kind == SequentKind::Classical && all(SequentKind::Classical),
    }
}

/// Checks one step against the sequents of its premises.
pub fn check_step(step: &ProofStep, premises: &[&Sequent]) -> Result<(), RejectReason> {
    use Rule::*;
    let rule = step.rule;
    if premises.len() != rule.premise_count() {
        return Err(RejectReason::PremiseArity);
    }
    let c = &step.sequent;
    if !check_kinds(rule, c, premises) {
        return Err(RejectReason::KindMismatch);
    }
    let pr = &step.principal;
    match rule {
        Axiom => {
            let a = single(pr)?;
            ensure(c.antecedent == set_of(pr) && c.succedent == set_of(pr) && c.antecedent.contains(a))
        }
        BottomLeft | TopRight => {
            if !pr.is_empty() {
                return Err(RejectReason::PrincipalArity);
            }
            let (ant, succ) = if rule == BottomLeft {
                (set_of(&[Formula::Bottom]), Side::new())
            } else {
                (Side::new(), set_of(&[Formula::Top]))
            };
            ensure(c.antecedent == ant && c.succedent == succ)
        }
        WeakenLeft | WeakenRight => {
            let p = premises[0];
            let added: Vec<&Formula> = pr.iter().collect();
            if rule == WeakenLeft {
                ensure(
                    c.succedent == p.succedent
                        && shared_context(&[(&p.antecedent, &[]), (&c.antecedent, &added)]),
                )
            } else {
                ensure(
                    c.antecedent == p.antecedent
                        && shared_context(&[(&p.succedent, &[]), (&c.succedent, &added)]),
                )
            }
        }
        NotLeft | NotRight | MNotRight => {
            let neg = single(pr)?;
            let Formula::Not(a) = neg else {
                return Err(RejectReason::PrincipalShape);
            };
            let p = premises[0];
            if rule == NotLeft {
                ensure(
                    shared_context(&[(&p.antecedent, &[]), (&c.antecedent, &[neg])])
                        && shared_context(&[(&p.succedent, &[a]), (&c.succedent, &[])]),
                )
            } else {
                ensure(
                    shared_context(&[(&p.antecedent, &[a]), (&c.antecedent, &[])])
                        && shared_context(&[(&p.succedent, &[]), (&c.succedent, &[neg])]),
                )
            }
        }
        AndLeftFirst | AndLeftSecond => {
            let conj = single(pr)?;
            let Formula::And(a, b) = conj else {
                return Err(RejectReason::PrincipalShape);
            };
            let comp: &Formula = if rule == AndLeftFirst { a } else { b };
            let p = premises[0];
            ensure(
                p.succedent == c.succedent
                    && shared_context(&[(&p.antecedent, &[comp]), (&c.antecedent, &[conj])]),
            )
        }
        AndRight | MAndRight => {
            let conj = single(pr)?;
            let Formula::And(a, b) = conj else {
                return Err(RejectReason::PrincipalShape);
            };
            let (p, q) = (premises[0], premises[1]);
            ensure(
                p.antecedent == c.antecedent
                    && q.antecedent == c.antecedent
                    && shared_context(&[(&p.succedent, &[a]), (&q.succedent, &[b]), (&c.succedent, &[conj])]),
            )
        }
        OrLeft | MOrLeft => {
            let disj = single(pr)?;
            let Formula::Or(a, b) = disj else {
                return Err(RejectReason::PrincipalShape);
            };
            let (p, q) = (premises[0], premises[1]);
            ensure(
                p.succedent == c.succedent
                    && q.succedent == c.succedent
                    && shared_context(&[(&p.antecedent, &[a]), (&q.antecedent, &[b]), (&c.antecedent, &[disj])]),
            )
        }
        OrRightFirst | OrRightSecond | MOrRightFirst | MOrRightSecond => {
            let disj = single(pr)?;
            let Formula::Or(a, b) = disj else {
                return Err(RejectReason::PrincipalShape);
            };
            let comp: &Formula = if matches!(rule, OrRightFirst | MOrRightFirst) { a } else { b };
            let p = premises[0];
            ensure(
                p.antecedent == c.antecedent
                    && shared_context(&[(&p.succedent, &[comp]), (&c.succedent, &[disj])]),
            )
        }
        ImpRight | MImpRight => {
            let imp = single(pr)?;
            let Formula::Implies(a, b) = imp else {
                return Err(RejectReason::PrincipalShape);
            };
            let p = premises[0];
            ensure(
                shared_context(&[(&p.antecedent, &[a]), (&c.antecedent, &[])])
                    && shared_context(&[(&p.succedent, &[b]), (&c.succedent, &[imp])]),
            )
        }
        ImpLeft => {
            let imp = single(pr)?;
            let Formula::Implies(a, b) = imp else {
                return Err(RejectReason::PrincipalShape);
            };
            let (p, q) = (premises[0], premises[1]);
            if !p.succedent.contains(&**a) || !q.antecedent.contains(&**b) {
                return Err(RejectReason::SchemaMismatch);
            }
            let sigmas = [without(&p.succedent, a), p.succedent.clone()];
            let deltas = [without(&q.antecedent, b), q.antecedent.clone()];
            let ant_ok = deltas.iter().any(|d| {
                let mut ant = union(&p.antecedent, d);
                ant.insert(imp.clone());
                ant == c.antecedent
            });
            let succ_ok = sigmas.iter().any(|s| union(s, &q.succedent) == c.succedent);
            ensure(ant_ok && succ_ok)
        }
        Cut => {
            let a = single(pr)?;
            let (p, q) = (premises[0], premises[1]);
            ensure(
                shared_context(&[(&p.antecedent, &[]), (&q.antecedent, &[a]), (&c.antecedent, &[])])
                    && shared_context(&[(&p.succedent, &[a]), (&q.succedent, &[]), (&c.succedent, &[])]),
            )
        }
        MAxiom => {
            let neg = single(pr)?;
            let Formula::Not(inner) = neg else {
                return Err(RejectReason::PrincipalShape);
            };
            let Some(atom) = inner.as_atom() else {
                return Err(RejectReason::PrincipalShape);
            };
            ensure(c.succedent == set_of(pr))?;
            if c.antecedent.iter().any(|g| positive_atoms(g).contains(atom)) {
                return Err(RejectReason::SideCondition);
            }
            Ok(())
        }
        MBridge => {
            if !pr.is_empty() {
                return Err(RejectReason::PrincipalArity);
            }
            let p = premises[0];
            ensure(p.antecedent == c.antecedent && p.succedent == c.succedent)
        }
        MCut => {
            let a = single(pr)?;
            let (p, q) = (premises[0], premises[1]);
            if !p.succedent.contains(a) {
                return Err(RejectReason::SchemaMismatch);
            }
            let succ_ok = [without(&p.succedent, a), p.succedent.clone()]
                .iter()
                .any(|s| union(s, &q.succedent) == c.succedent);
            ensure(
                succ_ok
                    && shared_context(&[(&p.antecedent, &[]), (&q.antecedent, &[a]), (&c.antecedent, &[])]),
            )
        }
        MCumulate => {
            let (p, q) = (premises[0], premises[1]);
            let moved = set_of(pr);
            if moved.len() > 1 {
                return Err(RejectReason::SideCondition);
            }
            ensure(
                moved == p.succedent
                    && p.antecedent == q.antecedent
                    && c.antecedent == union(&p.antecedent, &moved)
                    && c.succedent == q.succedent,
            )
        }
    }
}
