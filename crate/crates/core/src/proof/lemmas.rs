//! Derived proofs: assignment proofs, the alpha/beta equivalences, minimal
//! weakening and DAG composition, plus the small classical helpers the
//! translator builds on.

use std::collections::BTreeSet;

use thiserror::Error;

use super::builder::{natural_conclusion, BuildError, ProofBuilder, StepId};
use super::{Proof, Rule};
use crate::formula::{classify, Atom, Classification, Formula, Sign, SignedFormula};
use crate::sequent::{Sequent, SequentKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("{0} is a literal and has no alpha/beta components")]
    Literal(SignedFormula),
    #[error("sequent {0} is false under the assignment")]
    FalseSequent(Sequent),
    #[error("atom {0} is assigned both true and false")]
    AssignmentOverlap(Atom),
    #[error("atom {0} is not assigned")]
    Unassigned(Atom),
    #[error("no cut-free derivation of {0}")]
    NotDerivable(Sequent),
    #[error("expected a minimal sequent, got {0}")]
    NotMinimal(Sequent),
    #[error("{rule} does not combine two proofs")]
    NotBinary { rule: Rule },
}

type Side = BTreeSet<Formula>;

fn with(s: &Side, x: &Formula) -> Side {
    let mut out = s.clone();
    out.insert(x.clone());
    out
}

fn without(s: &Side, x: &Formula) -> Side {
    let mut out = s.clone();
    out.remove(x);
    out
}

fn truth(pos: &BTreeSet<Atom>, f: &Formula) -> bool {
    match f {
        Formula::Atom(a) => pos.contains(a),
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::Not(a) => !truth(pos, a),
        Formula::And(a, b) => truth(pos, a) && truth(pos, b),
        Formula::Or(a, b) => truth(pos, a) || truth(pos, b),
        Formula::Implies(a, b) => !truth(pos, a) || truth(pos, b),
    }
}

/// The literal antecedent `pos, ~neg` of an assignment.
pub(crate) fn assignment_literals(pos: &BTreeSet<Atom>, neg: &BTreeSet<Atom>) -> Side {
    pos.iter()
        .map(|a| Formula::Atom(a.clone()))
        .chain(neg.iter().map(|a| Formula::not(Formula::Atom(a.clone()))))
        .collect()
}

/// The immediate subformulas a classification row is stated over.
fn schema_letters(f: &Formula) -> Side {
    match f {
        Formula::Not(inner) => match &**inner {
            Formula::Not(a) => Side::from([(**a).clone()]),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                Side::from([(**a).clone(), (**b).clone()])
            }
            _ => Side::new(),
        },
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            Side::from([(**a).clone(), (**b).clone()])
        }
        _ => Side::new(),
    }
}

/// `(phi, c)` where `c` joins the stripped components of `sf`: a conjunction
/// for T-alpha and F-beta, a disjunction for F-alpha and T-beta.
pub fn alpha_beta_sequents(sf: &SignedFormula) -> Result<(Formula, Formula), LemmaError> {
    let (x, y, conj) = match (classify(sf), sf.sign) {
        (Classification::Alpha(x, y), Sign::T) | (Classification::Beta(x, y), Sign::F) => (x, y, true),
        (Classification::Alpha(x, y), Sign::F) | (Classification::Beta(x, y), Sign::T) => (x, y, false),
        (Classification::Literal, _) => return Err(LemmaError::Literal(sf.clone())),
    };
    let c = if conj {
        Formula::and(x.formula, y.formula)
    } else {
        Formula::or(x.formula, y.formula)
    };
    Ok((sf.formula.clone(), c))
}

impl ProofBuilder {
    /// Proof of exactly `lits |- f` when `f` is true under `pos`, or of
    /// `lits, f |-` when it is false.
    fn evaluate(&mut self, lits: &Side, pos: &BTreeSet<Atom>, f: &Formula) -> Result<(bool, StepId), LemmaError> {
        let value = truth(pos, f);
        let target = if value {
            Sequent::classical(lits.iter().cloned(), [f.clone()])
        } else {
            Sequent::classical(with(lits, f), [])
        };
        if let Some(id) = self.known(&target) {
            return Ok((value, id));
        }
        let id = match f {
            Formula::Atom(_) => {
                let ax = self.axiom(f)?;
                if value {
                    ax
                } else {
                    self.not_left(ax, &Formula::not(f.clone()))?
                }
            }
            Formula::Top => self.top_right()?,
            Formula::Bottom => self.bottom_left()?,
            Formula::Not(a) => {
                let (va, pa) = self.evaluate(lits, pos, a)?;
                if va {
                    self.not_left(pa, f)?
                } else {
                    self.not_right(pa, f)?
                }
            }
            Formula::And(a, b) => {
                let (va, pa) = self.evaluate(lits, pos, a)?;
                if !va {
                    self.and_left(pa, f, true)?
                } else {
                    let (vb, pb) = self.evaluate(lits, pos, b)?;
                    if vb {
                        self.and_right(pa, pb, f)?
                    } else {
                        self.and_left(pb, f, false)?
                    }
                }
            }
            Formula::Or(a, b) => {
                let (va, pa) = self.evaluate(lits, pos, a)?;
                if va {
                    self.or_right(pa, f, true)?
                } else {
                    let (vb, pb) = self.evaluate(lits, pos, b)?;
                    if vb {
                        self.or_right(pb, f, false)?
                    } else {
                        self.or_left(pa, pb, f)?
                    }
                }
            }
            Formula::Implies(a, b) => {
                let (va, pa) = self.evaluate(lits, pos, a)?;
                if !va {
                    self.imp_right(pa, f)?
                } else {
                    let (vb, pb) = self.evaluate(lits, pos, b)?;
                    if vb {
                        self.imp_right(pb, f)?
                    } else {
                        self.imp_left(pa, pb, f)?
                    }
                }
            }
        };
        Ok((value, self.weaken_to(id, &target)?))
    }

    /// Classical proof of `pos, ~neg, gamma |- delta`.
    pub fn assignment(&mut self, pos: &BTreeSet<Atom>, neg: &BTreeSet<Atom>, gamma: &Side, delta: &Side) -> Result<StepId, LemmaError> {
        if let Some(a) = pos.intersection(neg).next() {
            return Err(LemmaError::AssignmentOverlap(a.clone()));
        }
        let mut atoms = BTreeSet::new();
        for f in gamma.iter().chain(delta) {
            f.collect_atoms(&mut atoms);
        }
        if let Some(a) = atoms.into_iter().find(|a| !pos.contains(a) && !neg.contains(a)) {
            return Err(LemmaError::Unassigned(a));
        }
        let lits = assignment_literals(pos, neg);
        let target = Sequent::classical(lits.union(gamma).cloned(), delta.iter().cloned());
        if let Some(id) = self.known(&target) {
            return Ok(id);
        }
        for g in gamma {
            if !truth(pos, g) {
                let (_, id) = self.evaluate(&lits, pos, g)?;
                return Ok(self.weaken_to(id, &target)?);
            }
        }
        for d in delta {
            if truth(pos, d) {
                let (_, id) = self.evaluate(&lits, pos, d)?;
                return Ok(self.weaken_to(id, &target)?);
            }
        }
        Err(LemmaError::FalseSequent(target))
    }

    /// Cut-free classical proof of a sequent whose sides are subsets of
    /// `ant`/`succ`, decomposing every compound formula with invertible
    /// rules. Formulas in `opaque` are decomposed last, so a sequent that is
    /// a tautology over them as atoms stays small.
    pub fn decompose(&mut self, ant: &Side, succ: &Side, opaque: &Side) -> Result<StepId, LemmaError> {
        let target = Sequent::classical(ant.iter().cloned(), succ.iter().cloned());
        if let Some(id) = self.known(&target) {
            return Ok(id);
        }
        if let Some(x) = ant.intersection(succ).next() {
            return Ok(self.axiom(x)?);
        }
        if ant.contains(&Formula::Bottom) {
            return Ok(self.bottom_left()?);
        }
        if succ.contains(&Formula::Top) {
            return Ok(self.top_right()?);
        }
        let compound = |f: &&Formula| matches!(f, Formula::Not(_) | Formula::And(..) | Formula::Or(..) | Formula::Implies(..));
        let pick = |side: &Side, want_opaque: bool| {
            side.iter().filter(compound).find(|f| opaque.contains(*f) == want_opaque).cloned()
        };
        let choice = pick(ant, false)
            .map(|f| (f, true))
            .or_else(|| pick(succ, false).map(|f| (f, false)))
            .or_else(|| pick(ant, true).map(|f| (f, true)))
            .or_else(|| pick(succ, true).map(|f| (f, false)));
        let Some((f, left)) = choice else {
            return Err(LemmaError::NotDerivable(target));
        };
        if left {
            let rest = without(ant, &f);
            match &f {
                Formula::Not(a) => {
                    let p = self.decompose(&rest, &with(succ, a), opaque)?;
                    if !self.sequent(p).succedent.contains(&**a) {
                        return Ok(p);
                    }
                    Ok(self.not_left(p, &f)?)
                }
                Formula::And(a, b) => {
                    let p = self.decompose(&with(&with(&rest, a), b), succ, opaque)?;
                    let mut cur = p;
                    if self.sequent(cur).antecedent.contains(&**a) {
                        cur = self.and_left(cur, &f, true)?;
                    }
                    if self.sequent(cur).antecedent.contains(&**b) {
                        cur = self.and_left(cur, &f, false)?;
                    }
                    Ok(cur)
                }
                Formula::Or(a, b) => {
                    let p = self.decompose(&with(&rest, a), succ, opaque)?;
                    if !self.sequent(p).antecedent.contains(&**a) {
                        return Ok(p);
                    }
                    let q = self.decompose(&with(&rest, b), succ, opaque)?;
                    if !self.sequent(q).antecedent.contains(&**b) {
                        return Ok(q);
                    }
                    Ok(self.or_left(p, q, &f)?)
                }
                Formula::Implies(a, b) => {
                    let p = self.decompose(&rest, &with(succ, a), opaque)?;
                    if !self.sequent(p).succedent.contains(&**a) {
                        return Ok(p);
                    }
                    let q = self.decompose(&with(&rest, b), succ, opaque)?;
                    if !self.sequent(q).antecedent.contains(&**b) {
                        return Ok(q);
                    }
                    Ok(self.imp_left(p, q, &f)?)
                }
                _ => unreachable!("picked a non-compound formula"),
            }
        } else {
            let rest = without(succ, &f);
            match &f {
                Formula::Not(a) => {
                    let p = self.decompose(&with(ant, a), &rest, opaque)?;
                    if !self.sequent(p).antecedent.contains(&**a) {
                        return Ok(p);
                    }
                    Ok(self.not_right(p, &f)?)
                }
                Formula::And(a, b) => {
                    let p = self.decompose(ant, &with(&rest, a), opaque)?;
                    if !self.sequent(p).succedent.contains(&**a) {
                        return Ok(p);
                    }
                    let q = self.decompose(ant, &with(&rest, b), opaque)?;
                    if !self.sequent(q).succedent.contains(&**b) {
                        return Ok(q);
                    }
                    Ok(self.and_right(p, q, &f)?)
                }
                Formula::Or(a, b) => {
                    let p = self.decompose(ant, &with(&with(&rest, a), b), opaque)?;
                    let mut cur = p;
                    if self.sequent(cur).succedent.contains(&**a) {
                        cur = self.or_right(cur, &f, true)?;
                    }
                    if self.sequent(cur).succedent.contains(&**b) {
                        cur = self.or_right(cur, &f, false)?;
                    }
                    Ok(cur)
                }
                Formula::Implies(a, b) => {
                    let p = self.decompose(&with(ant, a), &with(&rest, b), opaque)?;
                    let s = self.sequent(p);
                    if !s.antecedent.contains(&**a) && !s.succedent.contains(&**b) {
                        return Ok(p);
                    }
                    Ok(self.imp_right(p, &f)?)
                }
                _ => unreachable!("picked a non-compound formula"),
            }
        }
    }

    /// Classical proof of exactly `ant |- succ` by decomposition.
    pub fn tautology(&mut self, ant: &Side, succ: &Side, opaque: &Side) -> Result<StepId, LemmaError> {
        let p = self.decompose(ant, succ, opaque)?;
        let target = Sequent::classical(ant.iter().cloned(), succ.iter().cloned());
        Ok(self.weaken_to(p, &target)?)
    }

    /// `phi |- c` (`forward`) or `c |- phi` for the pair of
    /// [`alpha_beta_sequents`].
    pub fn alpha_beta(&mut self, sf: &SignedFormula, forward: bool) -> Result<StepId, LemmaError> {
        let (phi, c) = alpha_beta_sequents(sf)?;
        let letters = schema_letters(&phi);
        let (l, r) = if forward { (phi, c) } else { (c, phi) };
        self.tautology(&Side::from([l]), &Side::from([r]), &letters)
    }

    /// `f |- d` where `f` is one of the leaves of the disjunction tree `d`.
    pub fn disjunct_intro(&mut self, f: &Formula, d: &Formula) -> Result<StepId, LemmaError> {
        if f == d {
            return Ok(self.axiom(f)?);
        }
        let target = Sequent::classical([f.clone()], [d.clone()]);
        if let Some(id) = self.known(&target) {
            return Ok(id);
        }
        let Formula::Or(l, r) = d else {
            return Err(LemmaError::NotDerivable(target));
        };
        if has_disjunct(l, f) {
            let p = self.disjunct_intro(f, l)?;
            Ok(self.or_right(p, d, true)?)
        } else {
            let p = self.disjunct_intro(f, r)?;
            Ok(self.or_right(p, d, false)?)
        }
    }

    /// `items |- conj(items)` by right conjunction over the left-associated
    /// fold; `|- top` when `items` is empty.
    pub fn conj_intro(&mut self, items: &[Formula]) -> Result<StepId, LemmaError> {
        let Some((first, rest)) = items.split_first() else {
            return Ok(self.top_right()?);
        };
        let mut acc = first.clone();
        let mut cur = self.axiom(first)?;
        for x in rest {
            let next = Formula::and(acc, x.clone());
            let ax = self.axiom(x)?;
            cur = self.and_right(cur, ax, &next)?;
            acc = next;
        }
        Ok(cur)
    }

    /// Replaces `items` in the antecedent of a classical step by
    /// `conj(items)`, one left-conjunction step per item. For an empty list
    /// `top` is added by weakening.
    pub fn fold_conj_left(&mut self, id: StepId, items: &[Formula]) -> Result<StepId, LemmaError> {
        let Some((first, rest)) = items.split_first() else {
            return Ok(self.weaken(id, &Side::from([Formula::Top]), &Side::new())?);
        };
        let mut acc = first.clone();
        let mut cur = id;
        for x in rest {
            let next = Formula::and(acc.clone(), x.clone());
            cur = self.and_left(cur, &next, true)?;
            cur = self.and_left(cur, &next, false)?;
            acc = next;
        }
        if rest.is_empty() {
            cur = self.weaken(cur, &Side::from([acc]), &Side::new())?;
        }
        Ok(cur)
    }
}

fn has_disjunct(d: &Formula, f: &Formula) -> bool {
    if d == f {
        return true;
    }
    match d {
        Formula::Or(l, r) => has_disjunct(l, f) || has_disjunct(r, f),
        _ => false,
    }
}

/// Classical proof of `pos, ~neg, gamma |- delta`, built by evaluating each
/// formula under the assignment.
pub fn prove_assignment(
    pos: &BTreeSet<Atom>,
    neg: &BTreeSet<Atom>,
    gamma: &BTreeSet<Formula>,
    delta: &BTreeSet<Formula>,
) -> Result<Proof, LemmaError> {
    let mut b = ProofBuilder::new();
    let id = b.assignment(pos, neg, gamma, delta)?;
    Ok(b.finish(id))
}

/// Proofs of `phi |- c` and `c |- phi` for the joined components `c` of a
/// non-literal signed formula.
pub fn prove_alpha_beta(sf: &SignedFormula) -> Result<(Proof, Proof), LemmaError> {
    let mut b = ProofBuilder::new();
    let fwd = b.alpha_beta(sf, true)?;
    let bwd = b.alpha_beta(sf, false)?;
    Ok((b.finish(fwd), b.finish(bwd)))
}

/// Extends a proof of `G |-m D` (D nonempty) to one of `G |-m D, extra`.
pub fn mlk_weaken(p: &Proof, extra: &BTreeSet<Formula>) -> Result<Proof, LemmaError> {
    let s = p.conclusion();
    if s.kind != SequentKind::Minimal {
        return Err(LemmaError::NotMinimal(s.clone()));
    }
    if s.succedent.is_empty() {
        return Err(BuildError::EmptySuccedent(s.clone()).into());
    }
    if extra.is_subset(&s.succedent) {
        return Ok(p.clone());
    }
    let mut b = ProofBuilder::new();
    let id = b.import(p)?;
    let id = b.m_weaken_right(id, extra)?;
    Ok(b.finish(id))
}

/// Joins two proofs with a two-premise rule, sharing identical steps. The
/// conclusion is the rule's natural conclusion from the two premises.
pub fn compose(p1: &Proof, p2: &Proof, rule: Rule, principal: Vec<Formula>) -> Result<Proof, LemmaError> {
    if rule.premise_count() != 2 {
        return Err(LemmaError::NotBinary { rule });
    }
    let mut b = ProofBuilder::new();
    let x = b.import(p1)?;
    let y = b.import(p2)?;
    let prem = [b.sequent(x), b.sequent(y)];
    let sequent = natural_conclusion(rule, &prem, &principal)
        .ok_or_else(|| BuildError::Shape(principal.first().cloned().unwrap_or(Formula::Bottom)))?;
    let id = b.push(rule, vec![x, y], principal, sequent)?;
    Ok(b.finish(id))
}
