use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use super::check::{check_step, RejectReason};
use super::{Proof, ProofStep, Rule};
use crate::formula::{Atom, Formula};
use crate::sequent::{Sequent, SequentKind};

/// Index of a step inside a [`ProofBuilder`].
pub type StepId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("{rule} step rejected ({reason}) for {sequent}")]
    Rejected { rule: Rule, reason: RejectReason, sequent: Sequent },
    #[error("principal formula {0} does not fit the rule")]
    Shape(Formula),
    #[error("{formula} is not available in {sequent}")]
    MissingFormula { formula: Formula, sequent: Sequent },
    #[error("cannot weaken {from} to {to}")]
    Weakening { from: Sequent, to: Sequent },
    #[error("minimal weakening needs a nonempty succedent in {0}")]
    EmptySuccedent(Sequent),
}

type Side = BTreeSet<Formula>;

fn without(s: &Side, x: &Formula) -> Side {
    let mut out = s.clone();
    out.remove(x);
    out
}

fn with(s: &Side, x: &Formula) -> Side {
    let mut out = s.clone();
    out.insert(x.clone());
    out
}

fn union(a: &Side, b: &Side) -> Side {
    a.union(b).cloned().collect()
}

fn kind_of(rule: Rule) -> SequentKind {
    if rule.is_minimal() {
        SequentKind::Minimal
    } else {
        SequentKind::Classical
    }
}

/// The conclusion a rule yields from the given premises when every
/// component is consumed. `None` when the principal formulas do not have
/// the rule's shape.
pub(crate) fn natural_conclusion(rule: Rule, premises: &[&Sequent], principal: &[Formula]) -> Option<Sequent> {
    use Rule::*;
    let kind = kind_of(rule);
    let one = || match principal {
        [x] => Some(x),
        _ => None,
    };
    let seq = |antecedent: Side, succedent: Side| Some(Sequent { antecedent, succedent, kind });
    if premises.len() != rule.premise_count() {
        return None;
    }
    match rule {
        Axiom => {
            let a = one()?;
            seq(Side::from([a.clone()]), Side::from([a.clone()]))
        }
        BottomLeft => seq(Side::from([Formula::Bottom]), Side::new()),
        TopRight => seq(Side::new(), Side::from([Formula::Top])),
        WeakenLeft => {
            let p = premises[0];
            seq(union(&p.antecedent, &principal.iter().cloned().collect()), p.succedent.clone())
        }
        WeakenRight => {
            let p = premises[0];
            seq(p.antecedent.clone(), union(&p.succedent, &principal.iter().cloned().collect()))
        }
        NotLeft => {
            let neg = one()?;
            let Formula::Not(a) = neg else { return None };
            let p = premises[0];
            seq(with(&p.antecedent, neg), without(&p.succedent, a))
        }
        NotRight | MNotRight => {
            let neg = one()?;
            let Formula::Not(a) = neg else { return None };
            let p = premises[0];
            seq(without(&p.antecedent, a), with(&p.succedent, neg))
        }
        AndLeftFirst | AndLeftSecond => {
            let conj = one()?;
            let Formula::And(a, b) = conj else { return None };
            let comp: &Formula = if rule == AndLeftFirst { a } else { b };
            let p = premises[0];
            seq(with(&without(&p.antecedent, comp), conj), p.succedent.clone())
        }
        AndRight | MAndRight => {
            let conj = one()?;
            let Formula::And(a, b) = conj else { return None };
            let (p, q) = (premises[0], premises[1]);
            let succ = union(&without(&p.succedent, a), &without(&q.succedent, b));
            seq(p.antecedent.clone(), with(&succ, conj))
        }
        OrLeft | MOrLeft => {
            let disj = one()?;
            let Formula::Or(a, b) = disj else { return None };
            let (p, q) = (premises[0], premises[1]);
            let ant = union(&without(&p.antecedent, a), &without(&q.antecedent, b));
            seq(with(&ant, disj), p.succedent.clone())
        }
        OrRightFirst | OrRightSecond | MOrRightFirst | MOrRightSecond => {
            let disj = one()?;
            let Formula::Or(a, b) = disj else { return None };
            let comp: &Formula = if matches!(rule, OrRightFirst | MOrRightFirst) { a } else { b };
            let p = premises[0];
            seq(p.antecedent.clone(), with(&without(&p.succedent, comp), disj))
        }
        ImpRight | MImpRight => {
            let imp = one()?;
            let Formula::Implies(a, b) = imp else { return None };
            let p = premises[0];
            seq(without(&p.antecedent, a), with(&without(&p.succedent, b), imp))
        }
        ImpLeft => {
            let imp = one()?;
            let Formula::Implies(a, b) = imp else { return None };
            let (p, q) = (premises[0], premises[1]);
            let ant = with(&union(&p.antecedent, &without(&q.antecedent, b)), imp);
            seq(ant, union(&without(&p.succedent, a), &q.succedent))
        }
        Cut => {
            let a = one()?;
            let (p, q) = (premises[0], premises[1]);
            seq(
                union(&p.antecedent, &without(&q.antecedent, a)),
                union(&without(&p.succedent, a), &q.succedent),
            )
        }
        MAxiom => {
            let neg = one()?;
            seq(Side::new(), Side::from([neg.clone()]))
        }
        MBridge => {
            let p = premises[0];
            seq(p.antecedent.clone(), p.succedent.clone())
        }
        MCut => {
            let a = one()?;
            let (p, q) = (premises[0], premises[1]);
            seq(p.antecedent.clone(), union(&without(&p.succedent, a), &q.succedent))
        }
        MCumulate => {
            let (p, q) = (premises[0], premises[1]);
            seq(union(&p.antecedent, &p.succedent), q.succedent.clone())
        }
    }
}

/// Accumulates checked steps into a proof DAG.
///
/// Every pushed step is checked against its premises immediately, identical
/// steps are stored once, and the first step deriving each sequent is
/// indexed so builders can reuse earlier results.
#[derive(Default, Clone, Debug)]
pub struct ProofBuilder {
    steps: Vec<ProofStep>,
    dedup: HashMap<ProofStep, StepId>,
    by_sequent: HashMap<Sequent, StepId>,
}

impl ProofBuilder {
    pub fn new() -> ProofBuilder {
        ProofBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn sequent(&self, id: StepId) -> &Sequent {
        &self.steps[id].sequent
    }

    pub fn step(&self, id: StepId) -> &ProofStep {
        &self.steps[id]
    }

    /// A step already deriving exactly `s`, if any.
    pub fn known(&self, s: &Sequent) -> Option<StepId> {
        self.by_sequent.get(s).copied()
    }

    /// Checks and appends a step with an explicit conclusion.
    pub fn push(&mut self, rule: Rule, premises: Vec<StepId>, principal: Vec<Formula>, sequent: Sequent) -> Result<StepId, BuildError> {
        let step = ProofStep { sequent, rule, premises, principal };
        if let Some(&id) = self.dedup.get(&step) {
            return Ok(id);
        }
        let prem: Vec<&Sequent> = step.premises.iter().map(|&p| &self.steps[p].sequent).collect();
        if let Err(reason) = check_step(&step, &prem) {
            return Err(BuildError::Rejected { rule, reason, sequent: step.sequent });
        }
        let id = self.steps.len();
        self.by_sequent.entry(step.sequent.clone()).or_insert(id);
        self.dedup.insert(step.clone(), id);
        self.steps.push(step);
        Ok(id)
    }

    /// Appends a step whose conclusion is the rule's natural conclusion.
    pub fn apply(&mut self, rule: Rule, premises: Vec<StepId>, principal: Vec<Formula>) -> Result<StepId, BuildError> {
        let prem: Vec<&Sequent> = premises.iter().map(|&p| &self.steps[p].sequent).collect();
        let Some(sequent) = natural_conclusion(rule, &prem, &principal) else {
            let shown = principal.first().cloned().unwrap_or(Formula::Bottom);
            return Err(BuildError::Shape(shown));
        };
        self.push(rule, premises, principal, sequent)
    }

    /// Copies a proof's steps in and returns the id of its conclusion.
    pub fn import(&mut self, p: &Proof) -> Result<StepId, BuildError> {
        let mut map = Vec::with_capacity(p.steps.len());
        for s in &p.steps {
            let premises = s.premises.iter().map(|&q| map[q]).collect();
            let id = self.push(s.rule, premises, s.principal.clone(), s.sequent.clone())?;
            map.push(id);
        }
        Ok(map[p.conclusion])
    }

    /// The sub-DAG below `id` as a standalone proof, renumbered in order.
    pub fn finish(&self, id: StepId) -> Proof {
        let mut keep = vec![false; id + 1];
        keep[id] = true;
        for i in (0..=id).rev() {
            if keep[i] {
                for &q in &self.steps[i].premises {
                    keep[q] = true;
                }
            }
        }
        let mut map = vec![usize::MAX; id + 1];
        let mut steps = Vec::new();
        for i in 0..=id {
            if keep[i] {
                map[i] = steps.len();
                let s = &self.steps[i];
                steps.push(ProofStep {
                    sequent: s.sequent.clone(),
                    rule: s.rule,
                    premises: s.premises.iter().map(|&q| map[q]).collect(),
                    principal: s.principal.clone(),
                });
            }
        }
        let conclusion = steps.len() - 1;
        Proof { steps, conclusion }
    }

    pub fn axiom(&mut self, a: &Formula) -> Result<StepId, BuildError> {
        self.apply(Rule::Axiom, vec![], vec![a.clone()])
    }

    pub fn bottom_left(&mut self) -> Result<StepId, BuildError> {
        self.apply(Rule::BottomLeft, vec![], vec![])
    }

    pub fn top_right(&mut self) -> Result<StepId, BuildError> {
        self.apply(Rule::TopRight, vec![], vec![])
    }

    /// Classical weakening on either side; no step is added for formulas
    /// already present.
    pub fn weaken(&mut self, id: StepId, ant: &Side, succ: &Side) -> Result<StepId, BuildError> {
        let s = self.sequent(id).clone();
        let mut cur = id;
        let add_ant: Vec<Formula> = ant.difference(&s.antecedent).cloned().collect();
        let add_succ: Vec<Formula> = succ.difference(&s.succedent).cloned().collect();
        if (!add_ant.is_empty() || !add_succ.is_empty()) && s.kind != SequentKind::Classical {
            let mut to = s.clone();
            to.antecedent.extend(add_ant);
            to.succedent.extend(add_succ);
            return Err(BuildError::Weakening { from: s, to });
        }
        if !add_ant.is_empty() {
            cur = self.apply(Rule::WeakenLeft, vec![cur], add_ant)?;
        }
        if !add_succ.is_empty() {
            cur = self.apply(Rule::WeakenRight, vec![cur], add_succ)?;
        }
        Ok(cur)
    }

    /// Weakens a step to exactly `target`. Classical steps may grow on both
    /// sides; minimal steps only on the right, via [`Self::m_weaken_right`].
    pub fn weaken_to(&mut self, id: StepId, target: &Sequent) -> Result<StepId, BuildError> {
        let s = self.sequent(id).clone();
        if s == *target {
            return Ok(id);
        }
        let fits = s.kind == target.kind
            && s.antecedent.is_subset(&target.antecedent)
            && s.succedent.is_subset(&target.succedent);
        if !fits || (s.kind == SequentKind::Minimal && s.antecedent != target.antecedent) {
            return Err(BuildError::Weakening { from: s, to: target.clone() });
        }
        match s.kind {
            SequentKind::Classical => self.weaken(id, &target.antecedent, &target.succedent),
            SequentKind::Minimal => self.m_weaken_right(id, &target.succedent),
        }
    }

    fn ensure_ant(&mut self, id: StepId, f: &Formula) -> Result<StepId, BuildError> {
        if self.sequent(id).antecedent.contains(f) {
            Ok(id)
        } else {
            self.weaken(id, &Side::from([f.clone()]), &Side::new())
        }
    }

    fn ensure_succ(&mut self, id: StepId, f: &Formula) -> Result<StepId, BuildError> {
        if self.sequent(id).succedent.contains(f) {
            Ok(id)
        } else {
            self.weaken(id, &Side::new(), &Side::from([f.clone()]))
        }
    }

    /// From `G |- S, A` derive `~A, G |- S`.
    pub fn not_left(&mut self, id: StepId, neg: &Formula) -> Result<StepId, BuildError> {
        let Formula::Not(a) = neg else { return Err(BuildError::Shape(neg.clone())) };
        let id = self.ensure_succ(id, a)?;
        self.apply(Rule::NotLeft, vec![id], vec![neg.clone()])
    }

    /// From `A, G |- S` derive `G |- S, ~A`.
    pub fn not_right(&mut self, id: StepId, neg: &Formula) -> Result<StepId, BuildError> {
        let Formula::Not(a) = neg else { return Err(BuildError::Shape(neg.clone())) };
        let id = self.ensure_ant(id, a)?;
        self.apply(Rule::NotRight, vec![id], vec![neg.clone()])
    }

    /// Replaces the first (or second) conjunct of `conj` in the antecedent by
    /// `conj` itself.
    pub fn and_left(&mut self, id: StepId, conj: &Formula, first: bool) -> Result<StepId, BuildError> {
        let Formula::And(a, b) = conj else { return Err(BuildError::Shape(conj.clone())) };
        let id = self.ensure_ant(id, if first { a } else { b })?;
        let rule = if first { Rule::AndLeftFirst } else { Rule::AndLeftSecond };
        self.apply(rule, vec![id], vec![conj.clone()])
    }

    /// Same as [`Self::and_left`] for the right-hand side of a disjunction.
    pub fn or_right(&mut self, id: StepId, disj: &Formula, first: bool) -> Result<StepId, BuildError> {
        let Formula::Or(a, b) = disj else { return Err(BuildError::Shape(disj.clone())) };
        let minimal = self.sequent(id).is_minimal();
        let comp: &Formula = if first { a } else { b };
        if minimal && !self.sequent(id).succedent.contains(comp) {
            return Err(BuildError::MissingFormula { formula: comp.clone(), sequent: self.sequent(id).clone() });
        }
        let id = self.ensure_succ(id, comp)?;
        let rule = match (minimal, first) {
            (false, true) => Rule::OrRightFirst,
            (false, false) => Rule::OrRightSecond,
            (true, true) => Rule::MOrRightFirst,
            (true, false) => Rule::MOrRightSecond,
        };
        self.apply(rule, vec![id], vec![disj.clone()])
    }

    /// Classical right conjunction; both premises are weakened to a common
    /// context first.
    pub fn and_right(&mut self, p: StepId, q: StepId, conj: &Formula) -> Result<StepId, BuildError> {
        let Formula::And(a, b) = conj else { return Err(BuildError::Shape(conj.clone())) };
        let (sp, sq) = (self.sequent(p).clone(), self.sequent(q).clone());
        let ant = union(&sp.antecedent, &sq.antecedent);
        let ctx = union(&without(&sp.succedent, a), &without(&sq.succedent, b));
        let p = self.weaken(p, &ant, &with(&ctx, a))?;
        let q = self.weaken(q, &ant, &with(&ctx, b))?;
        self.push(Rule::AndRight, vec![p, q], vec![conj.clone()], Sequent::classical(ant, with(&ctx, conj)))
    }

    pub fn or_left(&mut self, p: StepId, q: StepId, disj: &Formula) -> Result<StepId, BuildError> {
        let Formula::Or(a, b) = disj else { return Err(BuildError::Shape(disj.clone())) };
        let (sp, sq) = (self.sequent(p).clone(), self.sequent(q).clone());
        let succ = union(&sp.succedent, &sq.succedent);
        let ctx = union(&without(&sp.antecedent, a), &without(&sq.antecedent, b));
        let p = self.weaken(p, &with(&ctx, a), &succ)?;
        let q = self.weaken(q, &with(&ctx, b), &succ)?;
        self.push(Rule::OrLeft, vec![p, q], vec![disj.clone()], Sequent::classical(with(&ctx, disj), succ))
    }

    pub fn imp_right(&mut self, id: StepId, imp: &Formula) -> Result<StepId, BuildError> {
        let Formula::Implies(a, b) = imp else { return Err(BuildError::Shape(imp.clone())) };
        if self.sequent(id).is_minimal() {
            return self.apply(Rule::MImpRight, vec![id], vec![imp.clone()]);
        }
        let id = self.ensure_ant(id, a)?;
        let id = self.ensure_succ(id, b)?;
        self.apply(Rule::ImpRight, vec![id], vec![imp.clone()])
    }

    /// From `G |- S, A` and `B, D |- L` derive `A -> B, G, D |- S, L`.
    pub fn imp_left(&mut self, p: StepId, q: StepId, imp: &Formula) -> Result<StepId, BuildError> {
        let Formula::Implies(a, b) = imp else { return Err(BuildError::Shape(imp.clone())) };
        let p = self.ensure_succ(p, a)?;
        let q = self.ensure_ant(q, b)?;
        self.apply(Rule::ImpLeft, vec![p, q], vec![imp.clone()])
    }

    /// Classical cut on `a`, weakening both premises to a shared context.
    /// With `keep`, `a` stays in the conclusion's succedent.
    pub fn cut(&mut self, p: StepId, q: StepId, a: &Formula, keep: bool) -> Result<StepId, BuildError> {
        let (sp, sq) = (self.sequent(p).clone(), self.sequent(q).clone());
        if !sp.succedent.contains(a) {
            return Err(BuildError::MissingFormula { formula: a.clone(), sequent: sp });
        }
        if !sq.antecedent.contains(a) {
            return Err(BuildError::MissingFormula { formula: a.clone(), sequent: sq });
        }
        let ant = union(&sp.antecedent, &without(&sq.antecedent, a));
        let mut succ = union(&without(&sp.succedent, a), &sq.succedent);
        if keep {
            succ.insert(a.clone());
        }
        let p = self.weaken(p, &ant, &with(&succ, a))?;
        let q = self.weaken(q, &with(&ant, a), &succ)?;
        self.push(Rule::Cut, vec![p, q], vec![a.clone()], Sequent::classical(ant, succ))
    }

    /// From a classical step derive the minimal sequent with the same sides.
    pub fn bridge(&mut self, id: StepId) -> Result<StepId, BuildError> {
        self.apply(Rule::MBridge, vec![id], vec![])
    }

    /// `gamma |-m ~p`.
    pub fn m_axiom(&mut self, gamma: &Side, p: &Atom) -> Result<StepId, BuildError> {
        let neg = Formula::not(Formula::Atom(p.clone()));
        self.push(Rule::MAxiom, vec![], vec![neg.clone()], Sequent::minimal(gamma.iter().cloned(), [neg]))
    }

    /// From `G |-m S, A` and `G, A |-m L` derive `G |-m S, L`; with `keep`
    /// the cut formula stays in the succedent.
    pub fn m_cut(&mut self, p: StepId, q: StepId, a: &Formula, keep: bool) -> Result<StepId, BuildError> {
        let (sp, sq) = (self.sequent(p), self.sequent(q));
        if !sp.succedent.contains(a) {
            return Err(BuildError::MissingFormula { formula: a.clone(), sequent: sp.clone() });
        }
        let mut succ = union(&without(&sp.succedent, a), &sq.succedent);
        if keep {
            succ.insert(a.clone());
        }
        let s = Sequent::minimal(sp.antecedent.iter().cloned(), succ);
        self.push(Rule::MCut, vec![p, q], vec![a.clone()], s)
    }

    /// From `G |-m S` and `G |-m D` derive `G, S |-m D` (`S` a singleton).
    pub fn m_cumulate(&mut self, p: StepId, q: StepId) -> Result<StepId, BuildError> {
        let moved: Vec<Formula> = self.sequent(p).succedent.iter().cloned().collect();
        self.apply(Rule::MCumulate, vec![p, q], moved)
    }

    /// Minimal right conjunction; succedent contexts are merged with minimal
    /// weakening, antecedents must already agree.
    pub fn m_and_right(&mut self, p: StepId, q: StepId, conj: &Formula) -> Result<StepId, BuildError> {
        let Formula::And(a, b) = conj else { return Err(BuildError::Shape(conj.clone())) };
        let (sp, sq) = (self.sequent(p).clone(), self.sequent(q).clone());
        let ctx = union(&without(&sp.succedent, a), &without(&sq.succedent, b));
        let p = self.m_weaken_right(p, &with(&ctx, a))?;
        let q = self.m_weaken_right(q, &with(&ctx, b))?;
        let s = Sequent::minimal(sp.antecedent.iter().cloned(), with(&ctx, conj));
        self.push(Rule::MAndRight, vec![p, q], vec![conj.clone()], s)
    }

    /// Minimal left disjunction over the antecedent context `ctx`.
    pub fn m_or_left(&mut self, p: StepId, q: StepId, disj: &Formula, ctx: &Side) -> Result<StepId, BuildError> {
        let Formula::Or(a, b) = disj else { return Err(BuildError::Shape(disj.clone())) };
        let _ = (a, b);
        let (sp, sq) = (self.sequent(p).clone(), self.sequent(q).clone());
        let succ = union(&sp.succedent, &sq.succedent);
        let p = self.m_weaken_right(p, &succ)?;
        let q = self.m_weaken_right(q, &succ)?;
        let s = Sequent::minimal(with(ctx, disj), succ);
        self.push(Rule::MOrLeft, vec![p, q], vec![disj.clone()], s)
    }

    pub fn m_not_right(&mut self, id: StepId, neg: &Formula) -> Result<StepId, BuildError> {
        self.apply(Rule::MNotRight, vec![id], vec![neg.clone()])
    }

    /// From `G |-m D` derive `G |-m D, X` through an axiom on some member of
    /// `D`, classical weakening, the bridge and an M-cut.
    pub fn m_weaken_right(&mut self, id: StepId, extra: &Side) -> Result<StepId, BuildError> {
        let s = self.sequent(id).clone();
        if extra.is_subset(&s.succedent) {
            return Ok(id);
        }
        if s.kind != SequentKind::Minimal {
            return self.weaken(id, &Side::new(), extra);
        }
        let Some(delta) = s.succedent.iter().next().cloned() else {
            return Err(BuildError::EmptySuccedent(s));
        };
        let succ = union(&s.succedent, extra);
        let target = Sequent::minimal(with(&s.antecedent, &delta), succ.iter().cloned());
        let side = match self.known(&target) {
            Some(known) => known,
            None => {
                let ax = self.axiom(&delta)?;
                let w = self.weaken(ax, &target.antecedent, &target.succedent)?;
                self.bridge(w)?
            }
        };
        self.m_cut(id, side, &delta, false)
    }
}
