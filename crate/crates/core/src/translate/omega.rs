//! Minimal-entailment lemmas for the disjunction `omega` of settled models.
//!
//! Every settled conjunction `/\M` has `M` as its only minimal model once the
//! atoms outside `M` are denied. The per-model chain starts from
//! `/\M |-m N`, with `N` the conjunction of those denials, and extends the
//! antecedent one formula at a time by cumulation. Chains over the same
//! prefix are shared through the builder.

use std::collections::BTreeSet;

use super::{Side, TranslateError, Translator};
use crate::formula::{vars, Atom, Formula};
use crate::proof::{Proof, StepId};
use crate::sequent::Sequent;
use crate::tableau::NodeId;

struct Chain {
    m: BTreeSet<Atom>,
    m_items: Vec<Formula>,
    conj_m: Formula,
    neg: BTreeSet<Atom>,
    n_items: Vec<Formula>,
    /// `None` when every relevant atom lies in `M`.
    n: Option<Formula>,
}

impl Chain {
    fn new(m: &BTreeSet<Atom>, universe: &BTreeSet<Atom>) -> Chain {
        let m_items: Vec<Formula> = m.iter().map(|a| Formula::Atom(a.clone())).collect();
        let neg: BTreeSet<Atom> = universe.difference(m).cloned().collect();
        let n_items: Vec<Formula> = neg.iter().map(|a| Formula::not(Formula::Atom(a.clone()))).collect();
        let n = if n_items.is_empty() { None } else { Some(Formula::conj(n_items.iter().cloned())) };
        Chain { m: m.clone(), conj_m: Formula::conj(m_items.iter().cloned()), m_items, neg, n_items, n }
    }
}

impl Translator<'_> {
    /// Classical `ant, N |- succ` (or `ant |- succ` without `N`) from the
    /// assignment `M`, negated rest.
    fn chain_classical(&mut self, ch: &Chain, ant: &Side, succ: &Side) -> Result<StepId, TranslateError> {
        let mut full = ant.clone();
        full.extend(ch.n.iter().cloned());
        let target = Sequent::classical(full, succ.iter().cloned());
        if let Some(id) = self.builder.known(&target) {
            return Ok(id);
        }
        let id = self.builder.assignment(&ch.m, &ch.neg, &Side::new(), succ)?;
        let id = self.builder.fold_conj_left(id, &ch.m_items)?;
        let id = if ch.n.is_some() { self.builder.fold_conj_left(id, &ch.n_items)? } else { id };
        Ok(self.builder.weaken_to(id, &target)?)
    }

    /// `/\M, items |-m goal`, where `M` satisfies every item and some goal
    /// formula.
    fn accumulate(&mut self, ch: &Chain, items: &[Formula], goal: &Side) -> Result<StepId, TranslateError> {
        let mut ant = Side::from([ch.conj_m.clone()]);
        // `ant |-m N` while N is in use.
        let mut denial = match &ch.n {
            None => None,
            Some(n) => {
                let mut cur = self.builder.m_axiom(&ant, ch.neg.first().expect("nonempty"))?;
                let mut acc = ch.n_items[0].clone();
                for (x, item) in ch.neg.iter().zip(&ch.n_items).skip(1) {
                    let ax = self.builder.m_axiom(&ant, x)?;
                    acc = Formula::and(acc, item.clone());
                    cur = self.builder.m_and_right(cur, ax, &acc)?;
                }
                debug_assert_eq!(&acc, n);
                Some(cur)
            }
        };
        let derive = |tr: &mut Self, ant: &Side, denial: Option<StepId>, succ: &Side| -> Result<StepId, TranslateError> {
            let cls = tr.chain_classical(ch, ant, succ)?;
            let cls = tr.builder.bridge(cls)?;
            match (denial, &ch.n) {
                (Some(d), Some(n)) => Ok(tr.builder.m_cut(d, cls, n, false)?),
                _ => Ok(cls),
            }
        };
        for item in items {
            if ant.contains(item) {
                continue;
            }
            let r = derive(self, &ant, denial, &Side::from([item.clone()]))?;
            if let Some(d) = denial {
                denial = Some(self.builder.m_cumulate(r, d)?);
            }
            ant.insert(item.clone());
        }
        derive(self, &ant, denial, goal)
    }

    fn settlement(&self, u: NodeId) -> Result<(Side, Formula), TranslateError> {
        let s = self.table.settled.get(&u).ok_or(TranslateError::Precondition("node has no settled models"))?;
        let omega = s.omega.clone().ok_or(TranslateError::Precondition("node has no settled models"))?;
        Ok((s.f.clone(), omega))
    }

    fn omega_universe(&self, u: NodeId, omega: &Formula) -> BTreeSet<Atom> {
        vars(self.table.a[u].iter().chain(&self.table.b[u]).chain([omega]))
    }

    fn settled_models(&self, u: NodeId) -> Vec<(Formula, BTreeSet<Atom>)> {
        let s = &self.table.settled[&u];
        s.e.iter()
            .map(|&br| {
                let at = self.infos[br].at.clone();
                (super::annotate::atom_conjunction(&at), at)
            })
            .collect()
    }

    /// `ant, omega |-m goal`: weaken `omega |- F` then cut every `/\M` using
    /// its accumulation chain over `omega, ant`.
    fn omega_to(&mut self, u: NodeId, ant: &Side, goal: &Side) -> Result<StepId, TranslateError> {
        let (f, omega) = self.settlement(u)?;
        let universe = self.omega_universe(u, &omega);
        let disjuncts: Vec<Formula> = f.iter().cloned().collect();
        let base = self.disjunction_left(&omega, &disjuncts)?;
        let mut full = ant.clone();
        full.insert(omega.clone());
        let mut succ = goal.clone();
        succ.extend(f.iter().cloned());
        let base = self.builder.weaken_to(base, &Sequent::classical(full.iter().cloned(), succ))?;
        let mut cur = self.builder.bridge(base)?;
        let items: Vec<Formula> = std::iter::once(omega.clone()).chain(ant.iter().cloned()).collect();
        let mut seen = BTreeSet::new();
        for (conj_m, m) in self.settled_models(u) {
            if !seen.insert(conj_m.clone()) {
                continue;
            }
            let ch = Chain::new(&m, &universe);
            let q = self.accumulate(&ch, &items, goal)?;
            cur = self.builder.m_cut(cur, q, &conj_m, goal.contains(&conj_m))?;
        }
        Ok(cur)
    }

    /// Classical `omega |- disjuncts` by left disjunction.
    fn disjunction_left(&mut self, omega: &Formula, disjuncts: &[Formula]) -> Result<StepId, TranslateError> {
        match omega {
            Formula::Or(l, r) if !disjuncts.contains(omega) => {
                let pl = self.disjunction_left(l, disjuncts)?;
                let pr = self.disjunction_left(r, disjuncts)?;
                Ok(self.builder.or_left(pl, pr, omega)?)
            }
            _ => Ok(self.builder.axiom(omega)?),
        }
    }

    pub(super) fn omega_gamma(&mut self, u: NodeId, a_prime: &Side, gamma: &Formula) -> Result<StepId, TranslateError> {
        let a_u = &self.table.a[u];
        if !(a_prime.is_subset(a_u) && a_prime.len() < a_u.len()) {
            return Err(TranslateError::Precondition("antecedent is not a proper subset of A_u"));
        }
        if !a_u.contains(gamma) || a_prime.contains(gamma) {
            return Err(TranslateError::Precondition("formula is not in A_u minus the antecedent"));
        }
        self.omega_to(u, a_prime, &Side::from([gamma.clone()]))
    }

    /// `A_u, omega |-m B_u`: first `omega |-m B_u`, then each member of
    /// `A_u` in canonical order is added by cumulation.
    pub(super) fn omega_b(&mut self, u: NodeId) -> Result<StepId, TranslateError> {
        let (_, omega) = self.settlement(u)?;
        let b_u = self.table.b[u].clone();
        let mut cur = self.omega_to(u, &Side::new(), &b_u)?;
        let mut ant = Side::new();
        for g in self.table.a[u].clone() {
            if g == omega {
                ant.insert(g);
                continue;
            }
            let p = self.omega_gamma(u, &ant, &g)?;
            cur = self.builder.m_cumulate(p, cur)?;
            ant.insert(g);
        }
        Ok(cur)
    }

    /// Proof of `A', omega |-m gamma` at branching node `u`.
    pub fn prove_omega_gamma(&mut self, u: NodeId, a_prime: &Side, gamma: &Formula) -> Result<Proof, TranslateError> {
        let id = self.omega_gamma(u, a_prime, gamma)?;
        Ok(self.builder.finish(id))
    }

    /// Proof of `A_u, omega |-m B_u` at branching node `u`.
    pub fn prove_omega_b(&mut self, u: NodeId) -> Result<Proof, TranslateError> {
        let id = self.omega_b(u)?;
        Ok(self.builder.finish(id))
    }
}
