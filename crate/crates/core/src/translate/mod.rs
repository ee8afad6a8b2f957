//! Compiles a validated OTAB tableau into an MLK proof of its root sequent.
//!
//! Every node `u` gets a proof of `A_u |-m B_u, C_u`, built bottom-up. Leaves
//! use the branch's closure or ignorability; expansion nodes combine the
//! proofs of their children and reintroduce the expanded formula. At a
//! branching node with settled models, the disjunction `omega` of those
//! models is carried through the succedent and cut at the end.

mod annotate;
mod branch;
mod omega;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::formula::{classify, Classification, Formula, Sign, SignedFormula};
use crate::proof::{alpha_beta_sequents, BuildError, LemmaError, Proof, ProofBuilder, StepId};
use crate::sequent::Sequent;
use crate::tableau::{analyze, BranchId, BranchInfo, ExpansionKind, NodeId, StatusCounts, Tableau};

pub use annotate::{annotate_ab, annotate_cd, atom_conjunction, AnnotationTable, Settlement};

type Side = BTreeSet<Formula>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("the tableau has a branch that is neither closed nor ignorable")]
    InvalidTableau,
    #[error("{formula} is not on branch {branch}")]
    NotOnBranch { branch: BranchId, formula: SignedFormula },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
}

impl From<BuildError> for TranslateError {
    fn from(e: BuildError) -> Self {
        TranslateError::Lemma(LemmaError::Build(e))
    }
}

/// Size figures of one translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TranslationStats {
    pub tableau_nodes: usize,
    pub branches: usize,
    pub status: StatusCounts,
    pub proof_steps: usize,
    pub proof_symbols: usize,
}

/// Annotated tableau plus the proof DAG under construction.
pub struct Translator<'t> {
    tableau: &'t Tableau,
    infos: Vec<BranchInfo>,
    table: AnnotationTable,
    builder: ProofBuilder,
    node_proofs: Vec<Option<StepId>>,
}

fn union(a: &Side, b: &Side) -> Side {
    a.union(b).cloned().collect()
}

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

impl<'t> Translator<'t> {
    /// Analyzes and annotates `t`. Fails unless every branch is closed or
    /// ignorable.
    pub fn new(t: &'t Tableau) -> Result<Translator<'t>, TranslateError> {
        let infos = analyze(t);
        if !infos.iter().all(|i| i.closed() || i.ignorable()) {
            return Err(TranslateError::InvalidTableau);
        }
        let mut table = annotate_ab(t);
        annotate_cd(t, &infos, &mut table);
        Ok(Translator {
            tableau: t,
            infos,
            table,
            builder: ProofBuilder::new(),
            node_proofs: vec![None; t.nodes().len()],
        })
    }

    pub fn annotations(&self) -> &AnnotationTable {
        &self.table
    }

    pub fn branch_infos(&self) -> &[BranchInfo] {
        &self.infos
    }

    /// The sequent proved at node `u`.
    pub fn node_sequent(&self, u: NodeId) -> Sequent {
        Sequent::minimal(self.table.a[u].iter().cloned(), union(&self.table.b[u], &self.table.c[u]))
    }

    /// Proof of [`Self::node_sequent`] once [`Self::run`] has reached `u`.
    pub fn node_proof(&self, u: NodeId) -> Option<Proof> {
        self.node_proofs[u].map(|id| self.builder.finish(id))
    }

    /// Builds node proofs from the leaves up and returns the root proof.
    pub fn run(&mut self) -> Result<Proof, TranslateError> {
        if self.tableau.nodes().is_empty() {
            return Err(TranslateError::InvalidTableau);
        }
        for u in (0..self.tableau.nodes().len()).rev() {
            let node = self.tableau.node(u);
            let id = match (node.expansion, node.children.as_slice()) {
                (_, []) => self.leaf(u)?,
                (None, [child]) => self.node_proofs[*child].expect("children come first"),
                (Some(e), _) => self.expansion(u, e.principal, e.kind)?,
                (None, _) => unreachable!("branching happens only at expansions"),
            };
            let target = self.node_sequent(u);
            if self.builder.sequent(id) != &target {
                return Err(TranslateError::Precondition("node proof does not match its annotation"));
            }
            self.node_proofs[u] = Some(id);
        }
        let root = self.node_proofs[0].expect("root proved");
        Ok(self.builder.finish(root))
    }

    /// Classical proof `id` weakened to `ant |- succ`, then bridged.
    fn lift(&mut self, id: StepId, ant: &Side, succ: &Side) -> Result<StepId, TranslateError> {
        let target = Sequent::classical(ant.iter().cloned(), succ.iter().cloned());
        let id = self.builder.weaken_to(id, &target)?;
        Ok(self.builder.bridge(id)?)
    }

    fn leaf(&mut self, u: NodeId) -> Result<StepId, TranslateError> {
        let b = self.tableau.leaf_branch(u);
        let info = self.infos[b].clone();
        let (a_u, b_u, c_u) = (self.table.a[u].clone(), self.table.b[u].clone(), self.table.c[u].clone());
        let target = union(&b_u, &c_u);
        let path = self.tableau.branch(b).path.clone();
        let labels: Vec<SignedFormula> = path.iter().map(|&n| self.tableau.node(n).label.clone()).collect();
        let side = |sign: Sign| -> Side { labels.iter().filter(|l| l.sign == sign).map(|l| l.formula.clone()).collect() };
        let (ts, fs) = (side(Sign::T), side(Sign::F));
        let ex = self.expansions(b);
        if info.t_closed {
            let a = Self::complementary(&ts).expect("T-closed branch has a complementary pair");
            let na = Formula::not(a.clone());
            let pa = self.branch_formula(b, &ex, &SignedFormula::t(a))?;
            let pna = self.branch_formula(b, &ex, &SignedFormula::t(na.clone()))?;
            let refute = self.builder.not_left(pa, &na)?;
            let empty = self.builder.cut(pna, refute, &na, false)?;
            return self.lift(empty, &a_u, &target);
        }
        if info.f_closed {
            let a = Self::complementary(&fs).expect("F-closed branch has a complementary pair");
            let na = Formula::not(a.clone());
            let pa = self.branch_formula(b, &ex, &SignedFormula::f(a.clone()))?;
            let pna = self.branch_formula(b, &ex, &SignedFormula::f(na.clone()))?;
            let ax = self.builder.axiom(&a)?;
            let middle = self.builder.not_right(ax, &na)?;
            let step = self.builder.cut(middle, pa, &a, false)?;
            let done = self.builder.cut(step, pna, &na, false)?;
            return self.lift(done, &a_u, &target);
        }
        if info.tf_closed {
            let a = ts.intersection(&fs).next().cloned().expect("TF-closed branch shares a formula");
            let pt = self.branch_formula(b, &ex, &SignedFormula::t(a.clone()))?;
            let pf = self.branch_formula(b, &ex, &SignedFormula::f(a.clone()))?;
            let done = self.builder.cut(pt, pf, &a, false)?;
            return self.lift(done, &a_u, &target);
        }
        if info.ignorable1 {
            let p = fs
                .iter()
                .find_map(|f| match f {
                    Formula::Not(inner) => inner.as_atom().filter(|p| !info.at.contains(*p)).cloned(),
                    _ => None,
                })
                .expect("type-1 branch has an unmatched negated atom");
            let ax = self.builder.m_axiom(&a_u, &p)?;
            return Ok(self.builder.m_weaken_right(ax, &target)?);
        }
        if info.ignorable2 {
            let th = info.theta.expect("type-2 branch has a smaller witness");
            let atoms: Vec<Formula> = self.infos[th].at.iter().map(|a| Formula::Atom(a.clone())).collect();
            let conj = self.builder.conj_intro(&atoms)?;
            return self.lift(conj, &a_u, &target);
        }
        Err(TranslateError::InvalidTableau)
    }

    fn expansion(&mut self, u: NodeId, principal: NodeId, kind: ExpansionKind) -> Result<StepId, TranslateError> {
        let sf = self.tableau.node(principal).label.clone();
        let (x, y) = match classify(&sf) {
            Classification::Alpha(x, y) | Classification::Beta(x, y) => (x.formula, y.formula),
            Classification::Literal => unreachable!("literals are never expanded"),
        };
        let children = self.tableau.node(u).children.clone();
        match (kind, sf.sign) {
            (ExpansionKind::Alpha, Sign::T) => self.true_alpha(u, &sf, &x, &y, children[0]),
            (ExpansionKind::Alpha, Sign::F) => self.false_alpha(u, &sf, &x, &y, children[0]),
            (ExpansionKind::Beta, Sign::T) => self.true_beta(u, &sf, children[0], children[1]),
            (ExpansionKind::Beta, Sign::F) => self.false_beta(u, &sf, children[0], children[1]),
        }
    }

    /// Classical `joined |- chi` (`forward` false) or `chi |- joined`.
    fn link(&mut self, sf: &SignedFormula, forward: bool) -> Result<StepId, TranslateError> {
        Ok(self.builder.alpha_beta(sf, forward)?)
    }

    fn true_alpha(&mut self, u: NodeId, sf: &SignedFormula, x: &Formula, y: &Formula, v: NodeId) -> Result<StepId, TranslateError> {
        let chi = &sf.formula;
        let (_, joined) = alpha_beta_sequents(sf)?;
        let a_u = self.table.a[u].clone();
        let a_v = self.table.a[v].clone();
        let ih = self.node_proofs[v].expect("child proved");
        let ax_x = self.builder.axiom(x)?;
        let ax_y = self.builder.axiom(y)?;
        let mut intro = self.builder.and_right(ax_x, ax_y, &joined)?;
        if joined != *chi {
            let back = self.link(sf, false)?;
            intro = self.builder.cut(intro, back, &joined, false)?;
        }
        let p_chi = self.lift(intro, &a_v, &Side::from([chi.clone()]))?;
        let mut cur = self.builder.m_cumulate(p_chi, ih)?;
        let mut ant = with(&a_v, chi);
        let mut comps = vec![y.clone(), x.clone()];
        comps.dedup();
        for comp in comps {
            if a_u.contains(&comp) {
                continue;
            }
            let rest = without(&ant, &comp);
            let proj = self.project(sf, &joined, &comp)?;
            let p = self.lift(proj, &rest, &Side::from([comp.clone()]))?;
            cur = self.builder.m_cut(p, cur, &comp, false)?;
            ant = rest;
        }
        Ok(cur)
    }

    /// Classical `chi |- comp` for a component of a T-alpha formula.
    fn project(&mut self, sf: &SignedFormula, joined: &Formula, comp: &Formula) -> Result<StepId, TranslateError> {
        let Formula::And(l, _) = joined else { unreachable!("T-alpha components join by conjunction") };
        let ax = self.builder.axiom(comp)?;
        let proj = self.builder.and_left(ax, joined, **l == *comp)?;
        if *joined == sf.formula {
            return Ok(proj);
        }
        let fwd = self.link(sf, true)?;
        Ok(self.builder.cut(fwd, proj, joined, false)?)
    }

    fn false_alpha(&mut self, u: NodeId, sf: &SignedFormula, x: &Formula, y: &Formula, v: NodeId) -> Result<StepId, TranslateError> {
        let chi = &sf.formula;
        let (_, joined) = alpha_beta_sequents(sf)?;
        let a_u = self.table.a[u].clone();
        let target = union(&self.table.b[u], &self.table.c[u]);
        let mut cur = self.node_proofs[v].expect("child proved");
        let mut introduced = false;
        let mut comps = vec![x.clone(), y.clone()];
        comps.dedup();
        for comp in comps {
            if target.contains(&comp) {
                continue;
            }
            let intro = self.builder.disjunct_intro(&comp, &joined)?;
            let q = self.lift(intro, &with(&a_u, &comp), &Side::from([joined.clone()]))?;
            cur = self.builder.m_cut(cur, q, &comp, false)?;
            introduced = true;
        }
        if introduced && joined != *chi {
            let back = self.link(sf, false)?;
            let q = self.lift(back, &with(&a_u, &joined), &Side::from([chi.clone()]))?;
            cur = self.builder.m_cut(cur, q, &joined, target.contains(&joined))?;
        }
        let goal = Sequent::minimal(a_u.iter().cloned(), target.iter().cloned());
        Ok(self.builder.weaken_to(cur, &goal)?)
    }

    /// Weakens a child proof to `succ` plus the settled conjunctions, then
    /// merges those conjunctions into omega. Conjunctions in `keep` stay.
    fn carry_omega(&mut self, u: NodeId, child: NodeId, succ: &Side, keep: &Side) -> Result<StepId, TranslateError> {
        let ant = self.table.a[child].clone();
        let ih = self.node_proofs[child].expect("child proved");
        let settled = self.table.settled.get(&u).cloned().unwrap_or_default();
        let widened = Sequent::minimal(ant.iter().cloned(), union(succ, &settled.f));
        let mut cur = self.builder.weaken_to(ih, &widened)?;
        if let Some(omega) = &settled.omega {
            for f in &settled.f {
                if f == omega {
                    continue;
                }
                let intro = self.builder.disjunct_intro(f, omega)?;
                let q = self.lift(intro, &with(&ant, f), &Side::from([omega.clone()]))?;
                cur = self.builder.m_cut(cur, q, f, keep.contains(f))?;
            }
        }
        Ok(cur)
    }

    /// Cuts omega out of a proof of `A_u |-m target, omega`.
    fn discharge_omega(&mut self, u: NodeId, cur: StepId, target: &Side) -> Result<StepId, TranslateError> {
        let Some(omega) = self.table.omega(u).cloned() else {
            return Ok(cur);
        };
        let q = self.omega_b(u)?;
        let q = self.builder.m_weaken_right(q, target)?;
        Ok(self.builder.m_cut(cur, q, &omega, target.contains(&omega))?)
    }

    fn true_beta(&mut self, u: NodeId, sf: &SignedFormula, v: NodeId, w: NodeId) -> Result<StepId, TranslateError> {
        let chi = &sf.formula;
        let (_, joined) = alpha_beta_sequents(sf)?;
        let a_u = self.table.a[u].clone();
        let target = union(&self.table.b[u], &self.table.c[u]);
        let pv = self.carry_omega(u, v, &target, &target)?;
        let pw = self.carry_omega(u, w, &target, &target)?;
        let ctx = without(&a_u, chi);
        let mut cur = self.builder.m_or_left(pv, pw, &joined, &ctx)?;
        if joined != *chi {
            let back = self.link(sf, false)?;
            let p = self.lift(back, &with(&ctx, &joined), &Side::from([chi.clone()]))?;
            cur = self.builder.m_cumulate(p, cur)?;
            if !a_u.contains(&joined) {
                let fwd = self.link(sf, true)?;
                let p = self.lift(fwd, &a_u, &Side::from([joined.clone()]))?;
                cur = self.builder.m_cut(p, cur, &joined, false)?;
            }
        }
        let cur = self.discharge_omega(u, cur, &target)?;
        let goal = Sequent::minimal(a_u.iter().cloned(), target.iter().cloned());
        Ok(self.builder.weaken_to(cur, &goal)?)
    }

    fn false_beta(&mut self, u: NodeId, sf: &SignedFormula, v: NodeId, w: NodeId) -> Result<StepId, TranslateError> {
        let chi = &sf.formula;
        let (_, joined) = alpha_beta_sequents(sf)?;
        let a_u = self.table.a[u].clone();
        let target = union(&self.table.b[u], &self.table.c[u]);
        let base = union(&without(&self.table.b[u], chi), &self.table.c[u]);
        let mut sides = Vec::new();
        for child in [v, w] {
            let succ = union(&base, &self.table.b[child]);
            sides.push(self.carry_omega(u, child, &succ, &succ)?);
        }
        let mut cur = self.builder.m_and_right(sides[0], sides[1], &joined)?;
        if joined != *chi {
            let back = self.link(sf, false)?;
            let q = self.lift(back, &with(&a_u, &joined), &Side::from([chi.clone()]))?;
            let keep = target.contains(&joined) || self.table.omega(u) == Some(&joined);
            cur = self.builder.m_cut(cur, q, &joined, keep)?;
        }
        let cur = self.discharge_omega(u, cur, &target)?;
        let goal = Sequent::minimal(a_u.iter().cloned(), target.iter().cloned());
        Ok(self.builder.weaken_to(cur, &goal)?)
    }
}

/// Translates a valid tableau into an MLK proof of its origin sequent.
pub fn translate(t: &Tableau) -> Result<Proof, TranslateError> {
    Translator::new(t)?.run()
}

pub fn stats(t: &Tableau, p: &Proof) -> TranslationStats {
    let infos = analyze(t);
    let size = p.size();
    TranslationStats {
        tableau_nodes: t.nodes().len(),
        branches: infos.len(),
        status: StatusCounts::of(&infos),
        proof_steps: size.steps,
        proof_symbols: size.symbols,
    }
}

#[cfg(test)]
mod tests;
