//! Per-node annotation sets for the tableau-to-MLK translation.
//!
//! `A`/`B` track the unmarked T/F formulas top-down. `C`/`D` run bottom-up:
//! `D` holds the smaller-model branches still owed to type-2 leaves below a
//! node, `C` their atom conjunctions. At a branching node the owed branches
//! that live on the other side are settled; those form `E`, their
//! conjunctions `F`, and `omega` is the disjunction of `F`.

use std::collections::{BTreeMap, BTreeSet};

use crate::formula::{classify, Atom, Classification, Formula, Sign};
use crate::tableau::{BranchId, BranchInfo, ExpansionKind, NodeId, Tableau};

type Side = BTreeSet<Formula>;

/// Settlement data of a branching node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settlement {
    pub e: BTreeSet<BranchId>,
    pub f: Side,
    /// `None` when `e` is empty.
    pub omega: Option<Formula>,
}

#[derive(Clone, Debug, Default)]
pub struct AnnotationTable {
    pub a: Vec<Side>,
    pub b: Vec<Side>,
    pub c: Vec<Side>,
    pub d: Vec<BTreeSet<BranchId>>,
    pub settled: BTreeMap<NodeId, Settlement>,
}

impl AnnotationTable {
    pub fn omega(&self, u: NodeId) -> Option<&Formula> {
        self.settled.get(&u).and_then(|s| s.omega.as_ref())
    }
}

/// Conjunction of an atom set in canonical order; `top` when empty.
pub fn atom_conjunction(atoms: &BTreeSet<Atom>) -> Formula {
    Formula::conj(atoms.iter().map(|a| Formula::Atom(a.clone())))
}

fn insert(s: &Side, xs: &[&Formula]) -> Side {
    let mut out = s.clone();
    out.extend(xs.iter().map(|&x| x.clone()));
    out
}

fn remove(s: &Side, x: &Formula) -> Side {
    let mut out = s.clone();
    out.remove(x);
    out
}

/// Fills `a` and `b` from the root down; `c`, `d` and `settled` are left
/// empty.
pub fn annotate_ab(t: &Tableau) -> AnnotationTable {
    let n = t.nodes().len();
    let mut a: Vec<Side> = Vec::with_capacity(n);
    let mut b: Vec<Side> = Vec::with_capacity(n);
    for (id, node) in t.nodes().iter().enumerate() {
        let Some(p) = node.parent else {
            a.push(t.origin.antecedent.clone());
            b.push(t.origin.succedent.clone());
            continue;
        };
        let Some(exp) = t.node(p).expansion else {
            let (ap, bp) = (a[p].clone(), b[p].clone());
            a.push(ap);
            b.push(bp);
            continue;
        };
        let label = &t.node(exp.principal).label;
        let chi = &label.formula;
        let (x, y) = match classify(label) {
            Classification::Alpha(x, y) | Classification::Beta(x, y) => (x.formula, y.formula),
            Classification::Literal => unreachable!("literals are never expanded"),
        };
        let first = t.node(p).children.first() == Some(&id);
        let comp = if first { &x } else { &y };
        let (ap, bp) = (&a[p], &b[p]);
        let (na, nb) = match (exp.kind, label.sign) {
            (ExpansionKind::Alpha, Sign::T) => (remove(&insert(ap, &[&x, &y]), chi), bp.clone()),
            (ExpansionKind::Alpha, Sign::F) => (ap.clone(), remove(&insert(bp, &[&x, &y]), chi)),
            (ExpansionKind::Beta, Sign::T) => (insert(&remove(ap, chi), &[comp]), bp.clone()),
            (ExpansionKind::Beta, Sign::F) => (ap.clone(), insert(&remove(bp, chi), &[comp])),
        };
        a.push(na);
        b.push(nb);
    }
    AnnotationTable { a, b, c: vec![Side::new(); n], d: vec![BTreeSet::new(); n], settled: BTreeMap::new() }
}

/// Fills `c`, `d` and the settlement data bottom-up. `infos` is the branch
/// analysis of `t`.
pub fn annotate_cd(t: &Tableau, infos: &[BranchInfo], table: &mut AnnotationTable) {
    let conj_of = |br: BranchId| atom_conjunction(&infos[br].at);
    for id in (0..t.nodes().len()).rev() {
        let node = t.node(id);
        match node.children.as_slice() {
            [] => {
                let br = t.leaf_branch(id);
                let (c, d) = match infos[br].theta {
                    Some(th) if infos[br].ignorable2 => (Side::from([conj_of(th)]), BTreeSet::from([th])),
                    _ => (Side::new(), BTreeSet::new()),
                };
                table.c[id] = c;
                table.d[id] = d;
            }
            [child] => {
                table.c[id] = table.c[*child].clone();
                table.d[id] = table.d[*child].clone();
            }
            [v, w] => {
                let (rv, rw) = (t.branches_through(*v), t.branches_through(*w));
                let d: BTreeSet<BranchId> = table.d[*v]
                    .iter()
                    .filter(|x| !rw.contains(x))
                    .chain(table.d[*w].iter().filter(|x| !rv.contains(x)))
                    .copied()
                    .collect();
                let e: BTreeSet<BranchId> =
                    table.d[*v].union(&table.d[*w]).filter(|x| !d.contains(x)).copied().collect();
                let f: Side = e.iter().map(|&x| conj_of(x)).collect();
                let omega = if f.is_empty() { None } else { Some(Formula::disj(f.iter().cloned())) };
                table.c[id] = d.iter().map(|&x| conj_of(x)).collect();
                table.d[id] = d;
                table.settled.insert(id, Settlement { e, f, omega });
            }
            _ => unreachable!("tableau nodes have at most two children"),
        }
    }
}
