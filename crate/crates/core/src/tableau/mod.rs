//! OTAB tableaux for minimal sequents.
//!
//! A tableau starts as one branch holding `T g` for every antecedent formula
//! and `F d` for every succedent formula. An alpha expansion appends both
//! components below the current leaf; a beta expansion splits it. The
//! expansion record lives on the leaf where the rule was applied.
//!
//! A node counts as marked on a branch when a node with the same signed
//! formula was expanded at or below it on that branch. For duplicate-free
//! branches this is plain node marking; with duplicates it keeps the set of
//! unmarked formulas in step with the annotation sets of the translation.

mod analysis;
mod json;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::formula::{classify, Classification, Formula, Sign, SignedFormula};
use crate::sequent::{Sequent, SequentKind};

pub use analysis::{analyze, branch_status, theta, validate_tableau, BranchInfo, BranchStatus, StatusCounts};
pub use json::{NodeDocument, RuleDocument, TableauDocument};

pub type NodeId = usize;
/// Index of a branch in left-to-right order.
pub type BranchId = usize;

/// Default cap on the number of nodes built for one tableau.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("tableaux are built for minimal sequents, got {0}")]
    NotMinimal(Sequent),
    #[error("bot/top have no tableau rules: {0}")]
    Constant(Sequent),
    #[error("node budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("branch {0} is not ignorable type-2")]
    NotTypeTwo(BranchId),
    #[error("no branch {0}")]
    NoSuchBranch(BranchId),
}

/// Which unmarked formula to expand next on a branch. All strategies
/// expand alpha formulas before beta formulas.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Beta formula whose full beta-decomposition leaves the fewest
    /// components that do not close the branch at once; ties go to the
    /// deepest node.
    #[default]
    MostConstrained,
    /// Same score, ties go to the shallowest node.
    MostConstrainedShallow,
    /// Same score, ties go to the greatest formula in canonical order.
    MostConstrainedCanonical,
    /// Shallowest node first.
    Shallowest,
    /// Deepest node first.
    Deepest,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::MostConstrained,
        Strategy::MostConstrainedShallow,
        Strategy::MostConstrainedCanonical,
        Strategy::Shallowest,
        Strategy::Deepest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::MostConstrained => "most-constrained",
            Strategy::MostConstrainedShallow => "most-constrained-shallow",
            Strategy::MostConstrainedCanonical => "most-constrained-canonical",
            Strategy::Shallowest => "shallowest",
            Strategy::Deepest => "deepest",
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub strategy: Strategy,
    pub node_budget: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { strategy: Strategy::default(), node_budget: DEFAULT_NODE_BUDGET }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionKind {
    Alpha,
    Beta,
}

/// A rule application recorded at the leaf where it happened.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub principal: NodeId,
    pub kind: ExpansionKind,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub label: SignedFormula,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub expansion: Option<Expansion>,
    pub depth: usize,
}

#[derive(Clone, Debug)]
pub struct Branch {
    /// `None` only for the single empty branch of an empty sequent.
    pub leaf: Option<NodeId>,
    /// Node ids from the root to the leaf.
    pub path: Vec<NodeId>,
}

#[derive(Clone, Debug)]
pub struct Tableau {
    pub origin: Sequent,
    pub strategy: Strategy,
    nodes: Vec<Node>,
    chain_len: usize,
    branches: Vec<Branch>,
    leaf_rank: HashMap<NodeId, BranchId>,
}

impl Tableau {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn root(&self) -> Option<NodeId> {
        if self.nodes.is_empty() {
            None
        } else {
            Some(0)
        }
    }

    /// Number of nodes in the initial single-branch chain.
    pub fn chain_len(&self) -> usize {
        self.chain_len
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn branch(&self, b: BranchId) -> &Branch {
        &self.branches[b]
    }

    /// Branch ids whose leaves lie below `n` (or at `n`), as a range.
    pub fn branches_through(&self, n: NodeId) -> std::ops::Range<BranchId> {
        let mut lo = n;
        while let Some(&c) = self.nodes[lo].children.first() {
            lo = c;
        }
        let mut hi = n;
        while let Some(&c) = self.nodes[hi].children.last() {
            hi = c;
        }
        let first = self.leaf_branch(lo);
        let last = self.leaf_branch(hi);
        first..last + 1
    }

    /// Branch whose leaf is `leaf`.
    pub fn leaf_branch(&self, leaf: NodeId) -> BranchId {
        self.leaf_rank[&leaf]
    }

    /// Whether node `n` is marked on branch `b`.
    pub fn marked_on(&self, b: BranchId, n: NodeId) -> bool {
        let view = BranchView::new(&self.nodes, &self.branches[b].path);
        !view.is_unmarked(&self.nodes, n)
    }

    /// For each node on the path of branch `b`, whether it is unmarked there.
    pub fn unmarked_along(&self, b: BranchId) -> Vec<bool> {
        let path = &self.branches[b].path;
        let view = BranchView::new(&self.nodes, path);
        path.iter().map(|&n| view.is_unmarked(&self.nodes, n)).collect()
    }

    /// Unmarked T- and F-formulas of a branch, signs stripped.
    pub fn unmarked_sets(&self, b: BranchId) -> (BTreeSet<Formula>, BTreeSet<Formula>) {
        let path = &self.branches[b].path;
        let view = BranchView::new(&self.nodes, path);
        let (mut t, mut f) = (BTreeSet::new(), BTreeSet::new());
        for &n in path {
            if view.is_unmarked(&self.nodes, n) {
                let label = &self.nodes[n].label;
                match label.sign {
                    Sign::T => t.insert(label.formula.clone()),
                    Sign::F => f.insert(label.formula.clone()),
                };
            }
        }
        (t, f)
    }
}

/// Per-branch bookkeeping: the depth of the last expansion of each label.
struct BranchView<'a> {
    last_expansion: HashMap<&'a SignedFormula, usize>,
}

impl<'a> BranchView<'a> {
    fn new(nodes: &'a [Node], path: &[NodeId]) -> BranchView<'a> {
        let mut last_expansion = HashMap::new();
        for &n in path {
            if let Some(e) = nodes[n].expansion {
                last_expansion.insert(&nodes[e.principal].label, nodes[n].depth);
            }
        }
        BranchView { last_expansion }
    }

    fn is_unmarked(&self, nodes: &[Node], n: NodeId) -> bool {
        let node = &nodes[n];
        match self.last_expansion.get(&node.label) {
            Some(&d) => node.depth > d,
            None => true,
        }
    }
}

fn t_closes(t_formulas: &BTreeSet<&Formula>, f: &Formula) -> bool {
    if t_formulas.contains(&Formula::not(f.clone())) {
        return true;
    }
    matches!(f, Formula::Not(inner) if t_formulas.contains(&**inner))
}

fn is_t_closed(t_formulas: &BTreeSet<&Formula>) -> bool {
    t_formulas
        .iter()
        .any(|f| matches!(f, Formula::Not(inner) if t_formulas.contains(&**inner)))
}

/// Signed formulas reached by repeatedly splitting beta formulas.
fn beta_leaves(sf: &SignedFormula, out: &mut Vec<SignedFormula>) {
    match classify(sf) {
        Classification::Beta(x, y) => {
            beta_leaves(&x, out);
            beta_leaves(&y, out);
        }
        _ => out.push(sf.clone()),
    }
}

struct Builder {
    nodes: Vec<Node>,
    options: BuildOptions,
}

impl Builder {
    fn add(&mut self, label: SignedFormula, parent: Option<NodeId>) -> Result<NodeId, TableauError> {
        if self.nodes.len() >= self.options.node_budget {
            return Err(TableauError::BudgetExceeded(self.options.node_budget));
        }
        let id = self.nodes.len();
        let depth = parent.map_or(0, |p| self.nodes[p].depth + 1);
        if let Some(p) = parent {
            self.nodes[p].children.push(id);
        }
        self.nodes.push(Node { label, parent, children: Vec::new(), expansion: None, depth });
        Ok(id)
    }

    fn path(&self, leaf: NodeId) -> Vec<NodeId> {
        let mut path = vec![leaf];
        let mut cur = leaf;
        while let Some(p) = self.nodes[cur].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    fn choose(&self, path: &[NodeId]) -> Option<(NodeId, Classification)> {
        let view = BranchView::new(&self.nodes, path);
        let t_formulas: BTreeSet<&Formula> = path
            .iter()
            .map(|&n| &self.nodes[n].label)
            .filter(|l| l.sign == Sign::T)
            .map(|l| &l.formula)
            .collect();
        if is_t_closed(&t_formulas) {
            return None;
        }
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        for &n in path {
            if !view.is_unmarked(&self.nodes, n) {
                continue;
            }
            match classify(&self.nodes[n].label) {
                Classification::Literal => {}
                c @ Classification::Alpha(..) => alphas.push((n, c)),
                c @ Classification::Beta(..) => betas.push((n, c)),
            }
        }
        let deepest = |v: Vec<(NodeId, Classification)>| v.into_iter().last();
        let shallowest = |v: Vec<(NodeId, Classification)>| v.into_iter().next();
        match self.options.strategy {
            Strategy::Shallowest => shallowest(alphas).or_else(|| shallowest(betas)),
            Strategy::Deepest => deepest(alphas).or_else(|| deepest(betas)),
            strategy => {
                if !alphas.is_empty() {
                    return shallowest(alphas);
                }
                let open_count = |n: NodeId| {
                    let mut leaves = Vec::new();
                    beta_leaves(&self.nodes[n].label, &mut leaves);
                    leaves
                        .iter()
                        .filter(|l| !(l.sign == Sign::T && t_closes(&t_formulas, &l.formula)))
                        .count()
                };
                // min_by_key keeps the first minimum, so scan from the side
                // that should win ties.
                let scored = betas.into_iter().map(|(n, c)| (open_count(n), n, c));
                let best = match strategy {
                    Strategy::MostConstrainedShallow => scored.min_by_key(|(k, _, _)| *k),
                    Strategy::MostConstrainedCanonical => {
                        scored.min_by(|(k, n, _), (l, m, _)| k.cmp(l).then_with(|| self.nodes[*m].label.cmp(&self.nodes[*n].label)))
                    }
                    _ => scored.rev().min_by_key(|(k, _, _)| *k),
                };
                best.map(|(_, n, c)| (n, c))
            }
        }
    }
}

pub fn build_tableau(s: &Sequent, strategy: Strategy) -> Result<Tableau, TableauError> {
    build_tableau_with(s, BuildOptions { strategy, ..BuildOptions::default() })
}

/// Expands the initial chain until every branch is completed or T-closed.
pub fn build_tableau_with(s: &Sequent, options: BuildOptions) -> Result<Tableau, TableauError> {
    if s.kind != SequentKind::Minimal {
        return Err(TableauError::NotMinimal(s.clone()));
    }
    if s.has_constant() {
        return Err(TableauError::Constant(s.clone()));
    }
    let mut b = Builder { nodes: Vec::new(), options };
    let mut last = None;
    let labels = s
        .antecedent
        .iter()
        .map(|g| SignedFormula::t(g.clone()))
        .chain(s.succedent.iter().map(|d| SignedFormula::f(d.clone())));
    for label in labels {
        last = Some(b.add(label, last)?);
    }
    let chain_len = b.nodes.len();
    let mut stack: Vec<NodeId> = last.into_iter().collect();
    while let Some(leaf) = stack.pop() {
        let path = b.path(leaf);
        let Some((principal, class)) = b.choose(&path) else {
            continue;
        };
        match class {
            Classification::Alpha(x, y) => {
                b.nodes[leaf].expansion = Some(Expansion { principal, kind: ExpansionKind::Alpha });
                let v = b.add(x, Some(leaf))?;
                let w = b.add(y, Some(v))?;
                stack.push(w);
            }
            Classification::Beta(x, y) => {
                b.nodes[leaf].expansion = Some(Expansion { principal, kind: ExpansionKind::Beta });
                let v = b.add(x, Some(leaf))?;
                let w = b.add(y, Some(leaf))?;
                stack.push(w);
                stack.push(v);
            }
            Classification::Literal => unreachable!("literals are never chosen"),
        }
    }
    let nodes = b.nodes;
    let mut branches = Vec::new();
    if nodes.is_empty() {
        branches.push(Branch { leaf: None, path: Vec::new() });
    } else {
        let mut path = Vec::new();
        collect_branches(&nodes, 0, &mut path, &mut branches);
    }
    let leaf_rank = branches
        .iter()
        .enumerate()
        .filter_map(|(i, br)| br.leaf.map(|l| (l, i)))
        .collect();
    Ok(Tableau { origin: s.clone(), strategy: options.strategy, nodes, chain_len, branches, leaf_rank })
}

fn collect_branches(nodes: &[Node], n: NodeId, path: &mut Vec<NodeId>, out: &mut Vec<Branch>) {
    path.push(n);
    if nodes[n].children.is_empty() {
        out.push(Branch { leaf: Some(n), path: path.clone() });
    } else {
        for &c in &nodes[n].children {
            collect_branches(nodes, c, path, out);
        }
    }
    path.pop();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_sequent;
    use crate::semantics::holds;

    fn tableau(s: &str) -> Tableau {
        build_tableau(&parse_sequent(s).unwrap(), Strategy::default()).unwrap()
    }

    fn atoms(names: &[&str]) -> BTreeSet<crate::formula::Atom> {
        names.iter().map(|n| crate::formula::Atom::new(n)).collect()
    }

    #[test]
    fn two_type_one_branches() {
        let t = tableau("a | b |-m ~a | ~b");
        let infos = analyze(&t);
        assert_eq!(infos.len(), 2);
        for info in &infos {
            assert!(info.completed && !info.closed() && info.ignorable1, "{info:?}");
        }
        assert_eq!(infos[0].at, atoms(&["a"]));
        let (ts, fs) = t.unmarked_sets(0);
        assert_eq!(ts, BTreeSet::from([Formula::atom("a")]));
        assert!(fs.contains(&Formula::not(Formula::atom("b"))));
        assert!(validate_tableau(&t));
    }

    #[test]
    fn type_two_branch_points_left() {
        let t = tableau("a | (a & b) |-m ~b");
        let infos = analyze(&t);
        assert_eq!(infos.len(), 2);
        assert_eq!(infos[0].at, atoms(&["a"]));
        assert!(infos[0].ignorable1);
        assert_eq!(infos[1].at, atoms(&["a", "b"]));
        assert!(infos[1].ignorable2 && !infos[1].ignorable1);
        assert_eq!(theta(&t, 1), Ok(0));
        assert_eq!(theta(&t, 0), Err(TableauError::NotTypeTwo(0)));
        assert!(validate_tableau(&t));
    }

    #[test]
    fn theta_takes_the_leftmost_witness() {
        let t = tableau("a | b | (a & b & c) |-m ~c");
        let infos = analyze(&t);
        let ats: Vec<_> = infos.iter().map(|i| i.at.clone()).collect();
        assert_eq!(ats, vec![atoms(&["a"]), atoms(&["b"]), atoms(&["a", "b", "c"])]);
        assert_eq!(theta(&t, 2), Ok(0));
    }

    #[test]
    fn closure_and_invalidity() {
        let t = tableau("a |-m a");
        assert_eq!(t.branches().len(), 1);
        assert_eq!(analyze(&t)[0].status(), BranchStatus::TfClosed);
        assert!(validate_tableau(&t));

        let t = tableau("a |-m ~a");
        let info = &analyze(&t)[0];
        assert!(info.completed && !info.closed() && !info.ignorable());
        assert!(!validate_tableau(&t));

        let t = tableau("a, ~a |-m");
        assert_eq!(analyze(&t)[0].status(), BranchStatus::TClosed);
        let t = tableau("|-m b, ~b");
        assert_eq!(analyze(&t)[0].status(), BranchStatus::FClosed);
    }

    #[test]
    fn empty_sequent_has_one_open_branch() {
        let t = tableau("|-m");
        assert_eq!(t.branches().len(), 1);
        assert!(t.branch(0).leaf.is_none());
        assert!(!validate_tableau(&t));
    }

    #[test]
    fn rejects_constants_and_classical_input() {
        let s = parse_sequent("a |- a").unwrap();
        assert!(matches!(build_tableau(&s, Strategy::default()), Err(TableauError::NotMinimal(_))));
        let s = parse_sequent("bot |-m a").unwrap();
        assert!(matches!(build_tableau(&s, Strategy::default()), Err(TableauError::Constant(_))));
    }

    #[test]
    fn budget_is_enforced() {
        let s = parse_sequent("(a | b) & (c | d) & (e | f) |-m a").unwrap();
        let r = build_tableau_with(&s, BuildOptions { node_budget: 5, ..BuildOptions::default() });
        assert_eq!(r.unwrap_err(), TableauError::BudgetExceeded(5));
    }

    #[test]
    fn duplicate_labels_are_marked_together() {
        // T~~a gives Ta twice on the same branch; both count as expanded
        // once either copy is.
        let t = tableau("~~(a & b) |-m a");
        assert_eq!(t.branches().len(), 1);
        let (ts, _) = t.unmarked_sets(0);
        assert_eq!(ts, BTreeSet::from([Formula::atom("a"), Formula::atom("b")]));
        assert!(analyze(&t)[0].completed);
    }

    #[test]
    fn strategies_agree_with_the_oracle() {
        for src in [
            "a | b |-m ~a | ~b",
            "a | (a & b) |-m ~b",
            "a -> b, a |-m b",
            "a | b, ~a |-m b & ~a",
            "~(a & b) |-m ~a | ~b",
            "a | b |-m a & b",
            "(a -> b) -> a |-m a",
            "a | ~a |-m ~a",
        ] {
            let s = parse_sequent(src).unwrap();
            let expected = holds(&s).unwrap();
            for strategy in Strategy::ALL {
                let t = build_tableau(&s, strategy).unwrap();
                assert_eq!(validate_tableau(&t), expected, "{src} under {strategy}");
            }
        }
    }

    #[test]
    fn branch_ranges_cover_subtrees() {
        let t = tableau("a | b, c | d |-m a");
        assert_eq!(t.branches_through(0), 0..t.branches().len());
        for (k, br) in t.branches().iter().enumerate() {
            assert_eq!(t.branches_through(br.leaf.unwrap()), k..k + 1);
        }
    }

    #[test]
    fn json_lists_every_node() {
        let t = tableau("a | b |-m ~a | ~b");
        let doc = TableauDocument::from(&t);
        assert_eq!(doc.nodes.len(), t.nodes().len());
        assert!(doc.nodes[0].marked);
        assert_eq!(doc.nodes[0].parent, None);
        assert!(doc.nodes.iter().any(|n| n.rule.as_ref().is_some_and(|r| r.kind == "beta")));
        let text = t.to_json();
        let back: TableauDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
    }
}
