//! Branch classification, the theta map and tableau validation.

use std::collections::BTreeSet;
use std::fmt;

use super::{BranchId, BranchView, Tableau, TableauError};
use crate::formula::{classify, Atom, Classification, Formula, Sign};

/// One label per branch, picked in the order the translation tries its
/// base cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchStatus {
    TClosed,
    FClosed,
    TfClosed,
    Ignorable1,
    Ignorable2,
    Open,
}

impl BranchStatus {
    pub const ALL: [BranchStatus; 6] = [
        BranchStatus::TClosed,
        BranchStatus::FClosed,
        BranchStatus::TfClosed,
        BranchStatus::Ignorable1,
        BranchStatus::Ignorable2,
        BranchStatus::Open,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BranchStatus::TClosed => "t-closed",
            BranchStatus::FClosed => "f-closed",
            BranchStatus::TfClosed => "tf-closed",
            BranchStatus::Ignorable1 => "ignorable-1",
            BranchStatus::Ignorable2 => "ignorable-2",
            BranchStatus::Open => "open",
        }
    }
}

impl fmt::Display for BranchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchInfo {
    pub id: BranchId,
    pub at: BTreeSet<Atom>,
    pub completed: bool,
    pub t_closed: bool,
    pub f_closed: bool,
    pub tf_closed: bool,
    pub ignorable1: bool,
    pub ignorable2: bool,
    pub theta: Option<BranchId>,
}

impl BranchInfo {
    pub fn closed(&self) -> bool {
        self.t_closed || self.f_closed || self.tf_closed
    }

    pub fn ignorable(&self) -> bool {
        self.ignorable1 || self.ignorable2
    }

    pub fn status(&self) -> BranchStatus {
        if self.t_closed {
            BranchStatus::TClosed
        } else if self.f_closed {
            BranchStatus::FClosed
        } else if self.tf_closed {
            BranchStatus::TfClosed
        } else if self.ignorable1 {
            BranchStatus::Ignorable1
        } else if self.ignorable2 {
            BranchStatus::Ignorable2
        } else {
            BranchStatus::Open
        }
    }
}

/// Number of branches per status.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StatusCounts {
    pub t_closed: usize,
    pub f_closed: usize,
    pub tf_closed: usize,
    pub ignorable1: usize,
    pub ignorable2: usize,
    pub open: usize,
}

impl StatusCounts {
    pub fn of(infos: &[BranchInfo]) -> StatusCounts {
        let mut c = StatusCounts::default();
        for info in infos {
            match info.status() {
                BranchStatus::TClosed => c.t_closed += 1,
                BranchStatus::FClosed => c.f_closed += 1,
                BranchStatus::TfClosed => c.tf_closed += 1,
                BranchStatus::Ignorable1 => c.ignorable1 += 1,
                BranchStatus::Ignorable2 => c.ignorable2 += 1,
                BranchStatus::Open => c.open += 1,
            }
        }
        c
    }
}

/// Flags that depend on the branch alone.
fn local_info(t: &Tableau, b: BranchId) -> BranchInfo {
    let nodes = t.nodes();
    let path = &t.branch(b).path;
    let view = BranchView::new(nodes, path);
    let mut ts: BTreeSet<&Formula> = BTreeSet::new();
    let mut fs: BTreeSet<&Formula> = BTreeSet::new();
    let mut completed = true;
    for &n in path {
        let label = &nodes[n].label;
        match label.sign {
            Sign::T => ts.insert(&label.formula),
            Sign::F => fs.insert(&label.formula),
        };
        if view.is_unmarked(nodes, n) && classify(label) != Classification::Literal {
            completed = false;
        }
    }
    let negated_in = |set: &BTreeSet<&Formula>| {
        set.iter().any(|f| matches!(f, Formula::Not(inner) if set.contains(&**inner)))
    };
    let t_closed = negated_in(&ts);
    let f_closed = negated_in(&fs);
    let tf_closed = ts.iter().any(|f| fs.contains(f));
    let at: BTreeSet<Atom> = ts.iter().filter_map(|f| f.as_atom().cloned()).collect();
    let closed = t_closed || f_closed || tf_closed;
    let ignorable1 = completed
        && !closed
        && fs.iter().any(|f| match f {
            Formula::Not(inner) => inner.as_atom().is_some_and(|p| !at.contains(p)),
            _ => false,
        });
    BranchInfo {
        id: b,
        at,
        completed,
        t_closed,
        f_closed,
        tf_closed,
        ignorable1,
        ignorable2: false,
        theta: None,
    }
}

fn proper_subset(a: &BTreeSet<Atom>, b: &BTreeSet<Atom>) -> bool {
    a.len() < b.len() && a.is_subset(b)
}

/// Classifies every branch, left to right.
///
/// A completed, non-closed branch is type-2 when another completed branch
/// that is not T-closed has a strictly smaller atom set. Its theta is the
/// left-most such witness that is not itself dominated in this way.
pub fn analyze(t: &Tableau) -> Vec<BranchInfo> {
    let mut infos: Vec<BranchInfo> = (0..t.branches().len()).map(|b| local_info(t, b)).collect();
    let witnesses: Vec<usize> = infos
        .iter()
        .enumerate()
        .filter(|(_, i)| i.completed && !i.t_closed)
        .map(|(k, _)| k)
        .collect();
    let dominated =
        |k: usize| witnesses.iter().any(|&w| proper_subset(&infos[w].at, &infos[k].at));
    let undominated: Vec<usize> = witnesses.iter().copied().filter(|&k| !dominated(k)).collect();
    let mut updates = Vec::new();
    for (k, info) in infos.iter().enumerate() {
        if !info.completed || info.closed() || !dominated(k) {
            continue;
        }
        // A strictly smaller witness exists, so a minimal one below it does too.
        let th = undominated.iter().copied().find(|&w| proper_subset(&infos[w].at, &info.at));
        updates.push((k, th));
    }
    for (k, th) in updates {
        infos[k].ignorable2 = true;
        infos[k].theta = th;
    }
    infos
}

pub fn branch_status(t: &Tableau, b: BranchId) -> Result<BranchInfo, TableauError> {
    if b >= t.branches().len() {
        return Err(TableauError::NoSuchBranch(b));
    }
    Ok(analyze(t).swap_remove(b))
}

pub fn theta(t: &Tableau, b: BranchId) -> Result<BranchId, TableauError> {
    branch_status(t, b)?.theta.ok_or(TableauError::NotTypeTwo(b))
}

/// True iff every branch is closed or ignorable.
pub fn validate_tableau(t: &Tableau) -> bool {
    analyze(t).iter().all(|i| i.closed() || i.ignorable())
}
