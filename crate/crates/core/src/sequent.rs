use std::collections::BTreeSet;
use std::fmt;

use crate::formula::{vars, Atom, Formula};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SequentKind {
    /// Every model of the antecedent satisfies the succedent.
    Classical,
    /// Every minimal model of the antecedent satisfies the succedent.
    Minimal,
}

impl SequentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SequentKind::Classical => "classical",
            SequentKind::Minimal => "minimal",
        }
    }

    pub fn turnstile(self) -> &'static str {
        match self {
            SequentKind::Classical => "|-",
            SequentKind::Minimal => "|-m",
        }
    }
}

/// A pair of formula sets. An empty antecedent reads as `top`, an empty
/// succedent as `bot`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub antecedent: BTreeSet<Formula>,
    pub succedent: BTreeSet<Formula>,
    pub kind: SequentKind,
}

impl Sequent {
    pub fn new<A, S>(antecedent: A, succedent: S, kind: SequentKind) -> Sequent
    where
        A: IntoIterator<Item = Formula>,
        S: IntoIterator<Item = Formula>,
    {
        Sequent {
            antecedent: antecedent.into_iter().collect(),
            succedent: succedent.into_iter().collect(),
            kind,
        }
    }

    pub fn classical<A, S>(antecedent: A, succedent: S) -> Sequent
    where
        A: IntoIterator<Item = Formula>,
        S: IntoIterator<Item = Formula>,
    {
        Sequent::new(antecedent, succedent, SequentKind::Classical)
    }

    pub fn minimal<A, S>(antecedent: A, succedent: S) -> Sequent
    where
        A: IntoIterator<Item = Formula>,
        S: IntoIterator<Item = Formula>,
    {
        Sequent::new(antecedent, succedent, SequentKind::Minimal)
    }

    pub fn with_kind(&self, kind: SequentKind) -> Sequent {
        Sequent { kind, ..self.clone() }
    }

    pub fn is_minimal(&self) -> bool {
        self.kind == SequentKind::Minimal
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(self.succedent.iter())
    }

    pub fn vars(&self) -> BTreeSet<Atom> {
        vars(self.formulas())
    }

    /// Total symbol count of both sides.
    pub fn symbols(&self) -> usize {
        self.formulas().map(Formula::size).sum()
    }

    pub fn has_constant(&self) -> bool {
        self.formulas().any(Formula::has_constant)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, fs: &BTreeSet<Formula>) -> fmt::Result {
    for (i, x) in fs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.antecedent)?;
        if !self.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str(self.kind.turnstile())?;
        if !self.succedent.is_empty() {
            f.write_str(" ")?;
        }
        write_list(f, &self.succedent)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
