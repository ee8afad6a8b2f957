//! Sequent proofs as step DAGs, the rule-by-rule checker, and builders for
//! the derived proofs the translation needs.

mod builder;
mod check;
mod json;
mod lemmas;

use std::fmt;

use crate::formula::Formula;
use crate::sequent::Sequent;

pub use builder::{BuildError, ProofBuilder, StepId};
pub use check::{check, check_step, Reject, RejectReason};
pub use json::{ProofDocument, ProofJsonError, StepDocument};
pub use lemmas::{
    alpha_beta_sequents, compose, mlk_weaken, prove_alpha_beta, prove_assignment, LemmaError,
};

/// Rule tags. Classical rules derive classical sequents only; minimal rules
/// derive minimal sequents, and `MBridge` turns a classical sequent into the
/// minimal one with the same sides.
///
/// The `principal` list of a step names the formulas instantiating the
/// schema: the compound formula introduced by a logical rule, the cut
/// formula for cuts, the added formulas for weakening, the axiom formula
/// for axioms, and the moved succedent for `MCumulate`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Rule {
    Axiom,
    BottomLeft,
    TopRight,
    WeakenLeft,
    WeakenRight,
    NotLeft,
    NotRight,
    /// `A, G |- S` gives `A & B, G |- S`.
    AndLeftFirst,
    /// `B, G |- S` gives `A & B, G |- S`.
    AndLeftSecond,
    AndRight,
    OrLeft,
    /// `G |- S, A` gives `G |- S, A | B`.
    OrRightFirst,
    /// `G |- S, B` gives `G |- S, A | B`.
    OrRightSecond,
    ImpRight,
    ImpLeft,
    Cut,
    /// `G |-m ~p` when `p` occurs positively in no formula of `G`.
    MAxiom,
    /// `G |- S` gives `G |-m S`.
    MBridge,
    MCut,
    /// `G |-m S` and `G |-m D` give `G, S |-m D`; `S` holds at most one formula.
    MCumulate,
    MAndRight,
    MOrLeft,
    MOrRightFirst,
    MOrRightSecond,
    MNotRight,
    MImpRight,
}

impl Rule {
    pub const ALL: [Rule; 26] = [
        Rule::Axiom,
        Rule::BottomLeft,
        Rule::TopRight,
        Rule::WeakenLeft,
        Rule::WeakenRight,
        Rule::NotLeft,
        Rule::NotRight,
        Rule::AndLeftFirst,
        Rule::AndLeftSecond,
        Rule::AndRight,
        Rule::OrLeft,
        Rule::OrRightFirst,
        Rule::OrRightSecond,
        Rule::ImpRight,
        Rule::ImpLeft,
        Rule::Cut,
        Rule::MAxiom,
        Rule::MBridge,
        Rule::MCut,
        Rule::MCumulate,
        Rule::MAndRight,
        Rule::MOrLeft,
        Rule::MOrRightFirst,
        Rule::MOrRightSecond,
        Rule::MNotRight,
        Rule::MImpRight,
    ];

    /// Stable tag used in serialized proofs.
    pub fn tag(self) -> &'static str {
        match self {
            Rule::Axiom => "axiom",
            Rule::BottomLeft => "bot_l",
            Rule::TopRight => "top_r",
            Rule::WeakenLeft => "weaken_l",
            Rule::WeakenRight => "weaken_r",
            Rule::NotLeft => "not_l",
            Rule::NotRight => "not_r",
            Rule::AndLeftFirst => "and_l1",
            Rule::AndLeftSecond => "and_l2",
            Rule::AndRight => "and_r",
            Rule::OrLeft => "or_l",
            Rule::OrRightFirst => "or_r1",
            Rule::OrRightSecond => "or_r2",
            Rule::ImpRight => "imp_r",
            Rule::ImpLeft => "imp_l",
            Rule::Cut => "cut",
            Rule::MAxiom => "m_axiom",
            Rule::MBridge => "m_bridge",
            Rule::MCut => "m_cut",
            Rule::MCumulate => "m_cumulate",
            Rule::MAndRight => "m_and_r",
            Rule::MOrLeft => "m_or_l",
            Rule::MOrRightFirst => "m_or_r1",
            Rule::MOrRightSecond => "m_or_r2",
            Rule::MNotRight => "m_not_r",
            Rule::MImpRight => "m_imp_r",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Rule> {
        Rule::ALL.into_iter().find(|r| r.tag() == tag)
    }

    /// Whether the rule concludes a minimal sequent.
    pub fn is_minimal(self) -> bool {
        matches!(
            self,
            Rule::MAxiom
                | Rule::MBridge
                | Rule::MCut
                | Rule::MCumulate
                | Rule::MAndRight
                | Rule::MOrLeft
                | Rule::MOrRightFirst
                | Rule::MOrRightSecond
                | Rule::MNotRight
                | Rule::MImpRight
        )
    }

    pub fn premise_count(self) -> usize {
        match self {
            Rule::Axiom | Rule::BottomLeft | Rule::TopRight | Rule::MAxiom => 0,
            Rule::AndRight
            | Rule::OrLeft
            | Rule::ImpLeft
            | Rule::Cut
            | Rule::MCut
            | Rule::MCumulate
            | Rule::MAndRight
            | Rule::MOrLeft => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProofStep {
    pub sequent: Sequent,
    pub rule: Rule,
    /// Indices of earlier steps.
    pub premises: Vec<usize>,
    pub principal: Vec<Formula>,
}

/// A proof as an ordered step list; premises always point backwards, so
/// shared subproofs appear once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
    pub conclusion: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ProofSize {
    pub steps: usize,
    /// Total symbol count over all step sequents.
    pub symbols: usize,
}

impl ProofSize {
    pub fn total(&self) -> usize {
        self.steps + self.symbols
    }
}

impl Proof {
    pub fn conclusion(&self) -> &Sequent {
        &self.steps[self.conclusion].sequent
    }

    pub fn size(&self) -> ProofSize {
        ProofSize {
            steps: self.steps.len(),
            symbols: self.steps.iter().map(|s| s.sequent.symbols()).sum(),
        }
    }

    pub fn check(&self) -> Result<(), Reject> {
        check(self)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            write!(f, "{i:>4}  {}   [{}", s.sequent, s.rule)?;
            for p in &s.premises {
                write!(f, " {p}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}
