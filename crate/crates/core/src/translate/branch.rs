//! Classical proofs that a branch's unmarked formulas entail each T-formula
//! on it, and that each F-formula entails the unmarked F-formulas.

use std::collections::HashMap;

use super::{Side, TranslateError, Translator};
use crate::formula::{classify, Classification, Formula, Sign, SignedFormula};
use crate::proof::{alpha_beta_sequents, StepId};
use crate::sequent::Sequent;
use crate::tableau::{BranchId, ExpansionKind};

/// Where each label was last expanded along one branch.
pub(super) struct BranchExpansions {
    /// Label to (path position of the expanding leaf, kind).
    last: HashMap<SignedFormula, (usize, ExpansionKind)>,
    path: Vec<usize>,
}

impl Translator<'_> {
    pub(super) fn expansions(&self, b: BranchId) -> BranchExpansions {
        let path = self.tableau.branch(b).path.clone();
        let mut last = HashMap::new();
        for (i, &n) in path.iter().enumerate() {
            if let Some(e) = self.tableau.node(n).expansion {
                last.insert(self.tableau.node(e.principal).label.clone(), (i, e.kind));
            }
        }
        BranchExpansions { last, path }
    }

    /// Exactly `A(b) |- phi` when `T phi` is on branch `b`, or
    /// `phi |- B(b)` when `F phi` is.
    pub(super) fn branch_formula(
        &mut self,
        b: BranchId,
        ex: &BranchExpansions,
        sf: &SignedFormula,
    ) -> Result<StepId, TranslateError> {
        let leaf = *ex.path.last().ok_or(TranslateError::NotOnBranch { branch: b, formula: sf.clone() })?;
        let (a_leaf, b_leaf) = (self.table.a[leaf].clone(), self.table.b[leaf].clone());
        let phi = &sf.formula;
        let target = match sf.sign {
            Sign::T => Sequent::classical(a_leaf.iter().cloned(), [phi.clone()]),
            Sign::F => Sequent::classical([phi.clone()], b_leaf.iter().cloned()),
        };
        if let Some(id) = self.builder.known(&target) {
            return Ok(id);
        }
        let unmarked = match sf.sign {
            Sign::T => a_leaf.contains(phi),
            Sign::F => b_leaf.contains(phi),
        };
        if unmarked {
            let ax = self.builder.axiom(phi)?;
            return Ok(self.builder.weaken_to(ax, &target)?);
        }
        let Some(&(pos, kind)) = ex.last.get(sf) else {
            return Err(TranslateError::NotOnBranch { branch: b, formula: sf.clone() });
        };
        let (x, y) = match classify(sf) {
            Classification::Alpha(x, y) | Classification::Beta(x, y) => (x, y),
            Classification::Literal => unreachable!("literals are never expanded"),
        };
        let (_, joined) = alpha_beta_sequents(sf)?;
        let id = match (sf.sign, kind) {
            (Sign::T, ExpansionKind::Alpha) => {
                let px = self.branch_formula(b, ex, &x)?;
                let py = self.branch_formula(b, ex, &y)?;
                self.builder.and_right(px, py, &joined)?
            }
            (Sign::T, ExpansionKind::Beta) => {
                let first = self.on_first_child(ex, pos);
                let pc = self.branch_formula(b, ex, if first { &x } else { &y })?;
                self.builder.or_right(pc, &joined, first)?
            }
            (Sign::F, ExpansionKind::Alpha) => {
                let px = self.branch_formula(b, ex, &x)?;
                let py = self.branch_formula(b, ex, &y)?;
                self.builder.or_left(px, py, &joined)?
            }
            (Sign::F, ExpansionKind::Beta) => {
                let first = self.on_first_child(ex, pos);
                let pc = self.branch_formula(b, ex, if first { &x } else { &y })?;
                self.builder.and_left(pc, &joined, first)?
            }
        };
        let id = if joined == *phi {
            id
        } else {
            let link = self.builder.alpha_beta(sf, sf.sign == Sign::F)?;
            match sf.sign {
                Sign::T => self.builder.cut(id, link, &joined, false)?,
                Sign::F => self.builder.cut(link, id, &joined, false)?,
            }
        };
        Ok(self.builder.weaken_to(id, &target)?)
    }

    fn on_first_child(&self, ex: &BranchExpansions, pos: usize) -> bool {
        let u = ex.path[pos];
        self.tableau.node(u).children.first() == ex.path.get(pos + 1)
    }

    /// Public form of [`Self::branch_formula`].
    pub fn prove_branch_formula(&mut self, b: BranchId, sf: &SignedFormula) -> Result<crate::proof::Proof, TranslateError> {
        if b >= self.tableau.branches().len() {
            return Err(TranslateError::NotOnBranch { branch: b, formula: sf.clone() });
        }
        let on_branch = self.tableau.branch(b).path.iter().any(|&n| self.tableau.node(n).label == *sf);
        if !on_branch {
            return Err(TranslateError::NotOnBranch { branch: b, formula: sf.clone() });
        }
        let ex = self.expansions(b);
        let id = self.branch_formula(b, &ex, sf)?;
        Ok(self.builder.finish(id))
    }

    /// Some formula `A` with both `A` and `~A` among `set`.
    pub(super) fn complementary(set: &Side) -> Option<Formula> {
        set.iter().find_map(|f| match f {
            Formula::Not(inner) if set.contains(&**inner) => Some((**inner).clone()),
            _ => None,
        })
    }
}
