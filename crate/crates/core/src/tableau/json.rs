//! Flat node-list serialization of tableaux.

use serde::{Deserialize, Serialize};

use super::{ExpansionKind, NodeId, Tableau};
use crate::formula::Sign;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleDocument {
    /// `"alpha"` or `"beta"`.
    pub kind: String,
    /// Node whose formula was expanded.
    pub principal: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDocument {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    pub sign: String,
    pub formula: String,
    /// Marked on every branch through the node.
    pub marked: bool,
    /// Expansion applied at this node, which is then the last node before
    /// the new children.
    pub rule: Option<RuleDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauDocument {
    pub origin: String,
    pub strategy: String,
    pub nodes: Vec<NodeDocument>,
}

impl From<&Tableau> for TableauDocument {
    fn from(t: &Tableau) -> Self {
        let mut marked = vec![true; t.nodes().len()];
        for b in 0..t.branches().len() {
            for (&n, unmarked) in t.branch(b).path.iter().zip(t.unmarked_along(b)) {
                if unmarked {
                    marked[n] = false;
                }
            }
        }
        let nodes = t
            .nodes()
            .iter()
            .enumerate()
            .map(|(id, node)| NodeDocument {
                id,
                parent: node.parent,
                sign: match node.label.sign {
                    Sign::T => "T".to_string(),
                    Sign::F => "F".to_string(),
                },
                formula: node.label.formula.to_string(),
                marked: marked[id],
                rule: node.expansion.map(|e| RuleDocument {
                    kind: match e.kind {
                        ExpansionKind::Alpha => "alpha".to_string(),
                        ExpansionKind::Beta => "beta".to_string(),
                    },
                    principal: e.principal,
                }),
            })
            .collect();
        TableauDocument { origin: t.origin.to_string(), strategy: t.strategy.to_string(), nodes }
    }
}

impl Tableau {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TableauDocument::from(self)).expect("tableau documents serialize")
    }
}
