use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Proof, ProofStep, Rule};
use crate::parser::{parse_formula, ParseError};
use crate::sequent::{Sequent, SequentKind};

#[derive(Debug, Error)]
pub enum ProofJsonError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("step {step}: {source}")]
    Formula { step: usize, source: ParseError },
    #[error("step {step}: unknown rule tag {tag:?}")]
    UnknownRule { step: usize, tag: String },
    #[error("step {step}: unknown sequent kind {kind:?}")]
    UnknownKind { step: usize, kind: String },
    #[error("step at position {position} has id {id}")]
    IdMismatch { position: usize, id: usize },
}

/// Serialized form of a proof: formulas as strings in the parser's syntax.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofDocument {
    pub conclusion: usize,
    pub steps: Vec<StepDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDocument {
    pub id: usize,
    pub kind: String,
    pub antecedent: Vec<String>,
    pub succedent: Vec<String>,
    pub rule: String,
    pub premises: Vec<usize>,
    pub principal: Vec<String>,
}

impl From<&Proof> for ProofDocument {
    fn from(p: &Proof) -> ProofDocument {
        let steps = p
            .steps
            .iter()
            .enumerate()
            .map(|(id, s)| StepDocument {
                id,
                kind: s.sequent.kind.as_str().to_string(),
                antecedent: s.sequent.antecedent.iter().map(|f| f.to_string()).collect(),
                succedent: s.sequent.succedent.iter().map(|f| f.to_string()).collect(),
                rule: s.rule.tag().to_string(),
                premises: s.premises.clone(),
                principal: s.principal.iter().map(|f| f.to_string()).collect(),
            })
            .collect();
        ProofDocument { conclusion: p.conclusion, steps }
    }
}

impl ProofDocument {
    /// Rebuilds the proof; the result still has to be checked.
    pub fn to_proof(&self) -> Result<Proof, ProofJsonError> {
        let mut steps = Vec::with_capacity(self.steps.len());
        for (position, d) in self.steps.iter().enumerate() {
            if d.id != position {
                return Err(ProofJsonError::IdMismatch { position, id: d.id });
            }
            let parse = |xs: &[String]| {
                xs.iter()
                    .map(|x| parse_formula(x).map_err(|source| ProofJsonError::Formula { step: position, source }))
                    .collect::<Result<Vec<_>, _>>()
            };
            let kind = match d.kind.as_str() {
                "classical" => SequentKind::Classical,
                "minimal" => SequentKind::Minimal,
                other => return Err(ProofJsonError::UnknownKind { step: position, kind: other.to_string() }),
            };
            let rule = Rule::from_tag(&d.rule)
                .ok_or_else(|| ProofJsonError::UnknownRule { step: position, tag: d.rule.clone() })?;
            steps.push(ProofStep {
                sequent: Sequent::new(parse(&d.antecedent)?, parse(&d.succedent)?, kind),
                rule,
                premises: d.premises.clone(),
                principal: parse(&d.principal)?,
            });
        }
        Ok(Proof { steps, conclusion: self.conclusion })
    }
}

impl Proof {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ProofDocument::from(self)).expect("proof documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Proof, ProofJsonError> {
        serde_json::from_str::<ProofDocument>(text)?.to_proof()
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::formula::{Atom, Formula};
    use crate::proof::{check, prove_assignment};

    #[test]
    fn round_trip() {
        let pos: BTreeSet<Atom> = [Atom::new("a")].into();
        let neg: BTreeSet<Atom> = [Atom::new("b")].into();
        let delta: BTreeSet<Formula> = ["a & ~b -> b | a".parse().unwrap()].into();
        let p = prove_assignment(&pos, &neg, &BTreeSet::new(), &delta).unwrap();
        let back = Proof::from_json(&p.to_json()).unwrap();
        assert_eq!(back, p);
        assert_eq!(check(&back), Ok(()));
    }

    #[test]
    fn reports_bad_documents() {
        let text = r#"{"conclusion":0,"steps":[{"id":0,"kind":"classical","antecedent":["a"],"succedent":["a"],"rule":"nope","premises":[],"principal":["a"]}]}"#;
        assert!(matches!(Proof::from_json(text), Err(ProofJsonError::UnknownRule { step: 0, .. })));
        let text = r#"{"conclusion":0,"steps":[{"id":0,"kind":"classical","antecedent":["a &"],"succedent":["a"],"rule":"axiom","premises":[],"principal":["a"]}]}"#;
        assert!(matches!(Proof::from_json(text), Err(ProofJsonError::Formula { step: 0, .. })));
    }
}
