//! Propositional minimal entailment: a brute-force oracle, the OTAB tableau
//! prover, MLK sequent proofs as checkable DAG objects, and a translator that
//! compiles every accepted tableau into an MLK proof of the same sequent.

pub mod bench;
pub mod corpus;
pub mod formula;
pub mod parser;
pub mod phi;
pub mod proof;
pub mod semantics;
pub mod sequent;
pub mod tableau;
pub mod translate;

pub use formula::{classify, positive_atoms, vars, Atom, Classification, Formula, Sign, SignedFormula};
pub use parser::{parse_formula, parse_sequent, ParseError};
pub use semantics::{holds, minimal_models, satisfies, Model, OracleError};
pub use sequent::{Sequent, SequentKind};
pub use tableau::{build_tableau, validate_tableau, Strategy, Tableau};
