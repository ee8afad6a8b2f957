//! Brute-force classical and minimal-model semantics.
//!
//! Models are sets of true atoms. Truth tables are evaluated as bitsets over
//! all assignments of the universe, so one pass over a formula covers every
//! model at once.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::{vars, Atom, Formula};
use crate::sequent::{Sequent, SequentKind};

/// Largest universe the oracle will enumerate.
pub const MAX_ORACLE_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{count} atoms exceed the oracle limit of {MAX_ORACLE_ATOMS}")]
    TooManyAtoms { count: usize },
    #[error("atom {0} occurs in the theory but not in the universe")]
    UniverseTooSmall(Atom),
}

/// A model, identified with its set of true atoms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Model(pub BTreeSet<Atom>);

impl Model {
    pub fn new<I: IntoIterator<Item = Atom>>(atoms: I) -> Model {
        Model(atoms.into_iter().collect())
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.contains(a)
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    pub fn is_subset(&self, other: &Model) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

pub fn satisfies(m: &Model, f: &Formula) -> bool {
    match f {
        Formula::Atom(a) => m.contains(a),
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::Not(x) => !satisfies(m, x),
        Formula::And(x, y) => satisfies(m, x) && satisfies(m, y),
        Formula::Or(x, y) => satisfies(m, x) || satisfies(m, y),
        Formula::Implies(x, y) => !satisfies(m, x) || satisfies(m, y),
    }
}

/// Truth table over all `2^n` assignments of an indexed universe; bit `m` is
/// the value under the assignment whose true atoms are the set bits of `m`.
struct Table {
    universe: Vec<Atom>,
    words: usize,
    tail_mask: u64,
}

impl Table {
    fn new(universe: Vec<Atom>) -> Table {
        let n = universe.len();
        let words = if n <= 6 { 1 } else { 1 << (n - 6) };
        let tail_mask = if n >= 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        Table { universe, words, tail_mask }
    }

    fn atom_column(&self, i: usize) -> Vec<u64> {
        const PATTERNS: [u64; 6] = [
            0xAAAA_AAAA_AAAA_AAAA,
            0xCCCC_CCCC_CCCC_CCCC,
            0xF0F0_F0F0_F0F0_F0F0,
            0xFF00_FF00_FF00_FF00,
            0xFFFF_0000_FFFF_0000,
            0xFFFF_FFFF_0000_0000,
        ];
        (0..self.words)
            .map(|w| {
                let word = if i < 6 {
                    PATTERNS[i]
                } else if (w >> (i - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                };
                word & self.tail_mask
            })
            .collect()
    }

    fn eval(&self, f: &Formula) -> Vec<u64> {
        let mask = self.tail_mask;
        match f {
            Formula::Atom(a) => {
                let i = self.universe.binary_search(a).expect("atom outside universe");
                self.atom_column(i)
            }
            Formula::Bottom => vec![0; self.words],
            Formula::Top => vec![mask; self.words],
            Formula::Not(x) => self.eval(x).into_iter().map(|w| !w & mask).collect(),
            Formula::And(x, y) => zip_with(self.eval(x), &self.eval(y), |a, b| a & b),
            Formula::Or(x, y) => zip_with(self.eval(x), &self.eval(y), |a, b| a | b),
            Formula::Implies(x, y) => zip_with(self.eval(x), &self.eval(y), |a, b| (!a | b) & mask),
        }
    }

    fn conjunction<'a, I: IntoIterator<Item = &'a Formula>>(&self, fs: I) -> Vec<u64> {
        let mut acc = vec![self.tail_mask; self.words];
        for f in fs {
            acc = zip_with(acc, &self.eval(f), |a, b| a & b);
        }
        acc
    }

    fn disjunction<'a, I: IntoIterator<Item = &'a Formula>>(&self, fs: I) -> Vec<u64> {
        let mut acc = vec![0; self.words];
        for f in fs {
            acc = zip_with(acc, &self.eval(f), |a, b| a | b);
        }
        acc
    }

    fn model(&self, mask: u32) -> Model {
        Model::new(
            self.universe
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, a)| a.clone()),
        )
    }
}

fn zip_with(mut a: Vec<u64>, b: &[u64], op: impl Fn(u64, u64) -> u64) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x = op(*x, *y);
    }
    a
}

fn bit(table: &[u64], mask: u32) -> bool {
    table[(mask >> 6) as usize] >> (mask & 63) & 1 == 1
}

fn check_size(n: usize) -> Result<(), OracleError> {
    if n > MAX_ORACLE_ATOMS {
        Err(OracleError::TooManyAtoms { count: n })
    } else {
        Ok(())
    }
}

/// Masks of the subset-minimal satisfying assignments, in order of
/// cardinality and then numeric value.
fn minimal_masks(n: usize, sat: &[u64]) -> Vec<u32> {
    let mut found: Vec<u32> = Vec::new();
    for k in 0..=n as u32 {
        for m in masks_with_popcount(n as u32, k) {
            if bit(sat, m) && !found.iter().any(|&f| f & !m == 0) {
                found.push(m);
            }
        }
    }
    found
}

/// All `n`-bit masks with exactly `k` bits set, increasing.
fn masks_with_popcount(n: u32, k: u32) -> impl Iterator<Item = u32> {
    let limit: u64 = 1 << n;
    let first: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first).filter(|&m| m < limit);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Next integer with the same popcount.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            Some(succ).filter(|&m| m < limit)
        };
        Some(cur as u32)
    })
}

/// All subset-minimal models of `gamma` within `universe`.
pub fn minimal_models(gamma: &BTreeSet<Formula>, universe: &BTreeSet<Atom>) -> Result<Vec<Model>, OracleError> {
    check_size(universe.len())?;
    if let Some(a) = vars(gamma).into_iter().find(|a| !universe.contains(a)) {
        return Err(OracleError::UniverseTooSmall(a));
    }
    let table = Table::new(universe.iter().cloned().collect());
    let sat = table.conjunction(gamma);
    Ok(minimal_masks(universe.len(), &sat)
        .into_iter()
        .map(|m| table.model(m))
        .collect())
}

/// Truth of a sequent: over all models (classical) or over the minimal models
/// of the antecedent (minimal), with the universe being the sequent's atoms.
pub fn holds(s: &Sequent) -> Result<bool, OracleError> {
    let universe: Vec<Atom> = s.vars().into_iter().collect();
    check_size(universe.len())?;
    let n = universe.len();
    let table = Table::new(universe);
    let ant = table.conjunction(&s.antecedent);
    let succ = table.disjunction(&s.succedent);
    Ok(match s.kind {
        SequentKind::Classical => ant.iter().zip(&succ).all(|(a, b)| a & !b == 0),
        SequentKind::Minimal => minimal_masks(n, &ant).into_iter().all(|m| bit(&succ, m)),
    })
}
