//! Propositional formulas, signed formulas and the alpha/beta classification
//! used by the tableau engine.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// A propositional variable.
///
/// Names follow the grammar `[a-z][a-z0-9_]*`; the parser enforces it and
/// [`Atom::new`] panics on anything else.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Atom {
        assert!(is_atom_name(name), "invalid atom name {name:?}");
        Atom(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    if name == "bot" || name == "top" {
        return false;
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A propositional formula over atoms, the constants, and the four
/// connectives.
///
/// The derived ordering is the canonical total order used for every set of
/// formulas in the crate, so iteration and printing are deterministic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(Atom),
    Bottom,
    Top,
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Implies(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Arc::new(l), Arc::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Arc::new(l), Arc::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Arc::new(l), Arc::new(r))
    }

    /// Left-associated conjunction; `top` for an empty input and the formula
    /// itself for a singleton.
    pub fn conj<I: IntoIterator<Item = Formula>>(fs: I) -> Formula {
        fs.into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-associated disjunction; `bot` for an empty input.
    pub fn disj<I: IntoIterator<Item = Formula>>(fs: I) -> Formula {
        fs.into_iter().reduce(Formula::or).unwrap_or(Formula::Bottom)
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Formula::Atom(a) => Some(a),
            _ => None,
        }
    }

    /// Number of symbols: one per atom, constant and connective.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => 1,
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom | Formula::Top => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn has_constant(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Bottom | Formula::Top => true,
            Formula::Not(a) => a.has_constant(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.has_constant() || b.has_constant()
            }
        }
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Bottom | Formula::Top => {}
            Formula::Not(a) => a.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_polarity(&self, positive: bool, pos: &mut BTreeSet<Atom>, neg: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                if positive {
                    pos.insert(a.clone());
                } else {
                    neg.insert(a.clone());
                }
            }
            Formula::Bottom | Formula::Top => {}
            Formula::Not(a) => a.collect_polarity(!positive, pos, neg),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_polarity(positive, pos, neg);
                b.collect_polarity(positive, pos, neg);
            }
            Formula::Implies(a, b) => {
                a.collect_polarity(!positive, pos, neg);
                b.collect_polarity(positive, pos, neg);
            }
        }
    }
}

/// Atoms with at least one positive occurrence in `f`. Polarity flips under
/// negation and in the antecedent of an implication.
pub fn positive_atoms(f: &Formula) -> BTreeSet<Atom> {
    let (mut pos, mut neg) = (BTreeSet::new(), BTreeSet::new());
    f.collect_polarity(true, &mut pos, &mut neg);
    pos
}

/// Atoms with at least one negative occurrence in `f`.
pub fn negative_atoms(f: &Formula) -> BTreeSet<Atom> {
    let (mut pos, mut neg) = (BTreeSet::new(), BTreeSet::new());
    f.collect_polarity(true, &mut pos, &mut neg);
    neg
}

/// All atoms occurring in any of the formulas.
pub fn vars<'a, I: IntoIterator<Item = &'a Formula>>(fs: I) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    for f in fs {
        f.collect_atoms(&mut out);
    }
    out
}

// Binding strength used by the printer: implication binds weakest.
const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

impl Formula {
    fn write_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let (own, parens) = match self {
            Formula::Implies(..) => (PREC_IMP, ctx > PREC_IMP),
            Formula::Or(..) => (PREC_OR, ctx > PREC_OR),
            Formula::And(..) => (PREC_AND, ctx > PREC_AND),
            _ => (PREC_UNARY, false),
        };
        if parens {
            f.write_str("(")?;
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}")?,
            Formula::Bottom => f.write_str("bot")?,
            Formula::Top => f.write_str("top")?,
            Formula::Not(a) => {
                f.write_str("~")?;
                a.write_prec(f, PREC_UNARY)?;
            }
            Formula::Implies(a, b) => {
                a.write_prec(f, own + 1)?;
                f.write_str(" -> ")?;
                b.write_prec(f, own)?;
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                let op = if own == PREC_OR { " | " } else { " & " };
                a.write_prec(f, own)?;
                f.write_str(op)?;
                b.write_prec(f, own + 1)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    T,
    F,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::T => "T",
            Sign::F => "F",
        })
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedFormula {
    pub sign: Sign,
    pub formula: Formula,
}

impl SignedFormula {
    pub fn t(formula: Formula) -> SignedFormula {
        SignedFormula { sign: Sign::T, formula }
    }

    pub fn f(formula: Formula) -> SignedFormula {
        SignedFormula { sign: Sign::F, formula }
    }

    pub fn classify(&self) -> Classification {
        classify(self)
    }
}

impl fmt::Display for SignedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.sign, self.formula)
    }
}

impl fmt::Debug for SignedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// How a signed formula expands in a tableau.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    /// Both components go on the same branch.
    Alpha(SignedFormula, SignedFormula),
    /// The branch splits, one component per side.
    Beta(SignedFormula, SignedFormula),
    /// Signed atoms, negated atoms, constants and negated constants.
    Literal,
}

pub fn classify(sf: &SignedFormula) -> Classification {
    use Classification::{Alpha, Beta, Literal};
    use Formula as Fm;
    let t = |f: &Arc<Formula>| SignedFormula::t((**f).clone());
    let f = |f: &Arc<Formula>| SignedFormula::f((**f).clone());
    let tn = |x: &Arc<Formula>| SignedFormula::t(Formula::not((**x).clone()));
    let fnot = |x: &Arc<Formula>| SignedFormula::f(Formula::not((**x).clone()));
    match (sf.sign, &sf.formula) {
        (Sign::T, Fm::And(a, b)) => Alpha(t(a), t(b)),
        (Sign::F, Fm::Or(a, b)) => Alpha(f(a), f(b)),
        (Sign::F, Fm::Implies(a, b)) => Alpha(fnot(a), f(b)),
        (Sign::T, Fm::Or(a, b)) => Beta(t(a), t(b)),
        (Sign::F, Fm::And(a, b)) => Beta(f(a), f(b)),
        (Sign::T, Fm::Implies(a, b)) => Beta(tn(a), t(b)),
        (sign, Fm::Not(inner)) => match (sign, &**inner) {
            (Sign::T, Fm::Not(a)) => Alpha(t(a), t(a)),
            (Sign::F, Fm::Not(a)) => Alpha(f(a), f(a)),
            (Sign::F, Fm::And(a, b)) => Alpha(fnot(a), fnot(b)),
            (Sign::T, Fm::Or(a, b)) => Alpha(tn(a), tn(b)),
            (Sign::T, Fm::Implies(a, b)) => Alpha(t(a), tn(b)),
            (Sign::F, Fm::Or(a, b)) => Beta(fnot(a), fnot(b)),
            (Sign::T, Fm::And(a, b)) => Beta(tn(a), tn(b)),
            (Sign::F, Fm::Implies(a, b)) => Beta(f(a), fnot(b)),
            _ => Literal,
        },
        _ => Literal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("a")
    }
    fn b() -> Formula {
        Formula::atom("b")
    }

    fn atoms(names: &[&str]) -> BTreeSet<Atom> {
        names.iter().map(|n| Atom::new(n)).collect()
    }

    #[test]
    fn classification_table() {
        use Classification::*;
        let (na, nb) = (Formula::not(a()), Formula::not(b()));
        let neg = Formula::not;
        let rows: Vec<(SignedFormula, Classification)> = vec![
            (SignedFormula::t(Formula::and(a(), b())), Alpha(SignedFormula::t(a()), SignedFormula::t(b()))),
            (SignedFormula::f(neg(Formula::and(a(), b()))), Alpha(SignedFormula::f(na.clone()), SignedFormula::f(nb.clone()))),
            (SignedFormula::t(neg(Formula::or(a(), b()))), Alpha(SignedFormula::t(na.clone()), SignedFormula::t(nb.clone()))),
            (SignedFormula::f(Formula::or(a(), b())), Alpha(SignedFormula::f(a()), SignedFormula::f(b()))),
            (SignedFormula::t(neg(Formula::implies(a(), b()))), Alpha(SignedFormula::t(a()), SignedFormula::t(nb.clone()))),
            (SignedFormula::f(Formula::implies(a(), b())), Alpha(SignedFormula::f(na.clone()), SignedFormula::f(b()))),
            (SignedFormula::t(neg(na.clone())), Alpha(SignedFormula::t(a()), SignedFormula::t(a()))),
            (SignedFormula::f(neg(na.clone())), Alpha(SignedFormula::f(a()), SignedFormula::f(a()))),
            (SignedFormula::t(Formula::or(a(), b())), Beta(SignedFormula::t(a()), SignedFormula::t(b()))),
            (SignedFormula::f(neg(Formula::or(a(), b()))), Beta(SignedFormula::f(na.clone()), SignedFormula::f(nb.clone()))),
            (SignedFormula::t(neg(Formula::and(a(), b()))), Beta(SignedFormula::t(na.clone()), SignedFormula::t(nb.clone()))),
            (SignedFormula::f(Formula::and(a(), b())), Beta(SignedFormula::f(a()), SignedFormula::f(b()))),
            (SignedFormula::t(Formula::implies(a(), b())), Beta(SignedFormula::t(na.clone()), SignedFormula::t(b()))),
            (SignedFormula::f(neg(Formula::implies(a(), b()))), Beta(SignedFormula::f(a()), SignedFormula::f(nb.clone()))),
        ];
        assert_eq!(rows.len(), 14);
        for (sf, expected) in rows {
            assert_eq!(classify(&sf), expected, "{sf}");
        }
    }

    #[test]
    fn literals_do_not_expand() {
        for f in [a(), Formula::not(a()), Formula::Top, Formula::Bottom, Formula::not(Formula::Top)] {
            assert_eq!(classify(&SignedFormula::t(f.clone())), Classification::Literal);
            assert_eq!(classify(&SignedFormula::f(f)), Classification::Literal);
        }
    }

    #[test]
    fn polarity_examples() {
        assert_eq!(positive_atoms(&Formula::and(a(), Formula::not(b()))), atoms(&["a"]));
        assert_eq!(positive_atoms(&Formula::not(Formula::not(a()))), atoms(&["a"]));
        assert_eq!(positive_atoms(&Formula::implies(a(), b())), atoms(&["b"]));
        assert_eq!(negative_atoms(&Formula::implies(a(), b())), atoms(&["a"]));
    }

    #[test]
    fn vars_collects_all_atoms() {
        let c = Formula::atom("c");
        let fs = [Formula::or(a(), b()), Formula::not(c)];
        assert_eq!(vars(&fs), atoms(&["a", "b", "c"]));
        assert!(vars(&[] as &[Formula]).is_empty());
        assert!(vars(&[Formula::Bottom]).is_empty());
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        let f = Formula::implies(Formula::implies(a(), b()), Formula::or(a(), Formula::and(b(), a())));
        assert_eq!(f.to_string(), "(a -> b) -> a | b & a");
        let g = Formula::or(a(), Formula::or(b(), a()));
        assert_eq!(g.to_string(), "a | (b | a)");
        assert_eq!(Formula::not(Formula::and(a(), b())).to_string(), "~(a & b)");
    }

    #[test]
    fn conj_and_disj_fold_left() {
        assert_eq!(Formula::conj([]), Formula::Top);
        assert_eq!(Formula::conj([a()]), a());
        assert_eq!(Formula::conj([a(), b(), a()]), Formula::and(Formula::and(a(), b()), a()));
        assert_eq!(Formula::disj([]), Formula::Bottom);
    }
}
