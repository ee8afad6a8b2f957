//! Sequent families for exhaustive and randomized testing.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::sequent::Sequent;

/// Name of the generator behind [`random_sequents`], for run metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8Rng::seed_from_u64";

/// Every constant-free formula over `atoms` with nesting depth at most
/// `depth`, in generation order without duplicates.
pub fn formulas_up_to_depth(atoms: &[&str], depth: usize) -> Vec<Formula> {
    let mut level: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a)).collect();
    for _ in 0..depth {
        let mut next = level.clone();
        next.extend(level.iter().map(|f| Formula::not(f.clone())));
        for f in &level {
            for g in &level {
                next.push(Formula::and(f.clone(), g.clone()));
                next.push(Formula::or(f.clone(), g.clone()));
                next.push(Formula::implies(f.clone(), g.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        next.retain(|f| seen.insert(f.clone()));
        level = next;
    }
    level
}

/// Minimal sequents over atoms `a`, `b` with formula depth at most 2.
///
/// Three families, deduplicated and sorted: a deep antecedent against a
/// shallow succedent, a shallow antecedent against a deep succedent, and two
/// shallow antecedent formulas against a shallow succedent. Each side may
/// also be empty where that makes sense.
pub fn exhaustive_corpus() -> Vec<Sequent> {
    let f1 = formulas_up_to_depth(&["a", "b"], 1);
    let f2 = formulas_up_to_depth(&["a", "b"], 2);
    let optional = |fs: &[Formula]| -> Vec<Vec<Formula>> {
        std::iter::once(Vec::new()).chain(fs.iter().map(|f| vec![f.clone()])).collect()
    };
    let singles = |fs: &[Formula]| -> Vec<Vec<Formula>> { fs.iter().map(|f| vec![f.clone()]).collect() };
    let mut pairs = Vec::new();
    for (i, f) in f1.iter().enumerate() {
        for g in &f1[i + 1..] {
            pairs.push(vec![f.clone(), g.clone()]);
        }
    }
    let families = [
        (optional(&f2), optional(&f1)),
        (optional(&f1), singles(&f2)),
        (pairs, optional(&f1)),
    ];
    let mut out = BTreeSet::new();
    for (gammas, deltas) in &families {
        for g in gammas {
            for d in deltas {
                out.insert(Sequent::minimal(g.iter().cloned(), d.iter().cloned()));
            }
        }
    }
    out.into_iter().collect()
}

/// A random constant-free formula. Below the depth cap every node is an
/// atom or one of the four connectives with equal weight.
pub fn random_formula(rng: &mut impl Rng, atoms: usize, depth: usize) -> Formula {
    let atom = |rng: &mut dyn rand::RngCore| Formula::atom(&format!("p{}", rng.gen_range(1..=atoms)));
    if depth == 0 {
        return atom(rng);
    }
    match rng.gen_range(0..5) {
        0 => atom(rng),
        1 => Formula::not(random_formula(rng, atoms, depth - 1)),
        k => {
            let l = random_formula(rng, atoms, depth - 1);
            let r = random_formula(rng, atoms, depth - 1);
            match k {
                2 => Formula::and(l, r),
                3 => Formula::or(l, r),
                _ => Formula::implies(l, r),
            }
        }
    }
}

/// `count` random minimal sequents with up to two formulas per side,
/// reproducible from `seed`.
pub fn random_sequents(seed: u64, count: usize, atoms: usize, depth: usize) -> Vec<Sequent> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let ng = rng.gen_range(0..=2);
            let gamma: Vec<Formula> = (0..ng).map(|_| random_formula(&mut rng, atoms, depth)).collect();
            let nd = rng.gen_range(0..=2);
            let delta: Vec<Formula> = (0..nd).map(|_| random_formula(&mut rng, atoms, depth)).collect();
            Sequent::minimal(gamma, delta)
        })
        .collect()
}
