//! Seeded random and exhaustive generation of formulas, sequents and bases.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::base::{make_base, Base, Closure, GroundRule};
use crate::syntax::{atom, Atom, AtomSet, AtomicSequent, Connective, Formula, FormulaSet, Sequent};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p`, `q`, `r`, `s`, `t`, `u`, ... truncated to `n`.
pub fn atoms(n: usize) -> Vec<Atom> {
    const NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];
    assert!(n <= NAMES.len());
    NAMES[..n].iter().map(|s| atom(s)).collect()
}

const CONNECTIVES: [Connective; 3] = [Connective::And, Connective::Or, Connective::Imp];

/// A random formula with exactly `degree` connectives (`⊥` counts one).
pub fn formula_of_degree<R: Rng>(rng: &mut R, atoms: &[Atom], degree: usize) -> Formula {
    if degree == 0 {
        return Formula::Atom(atoms.choose(rng).expect("nonempty atoms").clone());
    }
    if degree == 1 && rng.gen_ratio(1, 7) {
        return Formula::Bottom;
    }
    let c = *CONNECTIVES.choose(rng).unwrap();
    let left = rng.gen_range(0..degree);
    Formula::binary(
        c,
        formula_of_degree(rng, atoms, left),
        formula_of_degree(rng, atoms, degree - 1 - left),
    )
}

pub fn formula<R: Rng>(rng: &mut R, atoms: &[Atom], max_degree: usize) -> Formula {
    let d = rng.gen_range(0..=max_degree);
    formula_of_degree(rng, atoms, d)
}

/// A random sequent with at most `per_side` formulas on each side and total
/// degree at most `max_degree`.
pub fn sequent<R: Rng>(rng: &mut R, atoms: &[Atom], max_degree: usize, per_side: usize) -> Sequent {
    let nl = rng.gen_range(0..=per_side);
    let nr = rng.gen_range(usize::from(nl == 0).min(per_side)..=per_side);
    let n = nl + nr;
    let total = rng.gen_range(0..=max_degree);
    let mut budget = vec![0usize; n];
    for _ in 0..total {
        if n > 0 {
            budget[rng.gen_range(0..n)] += 1;
        }
    }
    let mut fs = budget.iter().map(|&d| formula_of_degree(rng, atoms, d));
    let left: FormulaSet = fs.by_ref().take(nl).collect();
    let right: FormulaSet = fs.collect();
    Sequent::new(left, right)
}

/// A random subset of `atoms` with at most `max` members.
pub fn atom_subset<R: Rng>(rng: &mut R, atoms: &[Atom], max: usize) -> AtomSet {
    let k = rng.gen_range(0..=max.min(atoms.len()));
    atoms.choose_multiple(rng, k).cloned().collect()
}

pub fn atomic_sequent<R: Rng>(rng: &mut R, atoms: &[Atom], per_side: usize) -> AtomicSequent {
    AtomicSequent::new(atom_subset(rng, atoms, per_side), atom_subset(rng, atoms, per_side))
}

/// A random ground rule with up to two premises.
pub fn ground_rule<R: Rng>(rng: &mut R, id: String, atoms: &[Atom]) -> GroundRule {
    let premises = match rng.gen_range(0..10) {
        0..=4 => 0,
        5..=8 => 1,
        _ => 2,
    };
    GroundRule::new(
        id,
        (0..premises).map(|_| atomic_sequent(rng, atoms, 2)).collect(),
        atomic_sequent(rng, atoms, 2),
    )
}

pub fn ground_rules<R: Rng>(rng: &mut R, prefix: &str, atoms: &[Atom], max_rules: usize) -> Vec<GroundRule> {
    let n = rng.gen_range(0..=max_rules);
    (1..=n).map(|i| ground_rule(rng, format!("{prefix}{i}"), atoms)).collect()
}

pub fn base<R: Rng>(rng: &mut R, atoms: &[Atom], max_rules: usize, closure: Closure) -> Base {
    make_base(ground_rules(rng, "r", atoms, max_rules), closure).expect("generated rules are atomic with fresh ids")
}

/// Every formula over `atoms` (and `⊥` if `bot`) with exactly `degree` connectives.
pub fn all_formulas(atoms: &[Atom], bot: bool, degree: usize) -> Vec<Formula> {
    let mut by_degree: Vec<Vec<Formula>> = vec![atoms.iter().cloned().map(Formula::Atom).collect()];
    for d in 1..=degree {
        let mut layer = Vec::new();
        if d == 1 && bot {
            layer.push(Formula::Bottom);
        }
        for c in CONNECTIVES {
            for l in 0..d {
                for a in &by_degree[l] {
                    for b in &by_degree[d - 1 - l] {
                        layer.push(Formula::binary(c, a.clone(), b.clone()));
                    }
                }
            }
        }
        by_degree.push(layer);
    }
    by_degree.swap_remove(degree)
}

/// Every sequent with at most `per_side` formulas per side and total
/// degree at most `max_degree`, each exactly once.
pub fn all_sequents(atoms: &[Atom], bot: bool, max_degree: usize, per_side: usize) -> Vec<Sequent> {
    let pool: Vec<(Formula, usize)> = (0..=max_degree)
        .flat_map(|d| all_formulas(atoms, bot, d).into_iter().map(move |f| (f, d)))
        .collect();
    // sides as increasing index lists, so each set appears once
    let mut sides: Vec<(FormulaSet, usize)> = Vec::new();
    fn grow(
        pool: &[(Formula, usize)],
        start: usize,
        left: usize,
        budget: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<(FormulaSet, usize)>,
    ) {
        let deg: usize = cur.iter().map(|&i| pool[i].1).sum();
        out.push((cur.iter().map(|&i| pool[i].0.clone()).collect(), deg));
        if left == 0 {
            return;
        }
        for i in start..pool.len() {
            if deg + pool[i].1 <= budget {
                cur.push(i);
                grow(pool, i + 1, left - 1, budget, cur, out);
                cur.pop();
            }
        }
    }
    grow(&pool, 0, per_side, max_degree, &mut Vec::new(), &mut sides);
    let mut out = Vec::new();
    for (l, dl) in &sides {
        for (r, dr) in &sides {
            if dl + dr <= max_degree && !(l.is_empty() && r.is_empty()) {
                out.push(Sequent::new(l.clone(), r.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn formula_counts() {
        let a = atoms(2);
        assert_eq!(all_formulas(&a, true, 0).len(), 2);
        // ⊥ plus three connectives over four ordered atom pairs
        assert_eq!(all_formulas(&a, true, 1).len(), 13);
        assert_eq!(all_formulas(&a, true, 2).len(), 3 * 2 * 2 * 13);
        assert!(all_formulas(&a, false, 3).iter().all(|f| f.degree() == 3));
    }

    #[test]
    fn sequents_are_distinct_and_bounded() {
        let all = all_sequents(&atoms(2), true, 2, 2);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|s| s.degree() <= 2 && s.left.len() <= 2 && s.right.len() <= 2));
        let p = Formula::Atom(atom("p"));
        assert!(set.contains(&Sequent::new([p.clone()].into(), [p].into())));
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = atoms(4);
        let xs: Vec<Sequent> = (0..20).map(|_| sequent(&mut rng(7), &a, 5, 3)).collect();
        let ys: Vec<Sequent> = (0..20).map(|_| sequent(&mut rng(7), &a, 5, 3)).collect();
        assert_eq!(xs, ys);
        let mut r = rng(1);
        for _ in 0..200 {
            let s = sequent(&mut r, &a, 5, 3);
            assert!(s.degree() <= 5);
            assert!(!(s.left.is_empty() && s.right.is_empty()));
        }
    }
}
