//! Reference derivability by brute force: every rule instance with every
//! choice of side contexts over a small universe, layer by layer, with no
//! subsumption. Exponential; meant for cross-checking tiny bases.

use crate::syntax::{Atom, AtomSet, AtomicSequent};
use crate::template::Shape;

use super::rule::{cut_shapes, init_shapes, RuleRef};
use super::Base;

/// Largest universe accepted.
pub const MAX_NAIVE_UNIVERSE: usize = 5;

/// Every derivable sequent over a universe, as a membership table.
#[derive(Debug, Clone)]
pub struct NaiveSet {
    universe: Vec<Atom>,
    derived: Vec<bool>,
}

impl NaiveSet {
    fn code(&self, s: &AtomicSequent) -> Option<usize> {
        let n = self.universe.len();
        let mut c = 0usize;
        for a in &s.left {
            c |= 1 << self.universe.binary_search(a).ok()?;
        }
        for a in &s.right {
            c |= 1 << (n + self.universe.binary_search(a).ok()?);
        }
        Some(c)
    }

    /// `None` when `s` mentions an atom outside the universe.
    pub fn derivable(&self, s: &AtomicSequent) -> Option<bool> {
        self.code(s).map(|c| self.derived[c])
    }

    pub fn universe(&self) -> &[Atom] {
        &self.universe
    }

    /// All derivable sequents.
    pub fn members(&self) -> Vec<AtomicSequent> {
        (0..self.derived.len())
            .filter(|&c| self.derived[c])
            .map(|c| self.decode(c))
            .collect()
    }

    fn decode(&self, c: usize) -> AtomicSequent {
        let n = self.universe.len();
        AtomicSequent::from_iters(
            (0..n).filter(|i| c >> i & 1 == 1).map(|i| self.universe[i].clone()),
            (0..n).filter(|i| c >> (n + i) & 1 == 1).map(|i| self.universe[i].clone()),
        )
    }
}

/// Derivable sequents of `base` over `extra` plus the atoms of its rules.
///
/// # Panics
/// If that universe has more than [`MAX_NAIVE_UNIVERSE`] atoms.
pub fn naive_derivable(base: &Base, extra: &AtomSet) -> NaiveSet {
    let mut atoms = base.atoms();
    atoms.extend(extra.iter().cloned());
    assert!(atoms.len() <= MAX_NAIVE_UNIVERSE, "universe too large for enumeration");
    let universe: Vec<Atom> = atoms.into_iter().collect();
    let n = universe.len();
    let total = 1usize << (2 * n);
    let mut set = NaiveSet {
        universe,
        derived: vec![false; total],
    };

    let mut rules: Vec<(Vec<Shape<Atom>>, Shape<Atom>)> = Vec::new();
    for a in set.universe.clone() {
        rules.push(init_shapes(&a));
        if base.closure().has_cut() {
            rules.push(cut_shapes(&a));
        }
    }
    for r in base.ground_rules() {
        rules.push(r.shapes());
    }
    for s in base.schemas() {
        rules.push(base.shapes(&RuleRef::Schema(s.clone())).expect("own schema"));
    }
    let encode = |s: &Shape<Atom>| {
        let seq = AtomicSequent::new(s.left.clone(), s.right.clone());
        set.code(&seq).expect("rule atoms are in the universe")
    };
    let rules: Vec<(Vec<usize>, usize)> = rules
        .iter()
        .map(|(p, c)| (p.iter().map(encode).collect(), encode(c)))
        .collect();

    loop {
        let current = set.derived.clone();
        let mut next = current.clone();
        for (prem, concl) in &rules {
            // contexts[i] ranges over every sequent; the premise is template ∪ context
            let mut stack = vec![(0usize, *concl)];
            while let Some((i, acc)) = stack.pop() {
                if i == prem.len() {
                    next[acc] = true;
                    continue;
                }
                for ctx in 0..total {
                    if current[prem[i] | ctx] {
                        stack.push((i + 1, acc | ctx));
                    }
                }
            }
            if prem.is_empty() {
                // axioms hold under any context
                for ctx in 0..total {
                    next[concl | ctx] = true;
                }
            }
        }
        if next == current {
            break;
        }
        set.derived = next;
    }
    set
}
