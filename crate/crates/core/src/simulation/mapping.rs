use std::collections::BTreeMap;

use crate::syntax::{subformulas, Atom, AtomSet, Formula, FormulaSet, Sequent};

use super::SimError;

/// An injective map from the subformulas of a set to atoms, fixing atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicMapping {
    forward: BTreeMap<Formula, Atom>,
    inverse: BTreeMap<Atom, Formula>,
    scope: FormulaSet,
}

/// The mapping on the subformulas of `sigma`; compound `A` goes to `@(A)`.
pub fn atomic_mapping(sigma: &FormulaSet) -> AtomicMapping {
    let scope = subformulas(sigma);
    let forward: BTreeMap<Formula, Atom> = scope.iter().map(|f| (f.clone(), Atom::mapped(f))).collect();
    let inverse = forward.iter().map(|(f, a)| (a.clone(), f.clone())).collect();
    AtomicMapping {
        forward,
        inverse,
        scope,
    }
}

impl AtomicMapping {
    pub fn scope(&self) -> &FormulaSet {
        &self.scope
    }

    pub fn get(&self, f: &Formula) -> Option<&Atom> {
        self.forward.get(f)
    }

    pub fn apply(&self, f: &Formula) -> Result<Atom, SimError> {
        self.forward
            .get(f)
            .cloned()
            .ok_or_else(|| SimError::Scope(format!("{f} is outside the mapped subformulas")))
    }

    pub fn apply_set(&self, set: &FormulaSet) -> Result<AtomSet, SimError> {
        set.iter().map(|f| self.apply(f)).collect()
    }

    pub fn inverse(&self, a: &Atom) -> Option<&Formula> {
        self.inverse.get(a)
    }

    pub fn invert_set(&self, set: &AtomSet) -> Result<FormulaSet, SimError> {
        set.iter()
            .map(|a| {
                self.inverse
                    .get(a)
                    .cloned()
                    .ok_or_else(|| SimError::Scope(format!("atom {a} is not in the mapping's image")))
            })
            .collect()
    }

    pub fn invert_sequent(&self, s: &crate::syntax::AtomicSequent) -> Result<Sequent, SimError> {
        Ok(Sequent::new(self.invert_set(&s.left)?, self.invert_set(&s.right)?))
    }

    pub fn covers(&self, set: &FormulaSet) -> bool {
        set.iter().all(|f| self.scope.contains(f))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Formula, &Atom)> {
        self.forward.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{atom, parse_formula};

    fn set(items: &[&str]) -> FormulaSet {
        items.iter().map(|s| parse_formula(s).unwrap()).collect()
    }

    #[test]
    fn atoms_are_fixed_and_compounds_fresh() {
        let m = atomic_mapping(&set(&["q"]));
        assert_eq!(m.apply(&parse_formula("q").unwrap()).unwrap(), atom("q"));
        let m = atomic_mapping(&set(&["q & r"]));
        let qr = m.apply(&parse_formula("q & r").unwrap()).unwrap();
        assert_eq!(qr.name(), "@(q & r)");
        assert_ne!(qr, atom("q"));
        assert_ne!(qr, atom("r"));
        assert_eq!(m.scope().len(), 3);
        for (f, a) in m.pairs() {
            assert_eq!(m.inverse(a), Some(f));
        }
        assert!(m.apply(&parse_formula("p").unwrap()).is_err());
    }
}
