use std::fmt;

use super::atom::Atom;
use super::formula::{atom_latex, set_atoms, AtomSet, Formula, FormulaSet};

/// A two-sided sequent `Γ ⇒ Δ` over sets of formulas.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Sequent {
    pub left: FormulaSet,
    pub right: FormulaSet,
}

impl Sequent {
    pub fn new(left: FormulaSet, right: FormulaSet) -> Sequent {
        Sequent { left, right }
    }

    pub fn atoms(&self) -> AtomSet {
        let mut out = set_atoms(&self.left);
        out.extend(set_atoms(&self.right));
        out
    }

    pub fn degree(&self) -> usize {
        self.left.iter().chain(&self.right).map(Formula::degree).sum()
    }

    /// `Some` iff both sides contain only atoms.
    pub fn to_atomic(&self) -> Option<AtomicSequent> {
        let side = |s: &FormulaSet| -> Option<AtomSet> {
            s.iter().map(|f| f.as_atom().cloned()).collect()
        };
        Some(AtomicSequent {
            left: side(&self.left)?,
            right: side(&self.right)?,
        })
    }

    pub fn to_latex(&self) -> String {
        let side = |s: &FormulaSet| {
            s.iter().map(Formula::to_latex).collect::<Vec<_>>().join(", ")
        };
        latex_arrow(&side(&self.left), &side(&self.right))
    }
}

fn latex_arrow(left: &str, right: &str) -> String {
    match (left.is_empty(), right.is_empty()) {
        (true, true) => "\\Rightarrow".to_string(),
        (true, false) => format!("\\Rightarrow {right}"),
        (false, true) => format!("{left} \\Rightarrow"),
        (false, false) => format!("{left} \\Rightarrow {right}"),
    }
}

fn write_arrow(f: &mut fmt::Formatter<'_>, left: Vec<String>, right: Vec<String>) -> fmt::Result {
    let (l, r) = (left.join(", "), right.join(", "));
    match (l.is_empty(), r.is_empty()) {
        (true, true) => f.write_str("=>"),
        (true, false) => write!(f, "=> {r}"),
        (false, true) => write!(f, "{l} =>"),
        (false, false) => write!(f, "{l} => {r}"),
    }
}

fn strings<T: fmt::Display>(items: impl Iterator<Item = T>) -> Vec<String> {
    items.map(|x| x.to_string()).collect()
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_arrow(f, strings(self.left.iter()), strings(self.right.iter()))
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A sequent whose sides are sets of atoms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AtomicSequent {
    pub left: AtomSet,
    pub right: AtomSet,
}

impl AtomicSequent {
    pub fn new(left: AtomSet, right: AtomSet) -> AtomicSequent {
        AtomicSequent { left, right }
    }

    pub fn from_iters<L, R>(left: L, right: R) -> AtomicSequent
    where
        L: IntoIterator<Item = Atom>,
        R: IntoIterator<Item = Atom>,
    {
        AtomicSequent {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        }
    }

    /// `⇒ Δ`
    pub fn categorical(right: AtomSet) -> AtomicSequent {
        AtomicSequent {
            left: AtomSet::new(),
            right,
        }
    }

    /// Componentwise inclusion: `self` is a weakening-predecessor of `other`.
    pub fn subsumes(&self, other: &AtomicSequent) -> bool {
        self.left.is_subset(&other.left) && self.right.is_subset(&other.right)
    }

    pub fn union(&self, other: &AtomicSequent) -> AtomicSequent {
        AtomicSequent {
            left: self.left.union(&other.left).cloned().collect(),
            right: self.right.union(&other.right).cloned().collect(),
        }
    }

    pub fn atoms(&self) -> AtomSet {
        self.left.union(&self.right).cloned().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    pub fn to_sequent(&self) -> Sequent {
        Sequent {
            left: self.left.iter().cloned().map(Formula::Atom).collect(),
            right: self.right.iter().cloned().map(Formula::Atom).collect(),
        }
    }

    pub fn to_latex(&self) -> String {
        let side = |s: &AtomSet| s.iter().map(atom_latex).collect::<Vec<_>>().join(", ");
        latex_arrow(&side(&self.left), &side(&self.right))
    }
}

impl fmt::Display for AtomicSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_arrow(f, strings(self.left.iter()), strings(self.right.iter()))
    }
}

impl fmt::Debug for AtomicSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse_atomic_sequent, parse_sequent};

    #[test]
    fn displays_both_sides() {
        assert_eq!(parse_sequent("p => q").unwrap().to_string(), "p => q");
        assert_eq!(parse_sequent("=> p -> p").unwrap().to_string(), "=> p -> p");
        assert_eq!(parse_sequent("p =>").unwrap().to_string(), "p =>");
        assert_eq!(parse_sequent("=>").unwrap().to_string(), "=>");
    }

    #[test]
    fn subsumption_is_componentwise() {
        let a = parse_atomic_sequent("p => q").unwrap();
        let b = parse_atomic_sequent("p, r => q, s").unwrap();
        assert!(a.subsumes(&b));
        assert!(!b.subsumes(&a));
        assert!(a.subsumes(&a));
        assert!(!parse_atomic_sequent("q => p").unwrap().subsumes(&b));
    }

    #[test]
    fn atomic_conversion() {
        assert!(parse_sequent("p & q => r").unwrap().to_atomic().is_none());
        let s = parse_sequent("p => r").unwrap().to_atomic().unwrap();
        assert_eq!(s.to_sequent().to_string(), "p => r");
    }
}
