//! Formulas, sequents, and their concrete syntax.

mod atom;
mod formula;
mod parse;
mod sequent;

pub use atom::{Atom, AtomOrigin, MAPPED_PREFIX};
pub use formula::{set_atoms, set_degree, subformulas, AtomSet, Connective, Formula, FormulaSet};
pub use parse::{
    parse_atomic_sequent, parse_formula, parse_formula_list, parse_sequent,
    parse_sequent_with_mapped, ParseError,
};
pub use sequent::{AtomicSequent, Sequent};

pub(crate) use formula::atom_latex;

/// Shorthand for a user atom known to be well formed.
///
/// # Panics
/// If `name` is not an identifier.
pub fn atom(name: &str) -> Atom {
    Atom::new(name).expect("valid atom name")
}

/// Collects formulas into a [`FormulaSet`].
pub fn formula_set<I: IntoIterator<Item = Formula>>(items: I) -> FormulaSet {
    items.into_iter().collect()
}
