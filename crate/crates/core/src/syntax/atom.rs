use std::fmt;
use std::sync::Arc;

use super::formula::Formula;
use super::parse::{parse_formula_internal, ParseError};

/// Reserved first character of atoms produced by an atomic mapping.
pub const MAPPED_PREFIX: char = '@';

/// Where an atom comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomOrigin {
    User,
    Mapped,
}

/// A propositional atom.
///
/// Atoms compare by name, so two atoms with the same name are the same atom.
/// User atoms are identifiers; mapped atoms are named `@(A)` after the
/// compound formula `A` they stand for.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    /// A user atom. The name must be an identifier `[A-Za-z_][A-Za-z0-9_']*`.
    pub fn new(name: &str) -> Result<Atom, ParseError> {
        if name.starts_with(MAPPED_PREFIX) {
            return Err(ParseError::new(0, "reserved '@' prefix in a user atom"));
        }
        if name == "bot" {
            return Err(ParseError::new(0, "'bot' is a keyword"));
        }
        if !is_identifier(name) {
            return Err(ParseError::new(0, format!("'{name}' is not an atom name")));
        }
        Ok(Atom(Arc::from(name)))
    }

    /// The proxy atom `p^A` for a compound formula. Atoms map to themselves.
    pub fn mapped(source: &Formula) -> Atom {
        match source {
            Formula::Atom(a) => a.clone(),
            other => Atom(Arc::from(format!("{MAPPED_PREFIX}({other})"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn origin(&self) -> AtomOrigin {
        if self.0.starts_with(MAPPED_PREFIX) {
            AtomOrigin::Mapped
        } else {
            AtomOrigin::User
        }
    }

    pub fn is_mapped(&self) -> bool {
        self.origin() == AtomOrigin::Mapped
    }

    /// For a mapped atom, the formula it was built from.
    pub fn source(&self) -> Option<Formula> {
        if !self.is_mapped() {
            return None;
        }
        let inner = &self.0[2..self.0.len() - 1];
        parse_formula_internal(inner, true).ok()
    }

    pub(crate) fn from_trusted(name: &str) -> Atom {
        Atom(Arc::from(name))
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn user_atoms_validate() {
        assert!(Atom::new("p").is_ok());
        assert!(Atom::new("p_1'").is_ok());
        assert!(Atom::new("1p").is_err());
        assert!(Atom::new("@p").is_err());
        assert!(Atom::new("").is_err());
    }

    #[test]
    fn mapped_atom_names_carry_their_source() {
        let f = parse_formula("q & r").unwrap();
        let a = Atom::mapped(&f);
        assert_eq!(a.name(), "@(q & r)");
        assert!(a.is_mapped());
        assert_eq!(a.source(), Some(f));
        let p = Atom::new("p").unwrap();
        assert_eq!(Atom::mapped(&Formula::Atom(p.clone())), p);
        assert_eq!(p.source(), None);
    }
}
