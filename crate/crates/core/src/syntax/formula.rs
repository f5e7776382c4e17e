use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::atom::Atom;

/// Duplicate-free formula collection with a deterministic iteration order.
pub type FormulaSet = BTreeSet<Formula>;
/// Duplicate-free atom collection with a deterministic iteration order.
pub type AtomSet = BTreeSet<Atom>;

/// A formula over atoms, `⊥`, `∧`, `∨` and `→`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    Bottom,
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

/// The binary connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Imp,
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    /// `A → ⊥`.
    pub fn negation(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bottom)
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Formula {
        match c {
            Connective::And => Formula::and(a, b),
            Connective::Or => Formula::or(a, b),
            Connective::Imp => Formula::imp(a, b),
        }
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Formula::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// The connective and both operands of a binary formula.
    pub fn as_binary(&self) -> Option<(Connective, &Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((Connective::And, a, b)),
            Formula::Or(a, b) => Some((Connective::Or, a, b)),
            Formula::Imp(a, b) => Some((Connective::Imp, a, b)),
            _ => None,
        }
    }

    /// Number of connective occurrences; `⊥` counts as one.
    pub fn degree(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Bottom => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                1 + a.degree() + b.degree()
            }
        }
    }

    pub fn atoms(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut AtomSet) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Bottom => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Classical truth value; `⊥` is always false.
    pub fn eval(&self, valuation: &dyn Fn(&Atom) -> bool) -> bool {
        match self {
            Formula::Atom(a) => valuation(a),
            Formula::Bottom => false,
            Formula::And(a, b) => a.eval(valuation) && b.eval(valuation),
            Formula::Or(a, b) => a.eval(valuation) || b.eval(valuation),
            Formula::Imp(a, b) => !a.eval(valuation) || b.eval(valuation),
        }
    }

    pub fn to_latex(&self) -> String {
        let mut s = String::new();
        self.write_latex(&mut s, 0);
        s
    }

    fn write_latex(&self, out: &mut String, ctx: u8) {
        match self {
            Formula::Atom(a) => out.push_str(&atom_latex(a)),
            Formula::Bottom => out.push_str("\\bot"),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                let (prec, op) = match self {
                    Formula::And(..) => (3, " \\land "),
                    Formula::Or(..) => (2, " \\lor "),
                    _ => (1, " \\to "),
                };
                if ctx > prec {
                    out.push('(');
                }
                a.write_latex(out, prec + 1);
                out.push_str(op);
                b.write_latex(out, prec);
                if ctx > prec {
                    out.push(')');
                }
            }
        }
    }

    fn write_text(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Bottom => f.write_str("bot"),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                // → binds loosest, ∧ tightest; all three associate to the right.
                let (prec, op) = match self {
                    Formula::And(..) => (3, " & "),
                    Formula::Or(..) => (2, " | "),
                    _ => (1, " -> "),
                };
                if ctx > prec {
                    f.write_str("(")?;
                }
                a.write_text(f, prec + 1)?;
                f.write_str(op)?;
                b.write_text(f, prec)?;
                if ctx > prec {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

pub(crate) fn atom_latex(a: &Atom) -> String {
    match a.source() {
        Some(src) => format!("p^{{{}}}", src.to_latex()),
        None => {
            let name = a.name().replace('_', "\\_");
            if name.chars().count() == 1 {
                name
            } else {
                format!("\\mathit{{{name}}}")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f, 0)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Formula {
        Formula::Atom(a)
    }
}

/// Sum of the degrees of the members.
pub fn set_degree(set: &FormulaSet) -> usize {
    set.iter().map(Formula::degree).sum()
}

/// Smallest superset of `set` closed under immediate subformulas.
pub fn subformulas(set: &FormulaSet) -> FormulaSet {
    let mut out = FormulaSet::new();
    let mut stack: Vec<&Formula> = set.iter().collect();
    while let Some(f) = stack.pop() {
        if out.insert(f.clone()) {
            if let Some((_, a, b)) = f.as_binary() {
                stack.push(a);
                stack.push(b);
            }
        }
    }
    out
}

pub fn set_atoms(set: &FormulaSet) -> AtomSet {
    let mut out = AtomSet::new();
    for f in set {
        f.collect_atoms(&mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn set(items: &[&str]) -> FormulaSet {
        items.iter().map(|s| f(s)).collect()
    }

    #[test]
    fn degree_counts_connectives() {
        assert_eq!(f("p").degree(), 0);
        assert_eq!(f("p & (q -> bot)").degree(), 3);
        assert_eq!(set_degree(&set(&["p", "p | q"])), 1);
        assert_eq!(f("bot").degree(), 1);
    }

    #[test]
    fn subformula_closure() {
        assert_eq!(subformulas(&set(&["q & r"])), set(&["q & r", "q", "r"]));
        assert_eq!(subformulas(&set(&["p"])), set(&["p"]));
        assert_eq!(
            subformulas(&set(&["p -> q | bot"])),
            set(&["p -> q | bot", "p", "q | bot", "q", "bot"])
        );
    }

    #[test]
    fn renders_with_minimal_parentheses() {
        assert_eq!(f("p & q -> r").to_string(), "p & q -> r");
        assert_eq!(f("(p -> q) -> r").to_string(), "(p -> q) -> r");
        assert_eq!(f("(p | q) | r").to_string(), "(p | q) | r");
        assert_eq!(f("p | q | r").to_string(), "p | q | r");
        assert_eq!(f("(p | q) & r").to_string(), "(p | q) & r");
        assert_eq!(Formula::Bottom.to_string(), "bot");
    }

    #[test]
    fn latex_rendering() {
        assert_eq!(f("p & q -> bot").to_latex(), "p \\land q \\to \\bot");
        let mapped = Formula::Atom(Atom::mapped(&f("q & r")));
        assert_eq!(mapped.to_latex(), "p^{q \\land r}");
    }
}
