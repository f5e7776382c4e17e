use std::fmt;

use crate::syntax::{parse_sequent_with_mapped, AtomSet, Formula, FormulaSet, ParseError};

/// `Γ ⊩ Δ`, evaluated against a base supplied separately.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Judgment {
    pub antecedents: FormulaSet,
    pub succedents: FormulaSet,
}

impl Judgment {
    pub fn new(antecedents: FormulaSet, succedents: FormulaSet) -> Judgment {
        Judgment {
            antecedents,
            succedents,
        }
    }

    pub fn categorical(succedents: FormulaSet) -> Judgment {
        Judgment::new(FormulaSet::new(), succedents)
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &FormulaSet| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        match (self.antecedents.is_empty(), self.succedents.is_empty()) {
            (true, true) => write!(f, "|="),
            (true, false) => write!(f, "|= {}", join(&self.succedents)),
            (false, true) => write!(f, "{} |=", join(&self.antecedents)),
            (false, false) => write!(f, "{} |= {}", join(&self.antecedents), join(&self.succedents)),
        }
    }
}

/// Parses `Γ |= Δ`.
pub fn parse_judgment(text: &str) -> Result<Judgment, ParseError> {
    if let Some(i) = text.find("=>") {
        return Err(ParseError::new(i, "expected '|=' between the two sides"));
    }
    let i = text
        .find("|=")
        .ok_or_else(|| ParseError::new(text.len(), "expected '|='"))?;
    if let Some(j) = text[i + 2..].find("|=") {
        return Err(ParseError::new(i + 2 + j, "second '|='"));
    }
    // "|=" and "=>" have the same width, so positions carry over
    let s = parse_sequent_with_mapped(&format!("{}=>{}", &text[..i], &text[i + 2..]))?;
    Ok(Judgment::new(s.left, s.right))
}

/// One conjunct of a normal form: `H ⊩ S` with `S` atomic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Obligation {
    pub hypotheses: FormulaSet,
    pub succedents: AtomSet,
}

impl Obligation {
    /// The hypotheses, if all of them are atoms.
    pub fn atomic_hypotheses(&self) -> Option<AtomSet> {
        self.hypotheses.iter().map(|f| f.as_atom().cloned()).collect()
    }
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h: Vec<String> = self.hypotheses.iter().map(|x| x.to_string()).collect();
        let s: Vec<String> = self.succedents.iter().map(|x| x.to_string()).collect();
        write!(f, "{} |= {}", h.join(", "), s.join(", "))
    }
}

/// A conjunction of obligations, in the order produced by unfolding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfNormalForm {
    pub obligations: Vec<Obligation>,
}

impl InfNormalForm {
    pub fn has_atomic_hypotheses(&self) -> bool {
        self.obligations.iter().all(|o| o.atomic_hypotheses().is_some())
    }
}

/// Applies the right-hand clauses until every succedent is atomic.
pub fn unfold(j: &Judgment) -> InfNormalForm {
    let mut out = Vec::new();
    let mut stack = vec![(j.antecedents.clone(), j.succedents.clone())];
    while let Some((hyps, succ)) = stack.pop() {
        let Some(f) = succ.iter().find(|f| !f.is_atom()).cloned() else {
            out.push(Obligation {
                hypotheses: hyps,
                succedents: succ.iter().filter_map(|f| f.as_atom().cloned()).collect(),
            });
            continue;
        };
        let mut rest = succ;
        rest.remove(&f);
        let with = |set: &FormulaSet, items: &[&Formula]| {
            let mut s = set.clone();
            s.extend(items.iter().map(|x| (*x).clone()));
            s
        };
        match &f {
            Formula::Bottom => stack.push((hyps, rest)),
            Formula::And(a, b) => {
                // pushed in reverse so the left conjunct comes out first
                stack.push((hyps.clone(), with(&rest, &[b])));
                stack.push((hyps, with(&rest, &[a])));
            }
            Formula::Or(a, b) => stack.push((hyps, with(&rest, &[a, b]))),
            Formula::Imp(a, b) => stack.push((with(&hyps, &[a]), with(&rest, &[b]))),
            Formula::Atom(_) => unreachable!("only compound formulas are unfolded"),
        }
    }
    InfNormalForm { obligations: out }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(text: &str) -> Vec<String> {
        unfold(&parse_judgment(text).unwrap())
            .obligations
            .iter()
            .map(|o| o.to_string())
            .collect()
    }

    #[test]
    fn clauses() {
        assert_eq!(nf("|= p & q"), [" |= p", " |= q"]);
        assert_eq!(nf("|= p | q, bot"), [" |= p, q"]);
        assert_eq!(nf("|= p -> q"), ["p |= q"]);
        assert_eq!(nf("r |= (p -> q) & s"), ["p, r |= q", "r |= s"]);
        assert_eq!(nf("|= bot"), [" |= "]);
    }

    #[test]
    fn parsing() {
        let j = parse_judgment("p, p |= q").unwrap();
        assert_eq!(j, parse_judgment("p |= q").unwrap());
        assert_eq!(j.to_string(), "p |= q");
        assert_eq!(parse_judgment("|=").unwrap().to_string(), "|=");
        assert!(parse_judgment("p => q").is_err());
        assert!(parse_judgment("p |= q |= r").is_err());
        assert_eq!(parse_judgment("p |= q &").unwrap_err().position, 8);
    }
}
