//! Recursive-descent parser for formulas and sequents.
//!
//! ```text
//! formula := imp
//! imp     := or ("->" imp)?
//! or      := and ("|" or)?
//! and     := unit ("&" and)?
//! unit    := atom | "bot" | "~" unit | "(" formula ")"
//! atom    := [A-Za-z_][A-Za-z0-9_']*
//! sequent := list "=>" list
//! list    := (formula ("," formula)*)?
//! ```
//!
//! Atomic sequents additionally accept `@(A)`, the mapped atom of `A`.

use thiserror::Error;

use super::atom::Atom;
use super::formula::{AtomSet, Formula};
use super::sequent::{AtomicSequent, Sequent};

/// Formulas of one side with their byte offsets.
type Side = Vec<(usize, Formula)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {position}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            message: message.into(),
        }
    }

    fn shifted(mut self, by: usize) -> ParseError {
        self.position += by;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Mapped(Atom),
    Bot,
    Not,
    And,
    Or,
    Arrow,
    Turn,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str, allow_mapped: bool) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'&' => out.push((start, Tok::And)),
            b'|' => out.push((start, Tok::Or)),
            b'~' => out.push((start, Tok::Not)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b',' => out.push((start, Tok::Comma)),
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((start, Tok::Arrow));
                i += 1;
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((start, Tok::Turn));
                i += 1;
            }
            b'@' => {
                if !allow_mapped {
                    return Err(ParseError::new(start, "reserved '@' prefix in a user atom"));
                }
                if bytes.get(i + 1) != Some(&b'(') {
                    return Err(ParseError::new(start, "expected '(' after '@'"));
                }
                let mut depth = 0usize;
                let mut j = i + 1;
                loop {
                    match bytes.get(j) {
                        None => return Err(ParseError::new(start, "unclosed mapped atom")),
                        Some(b'(') => depth += 1,
                        Some(b')') => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    j += 1;
                }
                let inner = &text[i + 2..j];
                let source =
                    parse_formula_internal(inner, true).map_err(|e| e.shifted(i + 2))?;
                out.push((start, Tok::Mapped(Atom::mapped(&source))));
                i = j;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b'\'')
                {
                    j += 1;
                }
                let word = &text[i..j];
                out.push((
                    start,
                    if word == "bot" {
                        Tok::Bot
                    } else {
                        Tok::Ident(word.to_string())
                    },
                ));
                i = j;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let right = self.formula()?;
            return Ok(Formula::imp(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let left = self.conjunction()?;
        if self.eat(&Tok::Or) {
            let right = self.disjunction()?;
            return Ok(Formula::or(left, right));
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let left = self.unit()?;
        if self.eat(&Tok::And) {
            let right = self.conjunction()?;
            return Ok(Formula::and(left, right));
        }
        Ok(left)
    }

    fn unit(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(Atom::from_trusted(&name)))
            }
            Some(Tok::Mapped(a)) => {
                self.pos += 1;
                Ok(Formula::Atom(a))
            }
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Formula::Bottom)
            }
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::negation(self.unit()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(ParseError::new(self.offset(), "expected ')'"));
                }
                Ok(f)
            }
            Some(t) => Err(ParseError::new(at, format!("expected a formula, found {}", describe(&t)))),
            None => Err(ParseError::new(at, "expected a formula, found end of input")),
        }
    }

    fn list(&mut self) -> Result<Side, ParseError> {
        let mut out = Vec::new();
        if matches!(self.peek(), None | Some(Tok::Turn)) {
            return Ok(out);
        }
        loop {
            let at = self.offset();
            out.push((at, self.formula()?));
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn sequent(&mut self) -> Result<(Side, Side), ParseError> {
        let left = self.list()?;
        if !self.eat(&Tok::Turn) {
            return Err(ParseError::new(self.offset(), "expected '=>'"));
        }
        let right = self.list()?;
        self.finish()?;
        Ok((left, right))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError::new(self.offset(), format!("unexpected {}", describe(t)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Mapped(a) => format!("'{a}'"),
        Tok::Bot => "'bot'".into(),
        Tok::Not => "'~'".into(),
        Tok::And => "'&'".into(),
        Tok::Or => "'|'".into(),
        Tok::Arrow => "'->'".into(),
        Tok::Turn => "'=>'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
    }
}

fn parser(text: &str, allow_mapped: bool) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: lex(text, allow_mapped)?,
        pos: 0,
        end: text.len(),
    })
}

pub(crate) fn parse_formula_internal(text: &str, allow_mapped: bool) -> Result<Formula, ParseError> {
    let mut p = parser(text, allow_mapped)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub(crate) fn parse_sequent_internal(text: &str, allow_mapped: bool) -> Result<Sequent, ParseError> {
    let (left, right) = parser(text, allow_mapped)?.sequent()?;
    let set = |xs: Vec<(usize, Formula)>| xs.into_iter().map(|(_, f)| f).collect();
    Ok(Sequent::new(set(left), set(right)))
}

/// Parses a formula in the user language (no mapped atoms).
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    parse_formula_internal(text, false)
}

/// Parses `Γ => Δ`; duplicate formulas collapse.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    parse_sequent_internal(text, false)
}

/// Parses a comma-separated formula list (possibly empty).
pub fn parse_formula_list(text: &str) -> Result<Vec<Formula>, ParseError> {
    let mut p = parser(text, false)?;
    let list = p.list()?;
    p.finish()?;
    Ok(list.into_iter().map(|(_, f)| f).collect())
}

/// Parses an atomic sequent. Mapped atoms may be written `@(A)`.
pub fn parse_atomic_sequent(text: &str) -> Result<AtomicSequent, ParseError> {
    let (left, right) = parser(text, true)?.sequent()?;
    let atoms = |xs: Vec<(usize, Formula)>| -> Result<AtomSet, ParseError> {
        xs.into_iter()
            .map(|(at, f)| match f {
                Formula::Atom(a) => Ok(a),
                other => Err(ParseError::new(at, format!("'{other}' is not an atom"))),
            })
            .collect()
    };
    Ok(AtomicSequent::new(atoms(left)?, atoms(right)?))
}

/// Parses a sequent that may mention mapped atoms.
pub fn parse_sequent_with_mapped(text: &str) -> Result<Sequent, ParseError> {
    parse_sequent_internal(text, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Formula {
        Formula::Atom(Atom::new(s).unwrap())
    }

    #[test]
    fn precedence_and_associativity() {
        let (p, q, r) = (atom("p"), atom("q"), atom("r"));
        assert_eq!(
            parse_formula("p & q -> r").unwrap(),
            Formula::imp(Formula::and(p.clone(), q.clone()), r.clone())
        );
        assert_eq!(
            parse_formula("p | q | r").unwrap(),
            Formula::or(p.clone(), Formula::or(q.clone(), r.clone()))
        );
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            Formula::imp(p.clone(), Formula::imp(q.clone(), r.clone()))
        );
        assert_eq!(
            parse_formula("p | q & r").unwrap(),
            Formula::or(p.clone(), Formula::and(q, r))
        );
        assert_eq!(parse_formula("bot").unwrap(), Formula::Bottom);
        assert_eq!(parse_formula("~p").unwrap(), Formula::imp(p, Formula::Bottom));
    }

    #[test]
    fn sequents_collapse_duplicates() {
        let s = parse_sequent("p, p => q").unwrap();
        assert_eq!(s.left.len(), 1);
        assert_eq!(s.right.len(), 1);
        let s = parse_sequent("=> p -> p").unwrap();
        assert!(s.left.is_empty());
        assert_eq!(s.right.iter().next().unwrap(), &parse_formula("p -> p").unwrap());
        let s = parse_sequent("p & q => q, r").unwrap();
        assert_eq!(s.left, [parse_formula("p & q").unwrap()].into_iter().collect());
        assert_eq!(s.right, [atom("q"), atom("r")].into_iter().collect());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_formula("p & ").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_formula("p $ q").unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse_formula("(p & q").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(parse_sequent("p, q").is_err());
        assert!(parse_sequent("p => q => r").is_err());
    }

    #[test]
    fn reserved_prefix_rejected_for_user_atoms() {
        let e = parse_formula("@foo").unwrap_err();
        assert!(e.message.contains("reserved"));
        assert!(parse_sequent("@(p & q) => p").is_err());
    }

    #[test]
    fn mapped_atoms_in_atomic_sequents() {
        let s = parse_atomic_sequent("@(q & r) => q").unwrap();
        let m = s.left.iter().next().unwrap();
        assert_eq!(m.name(), "@(q & r)");
        // spacing and redundant parentheses are canonicalised
        let t = parse_atomic_sequent("@( (q&r) ) => q").unwrap();
        assert_eq!(s, t);
        // @(p) is p itself
        let u = parse_atomic_sequent("@(p) =>").unwrap();
        assert_eq!(u.left.iter().next().unwrap().name(), "p");
        assert!(parse_atomic_sequent("p & q =>").is_err());
    }
}
