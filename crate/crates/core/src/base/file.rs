//! Text format for bases.
//!
//! ```text
//! closure: st
//! # p implies q, q implies r
//! |- => p
//! p => q |- p => r
//! p => q ; q => r |- p => r
//! ```
//!
//! Rules get ids `r1`, `r2`, ... in file order.

use thiserror::Error;

use crate::syntax::parse_atomic_sequent;

use super::{Base, Closure, GroundRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct BaseFileError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> BaseFileError {
    BaseFileError {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_base_file(text: &str) -> Result<Base, BaseFileError> {
    let mut closure = None;
    let mut rules = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("closure:") {
            if closure.is_some() {
                return Err(err(line, 1, "duplicate closure header"));
            }
            closure = Some(match rest.trim() {
                "st" | "ST" => Closure::ST,
                "hs" | "HS" => Closure::HS,
                other => return Err(err(line, 1, format!("unknown closure '{other}', expected st or hs"))),
            });
            continue;
        }
        let Some(turn) = raw.find("|-") else {
            return Err(err(line, 1, "expected '|-' between premises and conclusion"));
        };
        if raw[turn + 2..].contains("|-") {
            return Err(err(line, turn + 3, "more than one '|-'"));
        }
        let parse = |start: usize, piece: &str| {
            parse_atomic_sequent(piece).map_err(|e| err(line, start + e.position + 1, e.message))
        };
        let mut premises = Vec::new();
        if !raw[..turn].trim().is_empty() {
            let mut start = 0;
            for piece in raw[..turn].split(';') {
                premises.push(parse(start, piece)?);
                start += piece.len() + 1;
            }
        }
        let conclusion = parse(turn + 2, &raw[turn + 2..])?;
        rules.push(GroundRule::new(format!("r{}", rules.len() + 1), premises, conclusion));
    }
    let closure = closure.ok_or_else(|| err(1, 1, "missing 'closure: st' or 'closure: hs' header"))?;
    Base::new(rules, Vec::new(), closure).map_err(|e| err(1, 1, e.to_string()))
}

/// The base in file syntax. Schema rules, which the format cannot express,
/// are listed as comments.
pub fn render_base_file(base: &Base) -> String {
    let mut out = format!("closure: {}\n", base.closure());
    for s in base.schemas() {
        out.push_str(&format!("# schema {s}\n"));
    }
    for r in base.ground_rules() {
        out.push_str(&format!("{r}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_atomic_sequent;

    #[test]
    fn parses_rules_and_comments() {
        let text = "closure: st\n# a comment\n|- => p\n\np => q ; q => r |- p => r\n";
        let b = parse_base_file(text).unwrap();
        assert_eq!(b.closure(), Closure::ST);
        let rules = b.ground_rules();
        assert_eq!(rules.len(), 2);
        assert!(rules[0].is_axiom());
        assert_eq!(rules[1].id, "r2");
        assert_eq!(rules[1].premises.len(), 2);
        let again = parse_base_file(&render_base_file(&b)).unwrap();
        assert_eq!(again, b);
        assert!(b.derivable(&parse_atomic_sequent("=> p").unwrap()).unwrap());
    }

    #[test]
    fn reports_positions() {
        let e = parse_base_file("closure: hs\n|- p & q =>\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.column > 3, "{e}");
        let e = parse_base_file("|- => p\n").unwrap_err();
        assert!(e.message.contains("closure"));
        let e = parse_base_file("closure: xx\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_base_file("closure: st\np => q\n").unwrap_err();
        assert_eq!(e.line, 2);
    }
}
