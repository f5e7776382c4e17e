use std::fmt;

use serde_json::{json, Value};

use crate::syntax::{atom_latex, AtomicSequent};
use crate::template::check_instance;

use super::rule::RuleRef;
use super::Base;

/// A derivation in an atomic base. Premise-free nodes are axioms with
/// weakening; all other nodes are rule applications with side contexts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AtomicDerivation {
    pub conclusion: AtomicSequent,
    pub rule: RuleRef,
    pub children: Vec<AtomicDerivation>,
}

impl AtomicDerivation {
    pub fn new(conclusion: AtomicSequent, rule: RuleRef, children: Vec<AtomicDerivation>) -> AtomicDerivation {
        AtomicDerivation {
            conclusion,
            rule,
            children,
        }
    }

    /// `axiom`, `mix` or `schema`.
    pub fn kind(&self) -> &'static str {
        match (&self.rule, self.children.is_empty()) {
            (RuleRef::Schema(_), _) => "schema",
            (_, true) => "axiom",
            (_, false) => "mix",
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(AtomicDerivation::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(AtomicDerivation::height).max().unwrap_or(0)
    }

    /// Number of nodes whose rule satisfies `pred`.
    pub fn count(&self, pred: &dyn Fn(&RuleRef) -> bool) -> usize {
        usize::from(pred(&self.rule)) + self.children.iter().map(|c| c.count(pred)).sum::<usize>()
    }

    /// Adds `extra` to the conclusion and along the leftmost branch.
    pub fn weaken(&mut self, extra: &AtomicSequent) {
        self.conclusion = self.conclusion.union(extra);
        if let Some(first) = self.children.first_mut() {
            first.weaken(extra);
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind(),
            "sequent": self.conclusion.to_string(),
            "rule": self.rule.to_string(),
            "children": self.children.iter().map(AtomicDerivation::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{}    [{}]\n", self.conclusion, self.rule));
        for c in &self.children {
            c.write_text(out, depth + 1);
        }
    }

    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{prooftree}\n");
        self.write_latex(&mut out);
        out.push_str("\\end{prooftree}\n");
        out
    }

    fn write_latex(&self, out: &mut String) {
        for c in &self.children {
            c.write_latex(out);
        }
        if self.children.is_empty() {
            out.push_str("\\AxiomC{}\n");
        }
        let inf = match self.children.len() {
            0 | 1 => "UnaryInfC",
            2 => "BinaryInfC",
            3 => "TrinaryInfC",
            4 => "QuaternaryInfC",
            _ => "QuinaryInfC",
        };
        let label = match &self.rule {
            RuleRef::Ground(id) => format!("\\texttt{{{}}}", id.replace('_', "\\_")),
            RuleRef::Init(a) => format!("$\\mathsf{{Ainit}}_{{{}}}$", atom_latex(a)),
            RuleRef::Cut(a) => format!("$\\mathsf{{Acut}}_{{{}}}$", atom_latex(a)),
            RuleRef::Schema(s) => s.tag.latex().to_string(),
        };
        out.push_str(&format!(
            "\\RightLabel{{\\scriptsize{{{label}}}}}\n\\{inf}{{${}$}}\n",
            self.conclusion.to_latex()
        ));
    }
}

impl fmt::Debug for AtomicDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Checks every node against the rules of `base`.
pub fn check_derivation(d: &AtomicDerivation, base: &Base) -> Result<(), String> {
    let (prem_t, concl_t) = base
        .shapes(&d.rule)
        .ok_or_else(|| format!("rule {} is not in the base", d.rule))?;
    let prems: Vec<_> = d
        .children
        .iter()
        .map(|c| (&c.conclusion.left, &c.conclusion.right))
        .collect();
    check_instance((&d.conclusion.left, &d.conclusion.right), &concl_t, &prems, &prem_t)
        .map_err(|(side, v)| format!("{} concluding '{}': {}", d.rule, d.conclusion, v.describe(side)))?;
    for c in &d.children {
        check_derivation(c, base)?;
    }
    Ok(())
}
