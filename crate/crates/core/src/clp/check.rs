use std::fmt;

use thiserror::Error;

use super::proof::{Proof, RuleLabel};
use crate::syntax::{Connective, Formula, FormulaSet, Sequent};
use crate::template::{check_instance, Shape};

/// Which non-primitive rules a check admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckMode {
    pub allow_cut: bool,
    /// Admit the `Q*` placeholders as if they were rules.
    pub allow_q: bool,
}

impl CheckMode {
    pub const CUT_FREE: CheckMode = CheckMode {
        allow_cut: false,
        allow_q: false,
    };
    pub const WITH_CUT: CheckMode = CheckMode {
        allow_cut: true,
        allow_q: false,
    };
    pub const WITH_Q: CheckMode = CheckMode {
        allow_cut: true,
        allow_q: true,
    };
}

/// A rejected node: its position (premise indices from the root), sequent,
/// rule and the violated condition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct CheckError {
    pub path: Vec<usize>,
    pub sequent: Sequent,
    pub rule: RuleLabel,
    pub reason: String,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "node {:?} ({} concluding '{}'): {}",
            self.path, self.rule, self.sequent, self.reason
        )
    }
}

type Candidate = (Vec<Shape<Formula>>, Shape<Formula>);

fn one(f: &Formula) -> FormulaSet {
    FormulaSet::from([f.clone()])
}

fn left(items: &[&Formula]) -> Shape<Formula> {
    Shape::new(items.iter().map(|f| (*f).clone()), [])
}

fn right(items: &[&Formula]) -> Shape<Formula> {
    Shape::new([], items.iter().map(|f| (*f).clone()))
}

fn with_connective(set: &FormulaSet, c: Connective) -> impl Iterator<Item = (&Formula, &Formula, &Formula)> {
    set.iter().filter_map(move |f| match f.as_binary() {
        Some((k, a, b)) if k == c => Some((f, a, b)),
        _ => None,
    })
}

/// All rule templates matching `label` whose principal formula occurs where
/// the rule needs it. The checker accepts a node iff one of them fits.
fn candidates(label: RuleLabel, concl: &Sequent, premises: &[&Sequent]) -> Vec<Candidate> {
    use RuleLabel::*;
    let bot = Formula::Bottom;
    let mut out = Vec::new();
    match label {
        Init => {
            for f in concl.left.intersection(&concl.right) {
                out.push((vec![], Shape { left: one(f), right: one(f) }));
            }
        }
        LBot => {
            if concl.left.contains(&bot) {
                out.push((vec![], left(&[&bot])));
            }
        }
        RBot => out.push((vec![Shape::empty()], right(&[&bot]))),
        LAnd => {
            for (f, a, b) in with_connective(&concl.left, Connective::And) {
                out.push((vec![left(&[a, b])], left(&[f])));
            }
        }
        RAnd => {
            for (f, a, b) in with_connective(&concl.right, Connective::And) {
                out.push((vec![right(&[a]), right(&[b])], right(&[f])));
            }
        }
        LOr => {
            for (f, a, b) in with_connective(&concl.left, Connective::Or) {
                out.push((vec![left(&[a]), left(&[b])], left(&[f])));
            }
        }
        ROr => {
            for (f, a, b) in with_connective(&concl.right, Connective::Or) {
                out.push((vec![right(&[a, b])], right(&[f])));
            }
        }
        LImp => {
            for (f, a, b) in with_connective(&concl.left, Connective::Imp) {
                out.push((vec![right(&[a]), left(&[b])], left(&[f])));
            }
        }
        RImp => {
            for (f, a, b) in with_connective(&concl.right, Connective::Imp) {
                out.push((vec![Shape::new([a.clone()], [b.clone()])], right(&[f])));
            }
        }
        Cut => {
            if let [p1, p2] = premises {
                for a in p1.right.intersection(&p2.left) {
                    out.push((vec![right(&[a]), left(&[a])], Shape::empty()));
                }
            }
        }
        QAnd1 | QAnd2 => {
            if let Some(p) = premises.first() {
                for (f, a, b) in with_connective(&p.right, Connective::And) {
                    let c = if label == QAnd1 { a } else { b };
                    out.push((vec![right(&[f])], right(&[c])));
                }
            }
        }
        QOr => {
            if let Some(p) = premises.first() {
                for (f, a, b) in with_connective(&p.right, Connective::Or) {
                    out.push((vec![right(&[f])], right(&[a, b])));
                }
            }
        }
        QImp => {
            if let Some(p) = premises.first() {
                for (f, a, b) in with_connective(&p.right, Connective::Imp) {
                    out.push((vec![right(&[f]), right(&[a])], right(&[b])));
                }
            }
        }
        QBot => out.push((vec![right(&[&bot])], Shape::empty())),
    }
    out
}

/// Checks a single inference, ignoring the premises' own correctness.
pub fn check_node(
    label: RuleLabel,
    concl: &Sequent,
    premises: &[&Sequent],
    mode: CheckMode,
) -> Result<(), String> {
    if label == RuleLabel::Cut && !mode.allow_cut {
        return Err("cut is not permitted in this mode".into());
    }
    if label.is_q() && !mode.allow_q {
        return Err(format!("{label} is a placeholder, not a rule of the calculus"));
    }
    if premises.len() != label.arity() {
        return Err(format!(
            "expected {} premises, found {}",
            label.arity(),
            premises.len()
        ));
    }
    let cands = candidates(label, concl, premises);
    if cands.is_empty() {
        return Err("no formula of the required shape in position".into());
    }
    let prem: Vec<_> = premises.iter().map(|p| (&p.left, &p.right)).collect();
    let mut first_err = None;
    for (pt, ct) in &cands {
        match check_instance((&concl.left, &concl.right), ct, &prem, pt) {
            Ok(()) => return Ok(()),
            Err((side, v)) => {
                first_err.get_or_insert_with(|| v.describe(side));
            }
        }
    }
    Err(first_err.unwrap_or_default())
}

fn walk(p: &Proof, mode: CheckMode, path: &mut Vec<usize>) -> Result<(), CheckError> {
    let prems: Vec<&Sequent> = p.premises.iter().map(|q| &q.conclusion).collect();
    check_node(p.rule, &p.conclusion, &prems, mode).map_err(|reason| CheckError {
        path: path.clone(),
        sequent: p.conclusion.clone(),
        rule: p.rule,
        reason,
    })?;
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        walk(q, mode, path)?;
        path.pop();
    }
    Ok(())
}

/// Checks every node of `p`.
pub fn check_proof(p: &Proof, allow_cut: bool) -> Result<(), CheckError> {
    check_proof_with(
        p,
        CheckMode {
            allow_cut,
            allow_q: false,
        },
    )
}

pub fn check_proof_with(p: &Proof, mode: CheckMode) -> Result<(), CheckError> {
    walk(p, mode, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    fn node(s: &str, rule: RuleLabel, premises: Vec<Proof>) -> Proof {
        Proof::new(seq(s), rule, premises)
    }

    #[test]
    fn init_needs_a_shared_formula() {
        assert!(check_proof(&node("p, q => p", RuleLabel::Init, vec![]), false).is_ok());
        assert!(check_proof(&node("p & q => p & q, r", RuleLabel::Init, vec![]), false).is_ok());
        assert!(check_proof(&node("p => q", RuleLabel::Init, vec![]), false).is_err());
    }

    #[test]
    fn multiplicative_and_right() {
        let i = || node("p => p", RuleLabel::Init, vec![]);
        assert!(check_proof(&node("p => p & p", RuleLabel::RAnd, vec![i(), i()]), false).is_ok());
        let a = node("p => p", RuleLabel::Init, vec![]);
        let b = node("q => q", RuleLabel::Init, vec![]);
        assert!(check_proof(&node("p, q => p & q", RuleLabel::RAnd, vec![a.clone(), b.clone()]), false).is_ok());
        let e = check_proof(&node("p => p & q", RuleLabel::RAnd, vec![a, b]), false).unwrap_err();
        assert!(e.reason.contains("left"), "{e}");
    }

    #[test]
    fn implication_right_shape() {
        let prem = node("q, p => q", RuleLabel::Init, vec![]);
        let e = check_proof(&node("=> p -> q", RuleLabel::RImp, vec![prem]), false).unwrap_err();
        assert!(e.path.is_empty());
        let prem = node("p => q, p", RuleLabel::Init, vec![]);
        assert!(check_proof(&node("=> p -> q, p", RuleLabel::RImp, vec![prem]), false).is_ok());
    }

    #[test]
    fn cut_needs_permission() {
        let l = node("p => p", RuleLabel::Init, vec![]);
        let r = node("p => p", RuleLabel::Init, vec![]);
        let cut = node("p => p", RuleLabel::Cut, vec![l.clone(), r.clone()]);
        // the left context p must survive into the conclusion
        assert!(check_proof(&node("=> p", RuleLabel::Cut, vec![l, r]), true).is_err());
        assert!(check_proof(&cut, true).is_ok());
        let e = check_proof(&cut, false).unwrap_err();
        assert!(e.reason.contains("cut"));
    }

    #[test]
    fn errors_point_at_the_bad_node() {
        let bad = node("p => q", RuleLabel::Init, vec![]);
        let p = node("p & r => q", RuleLabel::LAnd, vec![node("p, r => q", RuleLabel::Init, vec![])]);
        let e = check_proof(&p, false).unwrap_err();
        assert_eq!(e.path, vec![0]);
        assert!(check_proof(&bad, false).is_err());
    }

    #[test]
    fn q_placeholders_only_when_admitted() {
        let prem = node("q & r => q & r", RuleLabel::Init, vec![]);
        let q = node("q & r => q", RuleLabel::QAnd1, vec![prem]);
        assert!(check_proof_with(&q, CheckMode::WITH_Q).is_ok());
        assert!(check_proof(&q, true).is_err());
    }
}
