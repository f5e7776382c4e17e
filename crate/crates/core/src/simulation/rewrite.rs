//! Replacement of `Q*` placeholders by cuts against small cut-free gadgets.

use crate::clp::{check_node, CheckMode, Proof, RuleLabel};
use crate::syntax::{Connective, Formula, FormulaSet, Sequent};

use super::SimError;

fn set(items: &[&Formula]) -> FormulaSet {
    items.iter().map(|f| (*f).clone()).collect()
}

fn seq(left: &[&Formula], right: &[&Formula]) -> Sequent {
    Sequent::new(set(left), set(right))
}

fn init(left: &[&Formula], right: &[&Formula]) -> Proof {
    Proof::leaf(seq(left, right), RuleLabel::Init)
}

/// Cut on `a` with both contexts in the conclusion. Where the cut formula
/// may optionally stay (left via the second premise, right via the first),
/// it stays iff `keep` has it on that side.
fn cut(p1: Proof, p2: Proof, a: &Formula, keep: &Sequent) -> Proof {
    let (s1, s2) = (&p1.conclusion, &p2.conclusion);
    let mut left: FormulaSet = s1.left.union(&s2.left).cloned().collect();
    let mut right: FormulaSet = s1.right.union(&s2.right).cloned().collect();
    if !s1.left.contains(a) && !keep.left.contains(a) {
        left.remove(a);
    }
    if !s2.right.contains(a) && !keep.right.contains(a) {
        right.remove(a);
    }
    Proof::new(Sequent::new(left, right), RuleLabel::Cut, vec![p1, p2])
}

fn binary_parts(f: &Formula, c: Connective) -> Result<(&Formula, &Formula), SimError> {
    match f.as_binary() {
        Some((k, a, b)) if k == c => Ok((a, b)),
        _ => Err(SimError::Structure(format!("{f} is not built with {c:?}"))),
    }
}

/// Formulas that could be the one a `Q*` node eliminates.
fn principals(node: &Proof) -> Vec<Formula> {
    if node.rule == RuleLabel::QBot {
        return vec![Formula::Bottom];
    }
    let c = match node.rule {
        RuleLabel::QAnd1 | RuleLabel::QAnd2 => Connective::And,
        RuleLabel::QOr => Connective::Or,
        _ => Connective::Imp,
    };
    node.premises[0]
        .conclusion
        .right
        .iter()
        .filter(|f| matches!(f.as_binary(), Some((k, _, _)) if k == c))
        .cloned()
        .collect()
}

fn gadget(rule: RuleLabel, f: &Formula, premises: &[Proof], target: &Sequent) -> Result<Proof, SimError> {
    let first = premises[0].clone();
    Ok(match rule {
        RuleLabel::QAnd1 | RuleLabel::QAnd2 => {
            let (a, b) = binary_parts(f, Connective::And)?;
            let c = if rule == RuleLabel::QAnd1 { a } else { b };
            // A, B ⇒ C  /  A∧B ⇒ C
            let g = Proof::new(seq(&[f], &[c]), RuleLabel::LAnd, vec![init(&[a, b], &[c])]);
            cut(first, g, f, target)
        }
        RuleLabel::QOr => {
            let (a, b) = binary_parts(f, Connective::Or)?;
            // A ⇒ A   B ⇒ B  /  A∨B ⇒ A, B
            let g = Proof::new(
                seq(&[f], &[a, b]),
                RuleLabel::LOr,
                vec![init(&[a], &[a]), init(&[b], &[b])],
            );
            cut(first, g, f, target)
        }
        RuleLabel::QBot => cut(first, Proof::leaf(seq(&[f], &[]), RuleLabel::LBot), f, target),
        RuleLabel::QImp => {
            let (a, b) = binary_parts(f, Connective::Imp)?;
            // A ⇒ A   B ⇒ B  /  A→B, A ⇒ B
            let g = Proof::new(
                seq(&[f, a], &[b]),
                RuleLabel::LImp,
                vec![init(&[a], &[a]), init(&[b], &[b])],
            );
            let inner = cut(premises[1].clone(), g, a, target);
            cut(first, inner, f, target)
        }
        other => return Err(SimError::Structure(format!("{other} is not a placeholder"))),
    })
}

/// The new cut nodes of a gadget are legal and it ends in `target`.
fn fits(p: &Proof, target: &Sequent) -> bool {
    let ok = |n: &Proof| {
        let prems: Vec<&Sequent> = n.premises.iter().map(|q| &q.conclusion).collect();
        check_node(n.rule, &n.conclusion, &prems, CheckMode::WITH_CUT).is_ok()
    };
    let inner_ok = match p.premises.get(1) {
        Some(inner) if inner.rule == RuleLabel::Cut => ok(inner),
        _ => true,
    };
    p.conclusion == *target && ok(p) && inner_ok
}

/// Replaces every `Q*` node, bottom-up, by its gadget. Other nodes are kept.
pub fn rewrite_q_rules(p: &Proof) -> Result<Proof, SimError> {
    let premises = p
        .premises
        .iter()
        .map(rewrite_q_rules)
        .collect::<Result<Vec<_>, _>>()?;
    if !p.rule.is_q() {
        return Ok(Proof::new(p.conclusion.clone(), p.rule, premises));
    }
    if premises.len() != p.rule.arity() {
        return Err(SimError::Structure(format!("{} node with {} premises", p.rule, premises.len())));
    }
    for f in principals(p) {
        let g = gadget(p.rule, &f, &premises, &p.conclusion)?;
        if fits(&g, &p.conclusion) {
            return Ok(g);
        }
    }
    Err(SimError::Structure(format!(
        "no gadget for the {} node concluding '{}'",
        p.rule, p.conclusion
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clp::{check_proof, check_proof_with};
    use crate::syntax::parse_sequent;

    fn node(s: &str, rule: RuleLabel, premises: Vec<Proof>) -> Proof {
        Proof::new(parse_sequent(s).unwrap(), rule, premises)
    }

    fn rewrites_cleanly(p: &Proof) -> Proof {
        check_proof_with(p, CheckMode::WITH_Q).unwrap();
        let r = rewrite_q_rules(p).unwrap();
        assert_eq!(r.conclusion, p.conclusion);
        assert!(RuleLabel::Q_RULES.iter().all(|q| !r.contains(*q)));
        check_proof(&r, true).unwrap();
        r
    }

    #[test]
    fn bottom_gadget() {
        let prem = node("p, bot => bot, q", RuleLabel::Init, vec![]);
        let p = node("p, bot => q", RuleLabel::QBot, vec![prem]);
        let r = rewrites_cleanly(&p);
        assert_eq!(r.rule, RuleLabel::Cut);
        assert_eq!(r.premises[1].rule, RuleLabel::LBot);
    }

    #[test]
    fn conjunction_gadgets() {
        for (rule, concl) in [(RuleLabel::QAnd1, "q & r => q"), (RuleLabel::QAnd2, "q & r => r")] {
            let prem = node("q & r => q & r", RuleLabel::Init, vec![]);
            let r = rewrites_cleanly(&node(concl, rule, vec![prem]));
            assert_eq!(r.premises[1].rule, RuleLabel::LAnd);
        }
        // principal kept on the right by the premise's context
        let prem = node("q & r => q & r", RuleLabel::Init, vec![]);
        rewrites_cleanly(&node("q & r => q & r, q", RuleLabel::QAnd1, vec![prem]));
    }

    #[test]
    fn disjunction_and_implication_gadgets() {
        let prem = node("p | q => p | q", RuleLabel::Init, vec![]);
        rewrites_cleanly(&node("p | q => p, q", RuleLabel::QOr, vec![prem]));
        let ab = node("p -> q => p -> q", RuleLabel::Init, vec![]);
        let a = node("p => p", RuleLabel::Init, vec![]);
        let r = rewrites_cleanly(&node("p -> q, p => q", RuleLabel::QImp, vec![ab, a]));
        assert_eq!(r.count(RuleLabel::Cut), 2);
        // antecedent shared with the succedent
        let ab = node("p -> q => p -> q", RuleLabel::Init, vec![]);
        let a = node("p => p", RuleLabel::Init, vec![]);
        rewrites_cleanly(&node("p -> q, p => q, p", RuleLabel::QImp, vec![ab, a]));
        let ab = node("p -> p => p -> p", RuleLabel::Init, vec![]);
        let a = node("p => p", RuleLabel::Init, vec![]);
        rewrites_cleanly(&node("p -> p, p => p", RuleLabel::QImp, vec![ab, a]));
    }

    #[test]
    fn proofs_without_placeholders_are_unchanged() {
        let p = node("p & q => p", RuleLabel::LAnd, vec![node("p, q => p", RuleLabel::Init, vec![])]);
        assert_eq!(rewrite_q_rules(&p).unwrap(), p);
    }
}
