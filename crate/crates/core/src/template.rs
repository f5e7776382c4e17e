//! Multiplicative rule instances over set-based sequents.
//!
//! A rule is given by premise templates `Fᵢ` and a conclusion template `F`.
//! An instance with premises `Pᵢ` and conclusion `X` is legal when there are
//! contexts `Cᵢ` with `Pᵢ = Cᵢ ∪ Fᵢ` and `X = F ∪ ⋃Cᵢ`, side by side. For a
//! premise-free rule the context is arbitrary, so only `F ⊆ X` is required.
//!
//! Both the logical calculus (over formulas) and atomic derivations (over
//! atoms) are checked with the same function.

use std::collections::BTreeSet;

/// Two sets of elements, read as the sides of a sequent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Shape<T: Ord> {
    pub left: BTreeSet<T>,
    pub right: BTreeSet<T>,
}

impl<T: Ord + Clone> Shape<T> {
    pub fn new<L, R>(left: L, right: R) -> Shape<T>
    where
        L: IntoIterator<Item = T>,
        R: IntoIterator<Item = T>,
    {
        Shape {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        }
    }

    pub fn empty() -> Shape<T> {
        Shape {
            left: BTreeSet::new(),
            right: BTreeSet::new(),
        }
    }
}

/// Which instance equation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Arity { expected: usize, found: usize },
    PrincipalMissing,
    PremiseTemplateMissing(usize),
    ContextLeaks(usize),
    ContextUnaccounted,
}

impl Violation {
    pub fn describe(&self, side: &str) -> String {
        match self {
            Violation::Arity { expected, found } => {
                format!("expected {expected} premises, found {found}")
            }
            Violation::PrincipalMissing => format!("{side} side lacks the principal formula"),
            Violation::PremiseTemplateMissing(i) => {
                format!("premise {} {side} side lacks its active formula", i + 1)
            }
            Violation::ContextLeaks(i) => {
                format!("premise {} {side} context is not contained in the conclusion", i + 1)
            }
            Violation::ContextUnaccounted => {
                format!("conclusion {side} side is not the union of the premise contexts")
            }
        }
    }
}

fn check_side<T: Ord>(
    concl: &BTreeSet<T>,
    template: &BTreeSet<T>,
    premises: &[(&BTreeSet<T>, &BTreeSet<T>)],
) -> Result<(), Violation> {
    if !template.is_subset(concl) {
        return Err(Violation::PrincipalMissing);
    }
    for (i, (side, t)) in premises.iter().enumerate() {
        if !t.is_subset(side) {
            return Err(Violation::PremiseTemplateMissing(i));
        }
        if side.iter().any(|x| !t.contains(x) && !concl.contains(x)) {
            return Err(Violation::ContextLeaks(i));
        }
    }
    if !premises.is_empty()
        && concl
            .iter()
            .any(|x| !template.contains(x) && !premises.iter().any(|(s, _)| s.contains(x)))
    {
        return Err(Violation::ContextUnaccounted);
    }
    Ok(())
}

/// Checks one instance; on failure reports the side ("left"/"right") and equation.
pub fn check_instance<T: Ord + Clone>(
    concl: (&BTreeSet<T>, &BTreeSet<T>),
    concl_template: &Shape<T>,
    premises: &[(&BTreeSet<T>, &BTreeSet<T>)],
    premise_templates: &[Shape<T>],
) -> Result<(), (&'static str, Violation)> {
    if premises.len() != premise_templates.len() {
        return Err((
            "",
            Violation::Arity {
                expected: premise_templates.len(),
                found: premises.len(),
            },
        ));
    }
    let lefts: Vec<_> = premises
        .iter()
        .zip(premise_templates)
        .map(|(p, t)| (p.0, &t.left))
        .collect();
    check_side(concl.0, &concl_template.left, &lefts).map_err(|v| ("left", v))?;
    let rights: Vec<_> = premises
        .iter()
        .zip(premise_templates)
        .map(|(p, t)| (p.1, &t.right))
        .collect();
    check_side(concl.1, &concl_template.right, &rights).map_err(|v| ("right", v))?;
    Ok(())
}

/// The least conclusion of an instance whose premises are exactly `premises`:
/// `F ∪ ⋃(Pᵢ ∖ Fᵢ)` on each side. `None` if some premise lacks its template.
pub fn canonical_conclusion<T: Ord + Clone>(
    concl_template: &Shape<T>,
    premises: &[(&BTreeSet<T>, &BTreeSet<T>)],
    premise_templates: &[Shape<T>],
) -> Option<Shape<T>> {
    let mut out = concl_template.clone();
    for (p, t) in premises.iter().zip(premise_templates) {
        if !t.left.is_subset(p.0) || !t.right.is_subset(p.1) {
            return None;
        }
        out.left.extend(p.0.difference(&t.left).cloned());
        out.right.extend(p.1.difference(&t.right).cloned());
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[u8]) -> BTreeSet<u8> {
        items.iter().copied().collect()
    }

    #[test]
    fn premise_free_rules_absorb_context() {
        let t = Shape::new([1], [1]);
        assert!(check_instance((&s(&[1, 2]), &s(&[1, 3])), &t, &[], &[]).is_ok());
        assert!(check_instance((&s(&[2]), &s(&[1])), &t, &[], &[]).is_err());
    }

    #[test]
    fn binary_rule_contexts_are_unions() {
        // R∧-like: (∅,{1}) (∅,{2}) / (∅,{3})
        let pt = [Shape::new([], [1]), Shape::new([], [2])];
        let ct = Shape::new([], [3]);
        let (a, b) = ((s(&[7]), s(&[1])), (s(&[]), s(&[2, 8])));
        let prem = [(&a.0, &a.1), (&b.0, &b.1)];
        assert!(check_instance((&s(&[7]), &s(&[3, 8])), &ct, &prem, &pt).is_ok());
        // active formula kept as context is fine under sets
        assert!(check_instance((&s(&[7]), &s(&[1, 3, 8])), &ct, &prem, &pt).is_ok());
        // missing context
        assert_eq!(
            check_instance((&s(&[]), &s(&[3, 8])), &ct, &prem, &pt),
            Err(("left", Violation::ContextLeaks(0)))
        );
        // extra context
        assert_eq!(
            check_instance((&s(&[7]), &s(&[3, 8, 9])), &ct, &prem, &pt),
            Err(("right", Violation::ContextUnaccounted))
        );
        let c = canonical_conclusion(&ct, &prem, &pt).unwrap();
        assert_eq!((c.left, c.right), (s(&[7]), s(&[3, 8])));
    }
}
