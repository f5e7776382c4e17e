use std::collections::BTreeMap;

use super::proof::{Proof, RuleLabel};
use crate::syntax::{Atom, AtomSet, Connective, Formula, FormulaSet, Sequent};

/// A classical valuation restricted to finitely many atoms.
pub type Valuation = BTreeMap<Atom, bool>;

/// Outcome of [`prove`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Provable(Proof),
    /// Makes every antecedent true and every succedent false.
    Refutable(Valuation),
}

impl Decision {
    pub fn is_provable(&self) -> bool {
        matches!(self, Decision::Provable(_))
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            Decision::Provable(p) => Some(p),
            Decision::Refutable(_) => None,
        }
    }
}

fn without(set: &FormulaSet, f: &Formula) -> FormulaSet {
    let mut s = set.clone();
    s.remove(f);
    s
}

fn plus(mut set: FormulaSet, items: &[&Formula]) -> FormulaSet {
    set.extend(items.iter().map(|f| (*f).clone()));
    set
}

fn find(set: &FormulaSet, c: Connective) -> Option<(&Formula, &Formula, &Formula)> {
    set.iter().find_map(|f| match f.as_binary() {
        Some((k, a, b)) if k == c => Some((f, a, b)),
        _ => None,
    })
}

/// Backward search. Every rule is applied with the whole context copied into
/// each premise and the principal formula dropped, so each step lowers the
/// total degree. All such steps are invertible; an unclosable leaf yields the
/// countermodel.
fn search(s: &Sequent) -> Result<Proof, AtomSet> {
    if s.left.intersection(&s.right).next().is_some() {
        return Ok(Proof::leaf(s.clone(), RuleLabel::Init));
    }
    if s.left.contains(&Formula::Bottom) {
        return Ok(Proof::leaf(s.clone(), RuleLabel::LBot));
    }
    let unary = |rule, premise: Sequent| -> Result<Proof, AtomSet> {
        Ok(Proof::new(s.clone(), rule, vec![search(&premise)?]))
    };
    let binary = |rule, p1: Sequent, p2: Sequent| -> Result<Proof, AtomSet> {
        let a = search(&p1)?;
        let b = search(&p2)?;
        Ok(Proof::new(s.clone(), rule, vec![a, b]))
    };

    if let Some((f, a, b)) = find(&s.left, Connective::And) {
        let l = plus(without(&s.left, f), &[a, b]);
        return unary(RuleLabel::LAnd, Sequent::new(l, s.right.clone()));
    }
    if let Some((f, a, b)) = find(&s.right, Connective::Or) {
        let r = plus(without(&s.right, f), &[a, b]);
        return unary(RuleLabel::ROr, Sequent::new(s.left.clone(), r));
    }
    if let Some((f, a, b)) = find(&s.right, Connective::Imp) {
        let l = plus(s.left.clone(), &[a]);
        let r = plus(without(&s.right, f), &[b]);
        return unary(RuleLabel::RImp, Sequent::new(l, r));
    }
    if s.right.contains(&Formula::Bottom) {
        let r = without(&s.right, &Formula::Bottom);
        return unary(RuleLabel::RBot, Sequent::new(s.left.clone(), r));
    }
    if let Some((f, a, b)) = find(&s.right, Connective::And) {
        let r = without(&s.right, f);
        return binary(
            RuleLabel::RAnd,
            Sequent::new(s.left.clone(), plus(r.clone(), &[a])),
            Sequent::new(s.left.clone(), plus(r, &[b])),
        );
    }
    if let Some((f, a, b)) = find(&s.left, Connective::Or) {
        let l = without(&s.left, f);
        return binary(
            RuleLabel::LOr,
            Sequent::new(plus(l.clone(), &[a]), s.right.clone()),
            Sequent::new(plus(l, &[b]), s.right.clone()),
        );
    }
    if let Some((f, a, b)) = find(&s.left, Connective::Imp) {
        let l = without(&s.left, f);
        return binary(
            RuleLabel::LImp,
            Sequent::new(l.clone(), plus(s.right.clone(), &[a])),
            Sequent::new(plus(l, &[b]), s.right.clone()),
        );
    }
    // only atoms remain, the sides are disjoint and ⊥ is absent
    Err(s.left.iter().filter_map(|f| f.as_atom().cloned()).collect())
}

/// Decides `s`: a cut-free proof or a falsifying valuation over its atoms.
pub fn prove(s: &Sequent) -> Decision {
    match search(s) {
        Ok(p) => Decision::Provable(p),
        Err(true_atoms) => Decision::Refutable(
            s.atoms()
                .into_iter()
                .map(|a| {
                    let v = true_atoms.contains(&a);
                    (a, v)
                })
                .collect(),
        ),
    }
}

/// Whether `v` makes all antecedents true and all succedents false.
/// Atoms missing from `v` count as false.
pub fn falsifies(v: &Valuation, s: &Sequent) -> bool {
    let val = |a: &Atom| v.get(a).copied().unwrap_or(false);
    s.left.iter().all(|f| f.eval(&val)) && !s.right.iter().any(|f| f.eval(&val))
}

/// Validity by enumerating every valuation of the sequent's atoms.
pub fn truth_table_valid(s: &Sequent) -> bool {
    let atoms: Vec<Atom> = s.atoms().into_iter().collect();
    assert!(atoms.len() < 32, "too many atoms for a truth table");
    (0u64..1 << atoms.len()).all(|bits| {
        let val = |a: &Atom| {
            let i = atoms.binary_search(a).expect("atom of the sequent");
            bits >> i & 1 == 1
        };
        !s.left.iter().all(|f| f.eval(&val)) || s.right.iter().any(|f| f.eval(&val))
    })
}
