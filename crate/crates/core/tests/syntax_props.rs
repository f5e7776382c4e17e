use bes_core::syntax::{
    atom, parse_formula, parse_sequent, set_degree, subformulas, Formula, FormulaSet, Sequent,
};
use proptest::prelude::*;

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => prop::sample::select(vec!["p", "q", "r", "s_1", "x'"]).prop_map(|n| Formula::Atom(atom(n))),
        1 => Just(Formula::Bottom),
    ];
    leaf.prop_recursive(8, 64, 2, |inner| {
        (0..3u8, inner.clone(), inner).prop_map(|(c, a, b)| match c {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            _ => Formula::imp(a, b),
        })
    })
}

fn formula_set() -> impl Strategy<Value = FormulaSet> {
    prop::collection::btree_set(formula(), 0..4)
}

proptest! {
    #[test]
    fn formulas_round_trip(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn sequents_round_trip(l in formula_set(), r in formula_set()) {
        let s = Sequent::new(l, r);
        prop_assert_eq!(parse_sequent(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn subformula_closure(a in formula_set(), b in formula_set()) {
        let ca = subformulas(&a);
        prop_assert_eq!(subformulas(&ca), ca.clone());
        prop_assert!(a.is_subset(&ca));
        let ab: FormulaSet = a.union(&b).cloned().collect();
        prop_assert!(ca.is_subset(&subformulas(&ab)));
    }

    #[test]
    fn degree_of_closure(a in formula_set()) {
        prop_assert!(set_degree(&subformulas(&a)) >= set_degree(&a));
        prop_assert_eq!(set_degree(&a) == 0, a.iter().all(Formula::is_atom));
    }
}

#[test]
fn documented_parses() {
    let f = |s: &str| parse_formula(s).unwrap();
    let p = || Formula::Atom(atom("p"));
    let q = || Formula::Atom(atom("q"));
    let r = || Formula::Atom(atom("r"));
    assert_eq!(f("p & q -> r"), Formula::imp(Formula::and(p(), q()), r()));
    assert_eq!(f("bot"), Formula::Bottom);
    assert_eq!(f("p | q | r"), Formula::or(p(), Formula::or(q(), r())));
    assert_eq!(f("~p"), Formula::imp(p(), Formula::Bottom));
    assert_eq!(f("p & (q -> bot)").degree(), 3);
    assert!(parse_formula("@p").is_err());

    let s = parse_sequent("p, p => q").unwrap();
    assert_eq!(s.left.len(), 1);
    let s = parse_sequent("=> p -> p").unwrap();
    assert!(s.left.is_empty());
    assert_eq!(s.to_string(), "=> p -> p");
    assert_eq!(Sequent::new([p()].into(), [q()].into()).to_string(), "p => q");

    let set: FormulaSet = [f("p -> q | bot")].into();
    let names: Vec<String> = subformulas(&set).iter().map(|x| x.to_string()).collect();
    assert_eq!(names.len(), 5);
    assert_eq!(set_degree(&[p(), f("p | q")].into()), 1);
}
