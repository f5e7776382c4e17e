use bes_core::base::naive::naive_derivable;
use bes_core::base::{check_derivation, make_base, parse_base_file, render_base_file, Base, Closure, GroundRule, RuleRef};
use bes_core::gen;
use bes_core::syntax::{atom, parse_atomic_sequent, AtomSet, AtomicSequent};
use proptest::prelude::*;

fn closure(st: bool) -> Closure {
    if st {
        Closure::ST
    } else {
        Closure::HS
    }
}

fn seq(s: &str) -> AtomicSequent {
    parse_atomic_sequent(s).unwrap()
}

/// Every sequent over the universe whose sides are subsets of `universe`.
fn all_over(universe: &AtomSet) -> Vec<AtomicSequent> {
    let atoms: Vec<_> = universe.iter().cloned().collect();
    let n = atoms.len();
    (0..1usize << (2 * n))
        .map(|c| {
            AtomicSequent::from_iters(
                (0..n).filter(|i| c >> i & 1 == 1).map(|i| atoms[i].clone()),
                (0..n).filter(|i| c >> (n + i) & 1 == 1).map(|i| atoms[i].clone()),
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn agrees_with_brute_force(seed in any::<u64>(), st in any::<bool>()) {
        let atoms = gen::atoms(4);
        let b = gen::base(&mut gen::rng(seed), &atoms, 4, closure(st));
        let universe: AtomSet = atoms.into_iter().collect();
        let naive = naive_derivable(&b, &universe);
        let fast = b.saturate(&universe).unwrap();
        for s in all_over(&universe) {
            prop_assert_eq!(naive.derivable(&s), Some(fast.derivable(&s)), "{}", s);
        }
    }

    #[test]
    fn weakening_init_and_cut(seed in any::<u64>(), st in any::<bool>()) {
        let atoms = gen::atoms(4);
        let mut rng = gen::rng(seed);
        let b = gen::base(&mut rng, &atoms, 5, closure(st));
        let universe: AtomSet = atoms.iter().cloned().collect();
        let set = b.saturate(&universe).unwrap();
        for m in set.minimal() {
            let w = m.union(&gen::atomic_sequent(&mut rng, &atoms, 3));
            prop_assert!(set.derivable(&w));
        }
        for p in &atoms {
            let s = gen::atomic_sequent(&mut rng, &atoms, 2);
            let s = s.union(&AtomicSequent::from_iters([p.clone()], [p.clone()]));
            prop_assert!(set.derivable(&s));
        }
        if st {
            let ms = set.minimal();
            for x in &ms {
                for y in &ms {
                    for p in x.right.intersection(&y.left) {
                        let mut l = x.left.clone();
                        l.extend(y.left.iter().filter(|a| *a != p).cloned());
                        let mut r = y.right.clone();
                        r.extend(x.right.iter().filter(|a| *a != p).cloned());
                        prop_assert!(set.derivable(&AtomicSequent::new(l, r)));
                    }
                }
            }
        }
    }

    #[test]
    fn derivations_reconstruct(seed in any::<u64>(), st in any::<bool>()) {
        let atoms = gen::atoms(5);
        let mut rng = gen::rng(seed);
        let b = gen::base(&mut rng, &atoms, 6, closure(st));
        let universe: AtomSet = atoms.iter().cloned().collect();
        let set = b.saturate(&universe).unwrap();
        for _ in 0..10 {
            let s = gen::atomic_sequent(&mut rng, &atoms, 3);
            match set.derivation(&s) {
                Some(d) => {
                    prop_assert!(set.derivable(&s));
                    prop_assert_eq!(&d.conclusion, &s);
                    prop_assert!(check_derivation(&d, &b).is_ok(), "{:?}", d);
                }
                None => prop_assert!(!set.derivable(&s)),
            }
        }
    }

    #[test]
    fn extensions_only_add(seed in any::<u64>(), st in any::<bool>()) {
        let atoms = gen::atoms(4);
        let mut rng = gen::rng(seed);
        let b = gen::base(&mut rng, &atoms, 4, closure(st));
        let ext = b.extend(gen::ground_rules(&mut rng, "e", &atoms, 3)).unwrap();
        let ext2 = ext.extend(gen::ground_rules(&mut rng, "f", &atoms, 2)).unwrap();
        prop_assert!(ext2.extends(&ext) && ext2.extends(&b));
        let universe: AtomSet = atoms.into_iter().collect();
        let small = b.saturate(&universe).unwrap();
        let large = ext2.saturate(&universe).unwrap();
        for m in small.minimal() {
            prop_assert!(large.derivable(&m));
        }
    }

    #[test]
    fn base_files_round_trip(seed in any::<u64>(), st in any::<bool>()) {
        let b = gen::base(&mut gen::rng(seed), &gen::atoms(5), 6, closure(st));
        let again = parse_base_file(&render_base_file(&b)).unwrap();
        prop_assert_eq!(again, b);
    }
}

fn chain(c: Closure) -> Base {
    make_base(vec![GroundRule::axiom("r1", seq("p => q")), GroundRule::axiom("r2", seq("q => r"))], c).unwrap()
}

#[test]
fn documented_derivability() {
    let st = Base::st();
    let set = st.saturate(&[atom("p")].into()).unwrap();
    assert_eq!(set.minimal(), [seq("p => p")]);
    assert!(st.derivable(&seq("r, p => p, s")).unwrap());
    assert!(!st.derivable(&seq("=> p")).unwrap());

    let universe: AtomSet = [atom("p"), atom("q"), atom("r")].into();
    let hs = chain(Closure::HS).saturate(&universe).unwrap();
    let mut expect = vec![seq("p => p"), seq("q => q"), seq("r => r"), seq("p => q"), seq("q => r")];
    expect.sort();
    let mut got = hs.minimal();
    got.sort();
    assert_eq!(got, expect);
    assert!(chain(Closure::ST).derivable(&seq("p => r")).unwrap());
    let d = chain(Closure::ST).derivation(&seq("p => r")).unwrap();
    assert_eq!(d.rule, RuleRef::Cut(atom("q")));

    let b = make_base(
        vec![GroundRule::axiom("r1", seq("=> p")), GroundRule::new("r2", vec![seq("=> p")], seq("=> q"))],
        Closure::HS,
    )
    .unwrap();
    let d = b.derivation(&seq("=> q")).unwrap();
    assert_eq!(d.rule, RuleRef::Ground("r2".into()));
    assert_eq!(d.children[0].rule, RuleRef::Ground("r1".into()));

    assert_eq!(st.extend(vec![]).unwrap(), st);
    assert!(st.extend(vec![GroundRule::axiom("a", seq("=> p"))]).unwrap().derivable(&seq("=> p")).unwrap());
}

#[test]
fn base_file_errors_have_positions() {
    let e = parse_base_file("closure: st\n|- p => q &").unwrap_err();
    assert_eq!(e.line, 2);
    assert!(parse_base_file("|- => p").is_err());
}
