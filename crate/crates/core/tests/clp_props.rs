use bes_core::clp::{check_proof, eliminate_cuts, falsifies, prove, truth_table_valid, Decision, Proof, RuleLabel};
use bes_core::gen;
use bes_core::simulation::{extract_proof, SimulationVariant};
use bes_core::syntax::parse_sequent;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decisions_agree_and_verify(seed in any::<u64>()) {
        let s = gen::sequent(&mut gen::rng(seed), &gen::atoms(4), 5, 3);
        match prove(&s) {
            Decision::Provable(p) => {
                prop_assert!(truth_table_valid(&s));
                prop_assert_eq!(&p.conclusion, &s);
                prop_assert!(check_proof(&p, false).is_ok());
            }
            Decision::Refutable(v) => {
                prop_assert!(!truth_table_valid(&s));
                prop_assert!(falsifies(&v, &s));
            }
        }
    }

    #[test]
    fn cut_elimination_keeps_the_end_sequent(seed in any::<u64>()) {
        let s = gen::sequent(&mut gen::rng(seed), &gen::atoms(3), 4, 2);
        prop_assume!(truth_table_valid(&s));
        // the full pipeline's intermediate stage is a source of proofs with cuts
        let rep = extract_proof(&s.left, &s.right, SimulationVariant::Full).unwrap();
        let with_cuts = &rep.stage_pi_dprime;
        prop_assert!(check_proof(with_cuts, true).is_ok());
        let q = eliminate_cuts(with_cuts).unwrap();
        prop_assert_eq!(&q.conclusion, &with_cuts.conclusion);
        prop_assert!(q.is_cut_free());
        prop_assert!(check_proof(&q, false).is_ok());
    }
}

fn node(s: &str, rule: RuleLabel, premises: Vec<Proof>) -> Proof {
    Proof::new(parse_sequent(s).unwrap(), rule, premises)
}

#[test]
fn checker_examples() {
    assert!(check_proof(&node("p, q => p", RuleLabel::Init, vec![]), false).is_ok());
    let init = || node("p => p", RuleLabel::Init, vec![]);
    assert!(check_proof(&node("p => p & p", RuleLabel::RAnd, vec![init(), init()]), false).is_ok());
    let bad = node("=> p -> q", RuleLabel::RImp, vec![node("q, p => q", RuleLabel::Init, vec![])]);
    assert!(check_proof(&bad, false).is_err());
    let cut = node("p => p", RuleLabel::Cut, vec![init(), init()]);
    assert!(check_proof(&cut, false).is_err());
    assert!(check_proof(&cut, true).is_ok());
}

#[test]
fn prover_examples() {
    let s = |t: &str| parse_sequent(t).unwrap();
    assert!(prove(&s("q & r => q")).is_provable());
    assert!(prove(&s("=> ((p -> q) -> p) -> p")).is_provable());
    let Decision::Refutable(v) = prove(&s("=> p | q")) else { panic!() };
    assert!(v.values().all(|b| !b));
    assert!(truth_table_valid(&s("p -> q, p => q")));
    assert!(!truth_table_valid(&s("=> bot")));
}

#[test]
fn eliminating_a_cut_on_q() {
    let left = node("q & r => q", RuleLabel::LAnd, vec![node("q, r => q", RuleLabel::Init, vec![])]);
    let p = node("q & r => q", RuleLabel::Cut, vec![left, node("q => q", RuleLabel::Init, vec![])]);
    assert!(check_proof(&p, true).is_ok());
    let q = eliminate_cuts(&p).unwrap();
    assert!(q.is_cut_free());
    assert_eq!(q.conclusion, p.conclusion);
    let free = node("p => p", RuleLabel::Init, vec![]);
    assert_eq!(eliminate_cuts(&free).unwrap(), free);
}

#[test]
fn proof_serializations_round_trip() {
    let p = prove(&parse_sequent("p -> q, p => q").unwrap()).proof().unwrap().clone();
    assert_eq!(Proof::from_json(&p.to_json()).unwrap(), p);
    assert!(p.to_latex().contains("\\begin{prooftree}"));
}
