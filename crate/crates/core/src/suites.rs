//! Property suites behind the acceptance tests and `bes check`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::base::naive::naive_derivable;
use crate::base::{make_base, Base, Closure, GroundRule};
use crate::clp::{check_proof, check_proof_with, falsifies, prove, truth_table_valid, CheckMode, Decision, RuleLabel};
use crate::gen;
use crate::simulation::{atomic_mapping, extract_proof, prop6_counterexample, simulation_base, SimulationVariant};
use crate::syntax::{atom, subformulas, Atom, AtomSet, AtomicSequent, Formula, FormulaSet};

/// Outcome of one suite: how many cases ran and which of them failed.
#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    /// The first few failures, rendered.
    pub examples: Vec<String>,
    pub notes: Vec<String>,
}

const KEPT_EXAMPLES: usize = 8;

impl SuiteResult {
    pub fn new(name: impl Into<String>) -> SuiteResult {
        SuiteResult {
            name: name.into(),
            checked: 0,
            failed: 0,
            examples: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.examples.len() < KEPT_EXAMPLES {
            self.examples.push(msg);
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} {}: {} checked, {} failed",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.checked,
            self.failed
        )?;
        for n in &self.notes {
            writeln!(f, "    note: {n}")?;
        }
        for e in &self.examples {
            writeln!(f, "    - {e}")?;
        }
        Ok(())
    }
}

/// The prover against truth tables: exhaustively over `{p, q, ⊥}` and on
/// `random` seeded sequents over four atoms.
pub fn oracle_equivalence(seed: u64, random: usize) -> SuiteResult {
    let mut r = SuiteResult::new("oracle equivalence");
    let one = |r: &mut SuiteResult, s: &crate::syntax::Sequent| {
        let oracle = truth_table_valid(s);
        match prove(s) {
            Decision::Provable(p) => {
                let ok = oracle && p.conclusion == *s && check_proof(&p, false).is_ok();
                r.check(ok, || format!("'{s}': proof returned, oracle says {oracle}"));
            }
            Decision::Refutable(v) => {
                let ok = !oracle && falsifies(&v, s);
                r.check(ok, || format!("'{s}': refuted, oracle says {oracle}"));
            }
        }
    };
    let exhaustive = gen::all_sequents(&gen::atoms(2), true, 2, 2);
    for s in &exhaustive {
        one(&mut r, s);
    }
    let atoms = gen::atoms(4);
    let mut rng = gen::rng(seed);
    for _ in 0..random {
        let s = gen::sequent(&mut rng, &atoms, 5, 3);
        one(&mut r, &s);
    }
    r.note(format!("{} exhaustive, {random} random", exhaustive.len()));
    r
}

/// Seeded valid sequents over four atoms with total degree at most four.
pub fn valid_corpus(seed: u64, n: usize) -> Vec<crate::syntax::Sequent> {
    let atoms = gen::atoms(4);
    let mut rng = gen::rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let s = gen::sequent(&mut rng, &atoms, 4, 3);
        if truth_table_valid(&s) {
            out.push(s);
        }
    }
    out
}

/// Both pipelines on a valid corpus; the quasi run also tracks which `Q*`
/// placeholders occurred.
pub fn completeness(v: SimulationVariant, seed: u64, n: usize) -> SuiteResult {
    let mut r = SuiteResult::new(format!("completeness pipeline ({v})"));
    let mut q_seen: BTreeMap<RuleLabel, usize> = RuleLabel::Q_RULES.iter().map(|&q| (q, 0)).collect();
    for s in valid_corpus(seed, n) {
        match extract_proof(&s.left, &s.right, v) {
            Ok(rep) => {
                let fin = &rep.final_proof;
                let mode = match v {
                    SimulationVariant::Full => CheckMode::WITH_CUT,
                    SimulationVariant::Quasi => CheckMode::WITH_Q,
                };
                let ok = fin.conclusion == s
                    && fin.is_cut_free()
                    && check_proof(fin, false).is_ok()
                    && check_proof_with(&rep.stage_pi_dprime, mode).is_ok()
                    && rep.stage_rewritten.as_ref().is_none_or(|p| check_proof(p, true).is_ok());
                r.check(ok, || format!("'{s}': final proof rejected"));
                for (q, k) in &rep.stats.q_counts {
                    *q_seen.get_mut(q).expect("known placeholder") += k;
                }
            }
            Err(e) => r.check(false, || format!("'{s}': {e}")),
        }
    }
    if v == SimulationVariant::Quasi {
        for (q, k) in &q_seen {
            r.check(*k > 0, || format!("{q} never occurred in the corpus"));
        }
        let counts: Vec<String> = q_seen.iter().map(|(q, k)| format!("{q}={k}")).collect();
        r.note(format!("placeholders: {}", counts.join(" ")));
    }
    r
}

/// The six derivability facts of the `ℋ𝒮` counterexample.
pub fn prop6() -> SuiteResult {
    let mut r = SuiteResult::new("proposition counterexample");
    match prop6_counterexample() {
        Ok(rep) => {
            for f in &rep.facts {
                r.check(f.holds(), || {
                    format!("{} '{}': expected {}, got {}", f.closure, f.sequent, f.expected, f.actual)
                });
            }
        }
        Err(e) => r.check(false, || e.to_string()),
    }
    r
}

/// The atomic image of one support clause, for the compound `c`:
/// derivability of `⇒ α(c), Θ` against its unfolded form.
fn shadow_holds(set: &crate::base::DerivableSet, m: &crate::simulation::AtomicMapping, c: &Formula, theta: &AtomSet) -> bool {
    let a = |f: &Formula| m.get(f).expect("in scope").clone();
    let der = |left: &[Atom], right: &[Atom]| {
        let mut r = theta.clone();
        r.extend(right.iter().cloned());
        set.derivable(&AtomicSequent::new(left.iter().cloned().collect(), r))
    };
    let lhs = der(&[], &[a(c)]);
    let rhs = match c {
        Formula::Bottom => der(&[], &[]),
        Formula::And(x, y) => der(&[], &[a(x)]) && der(&[], &[a(y)]),
        Formula::Or(x, y) => der(&[], &[a(x), a(y)]),
        Formula::Imp(x, y) => der(&[a(x)], &[a(y)]),
        Formula::Atom(_) => return true,
    };
    lhs == rhs
}

fn sample_sigma<R: Rng>(rng: &mut R) -> FormulaSet {
    let atoms = gen::atoms(3);
    loop {
        let k = rng.gen_range(1..=2);
        let sigma: FormulaSet = (0..k).map(|_| gen::formula(rng, &atoms, 3)).collect();
        let scope = subformulas(&sigma);
        if scope.len() <= 6 && scope.iter().any(|f| !f.is_atom()) {
            return sigma;
        }
    }
}

/// Atomic shadows of the support clauses over extensions of `𝒰` with cut
/// and of `𝒬`, plus the predicted failure of the `∧` shadow on the `ℋ𝒮`
/// counterexample base.
pub fn main_lemma_shadows(seed: u64, n: usize) -> SuiteResult {
    let mut r = SuiteResult::new("atomic shadows of the support clauses");
    let mut rng = gen::rng(seed);
    let fresh = atom("t");
    for i in 0..n {
        let sigma = sample_sigma(&mut rng);
        let m = atomic_mapping(&sigma);
        let scope = subformulas(&sigma);
        let mut universe: Vec<Atom> = scope.iter().map(|f| m.get(f).expect("in scope").clone()).collect();
        universe.push(fresh.clone());
        let k = rng.gen_range(0..=3);
        let axioms: Vec<AtomicSequent> = (0..k)
            .map(|_| {
                AtomicSequent::new(
                    gen::atom_subset(&mut rng, &universe, 1),
                    gen::atom_subset(&mut rng, &universe, 2),
                )
            })
            .collect();
        let theta = gen::atom_subset(&mut rng, &universe, 3);
        for v in [SimulationVariant::Full, SimulationVariant::Quasi] {
            let base = simulation_base(&sigma, &m, v)
                .and_then(|b| Ok(b.extend_axioms("x", axioms.clone())?))
                .expect("simulation base");
            let set = base.saturate(&universe.iter().cloned().collect()).expect("small universe");
            for c in scope.iter().filter(|f| !f.is_atom()) {
                r.check(shadow_holds(&set, &m, c, &theta), || {
                    let ax: Vec<String> = axioms.iter().map(|a| a.to_string()).collect();
                    format!("sample {i} ({v}): clause for '{c}' with context {theta:?}, axioms [{}]", ax.join("; "))
                });
            }
        }
    }

    // must fail: the ∧ shadow on the counterexample base without cut
    let rep = prop6_counterexample().expect("fixed base");
    let qr = crate::syntax::parse_formula("q & r").expect("fixed formula");
    let m = atomic_mapping(&rep.sigma);
    let set = rep.hs_base.saturate(&m.pairs().map(|(_, a)| a.clone()).collect()).expect("small");
    let fails = !shadow_holds(&set, &m, &qr, &AtomSet::new());
    r.check(fails, || "the conjunction shadow holds on the counterexample base".into());
    r.note(format!("{n} samples; conjunction shadow fails on the counterexample base: {fails}"));
    r
}

fn random_gamma_delta<R: Rng>(rng: &mut R, atoms: &[Atom]) -> (AtomSet, AtomSet) {
    (gen::atom_subset(rng, atoms, 3), gen::atom_subset(rng, atoms, 3))
}

fn witness_cases(seed: u64, n: usize) -> Vec<(Base, AtomSet, AtomSet)> {
    let atoms = gen::atoms(5);
    let mut rng = gen::rng(seed);
    (0..n)
        .map(|i| {
            let closure = if i % 2 == 0 { Closure::HS } else { Closure::ST };
            let b = gen::base(&mut rng, &atoms, 6, closure);
            let (g, d) = random_gamma_delta(&mut rng, &atoms);
            (b, g, d)
        })
        .collect()
}

fn derivable(b: &Base, s: &AtomicSequent) -> bool {
    b.derivable(s).expect("small universe")
}

/// The axiom-addition witness, with the single axiom `⇒ Γ` as stated:
/// underivability of `Γ ⇒ Δ` transfers to `⇒ Δ` in the extension, and for
/// cut-closed bases so does derivability.
pub fn witness_property(seed: u64, n: usize) -> SuiteResult {
    let mut r = SuiteResult::new("axiom-addition witness (single axiom)");
    let (mut empty_gamma, mut wide_gamma) = (0, 0);
    for (b, g, d) in witness_cases(seed, n) {
        let hyp = AtomicSequent::new(g.clone(), d.clone());
        let ext = b
            .extend(vec![GroundRule::axiom("w1", AtomicSequent::categorical(g.clone()))])
            .expect("fresh id");
        let goal = AtomicSequent::categorical(d.clone());
        let in_b = derivable(&b, &hyp);
        let in_ext = derivable(&ext, &goal);
        let ok1 = in_b || !in_ext;
        let ok2 = b.closure() != Closure::ST || !in_b || in_ext;
        if !ok1 && g.is_empty() {
            empty_gamma += 1;
        }
        if !ok2 && g.len() >= 2 {
            wide_gamma += 1;
        }
        r.check(ok1 && ok2, || {
            format!(
                "{} base [{}]: '{hyp}' derivable {in_b}; with axiom '{axiom}', '{goal}' derivable {in_ext}",
                b.closure(),
                rules_text(&b),
                axiom = AtomicSequent::categorical(g.clone()),
            )
        });
    }
    r.note(format!(
        "failures with empty Γ: {empty_gamma}; cut-closed failures with |Γ| >= 2: {wide_gamma}"
    ));
    r
}

/// The same property with the two degenerate readings repaired: the
/// underivability direction for nonempty `Γ`, and the derivability
/// direction with one axiom `⇒ γ` per member of `Γ`.
pub fn witness_property_repaired(seed: u64, n: usize) -> SuiteResult {
    let mut r = SuiteResult::new("axiom-addition witness (nonempty Γ; one axiom per atom)");
    for (b, g, d) in witness_cases(seed, n) {
        let hyp = AtomicSequent::new(g.clone(), d.clone());
        let goal = AtomicSequent::categorical(d.clone());
        let in_b = derivable(&b, &hyp);
        if !g.is_empty() {
            let ext = b
                .extend(vec![GroundRule::axiom("w1", AtomicSequent::categorical(g.clone()))])
                .expect("fresh id");
            r.check(in_b || !derivable(&ext, &goal), || format!("{} base [{}], '{hyp}'", b.closure(), rules_text(&b)));
        }
        if b.closure() == Closure::ST {
            let ext = b
                .extend_axioms("w", g.iter().map(|a| AtomicSequent::categorical([a.clone()].into())))
                .expect("fresh ids");
            r.check(!in_b || derivable(&ext, &goal), || format!("ST base [{}], '{hyp}'", rules_text(&b)));
        }
    }
    r
}

fn rules_text(b: &Base) -> String {
    b.ground_rules().iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")
}

/// Every minimal derivable sequent of a base stays derivable after adding rules.
pub fn monotonicity(seed: u64, n: usize) -> SuiteResult {
    let mut r = SuiteResult::new("monotonicity under extension");
    let atoms = gen::atoms(4);
    let mut rng = gen::rng(seed);
    for _ in 0..n {
        let closure = if rng.gen_bool(0.5) { Closure::ST } else { Closure::HS };
        let b = gen::base(&mut rng, &atoms, 4, closure);
        let mut added = gen::ground_rules(&mut rng, "e", &atoms, 3);
        if added.is_empty() {
            added.push(gen::ground_rule(&mut rng, "e1".into(), &atoms));
        }
        let ext = b.extend(added).expect("fresh ids");
        let universe: AtomSet = atoms.iter().cloned().collect();
        let small = b.saturate(&universe).expect("small universe");
        let large = ext.saturate(&universe).expect("small universe");
        let missing: Vec<String> = small
            .minimal()
            .into_iter()
            .filter(|s| !large.derivable(s))
            .map(|s| s.to_string())
            .collect();
        r.check(missing.is_empty() && ext.extends(&b), || {
            format!("[{}] extended to [{}] loses {}", rules_text(&b), rules_text(&ext), missing.join("; "))
        });
    }
    r
}

/// The rule pool for the exhaustive comparison with brute force.
pub fn naive_rule_pool() -> Vec<GroundRule> {
    let s = |t: &str| crate::syntax::parse_atomic_sequent(t).expect("fixed sequent");
    let rules: [(&[&str], &str); 16] = [
        (&[], "=> p"),
        (&[], "p => q"),
        (&[], "q => r"),
        (&[], "p, q => r"),
        (&[], "=> p, q"),
        (&[], "r =>"),
        (&[], "p => q, r"),
        (&["=> p"], "=> q"),
        (&["p =>"], "=> r"),
        (&["=> p", "=> q"], "=> r"),
        (&["q => r"], "p => r"),
        (&["=> q", "r =>"], "p =>"),
        (&["p => q"], "=> r"),
        (&["=> r"], "q => p"),
        (&["p, q =>"], "=> r"),
        (&["=> p, r"], "=> q"),
    ];
    rules
        .iter()
        .enumerate()
        .map(|(i, (prem, concl))| GroundRule::new(format!("g{}", i + 1), prem.iter().map(|t| s(t)).collect(), s(concl)))
        .collect()
}

/// Saturation against brute-force enumeration on every base of at most
/// three rules from [`naive_rule_pool`], under both closures.
pub fn saturation_vs_naive() -> SuiteResult {
    let mut r = SuiteResult::new("saturation against brute force");
    let pool = naive_rule_pool();
    let universe: AtomSet = gen::atoms(3).into_iter().collect();
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    for k in 1..=3 {
        let mut c: Vec<usize> = (0..k).collect();
        loop {
            subsets.push(c.clone());
            if !next_combination(&mut c, pool.len()) {
                break;
            }
        }
    }
    let mut bases = 0;
    for sub in &subsets {
        for closure in [Closure::HS, Closure::ST] {
            let b = make_base(sub.iter().map(|&i| pool[i].clone()).collect(), closure).expect("distinct ids");
            bases += 1;
            let naive = naive_derivable(&b, &universe);
            let fast = b.saturate(&universe).expect("small universe");
            let mut disagreements = Vec::new();
            for code in 0..(1usize << 6) {
                let s = decode(&universe, code);
                if naive.derivable(&s) != Some(fast.derivable(&s)) {
                    disagreements.push(s.to_string());
                }
            }
            r.check(disagreements.is_empty(), || {
                format!("{closure} [{}]: {}", rules_text(&b), disagreements.join("; "))
            });
        }
    }
    r.note(format!("{bases} bases from a pool of {} rules", pool.len()));
    r
}

fn decode(universe: &AtomSet, code: usize) -> AtomicSequent {
    let atoms: Vec<&Atom> = universe.iter().collect();
    let n = atoms.len();
    AtomicSequent::from_iters(
        (0..n).filter(|i| code >> i & 1 == 1).map(|i| atoms[i].clone()),
        (0..n).filter(|i| code >> (n + i) & 1 == 1).map(|i| atoms[i].clone()),
    )
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `p ⇒ q` and `q ⇒ r` give `p ⇒ r` with atomic cut and not without.
pub fn cut_divergence() -> SuiteResult {
    let mut r = SuiteResult::new("atomic cut divergence");
    let s = |t: &str| crate::syntax::parse_atomic_sequent(t).expect("fixed sequent");
    let rules = vec![GroundRule::axiom("r1", s("p => q")), GroundRule::axiom("r2", s("q => r"))];
    let goal = s("p => r");
    for (closure, expected) in [(Closure::ST, true), (Closure::HS, false)] {
        let b = make_base(rules.clone(), closure).expect("distinct ids");
        let got = derivable(&b, &goal);
        r.check(got == expected, || format!("{closure}: 'p => r' derivable is {got}"));
    }
    r
}

/// Default sample sizes used by `bes check` and the acceptance tests.
pub const DEFAULT_SAMPLES: usize = 1_000;

/// A named suite taking a seed and a sample count.
pub type Suite = (&'static str, fn(u64, usize) -> SuiteResult);

/// Every suite, in criterion order. Names match [`SuiteResult::name`].
pub const ALL: [Suite; 10] = [
    ("oracle equivalence", |seed, n| oracle_equivalence(seed, n.max(1) * 10)),
    ("completeness pipeline (full)", |seed, n| completeness(SimulationVariant::Full, seed, n.div_ceil(2))),
    ("completeness pipeline (quasi)", |seed, n| completeness(SimulationVariant::Quasi, seed, n.div_ceil(2))),
    ("proposition counterexample", |_, _| prop6()),
    ("atomic shadows of the support clauses", main_lemma_shadows),
    ("axiom-addition witness (single axiom)", witness_property),
    ("axiom-addition witness (nonempty Γ; one axiom per atom)", witness_property_repaired),
    ("monotonicity under extension", monotonicity),
    ("saturation against brute force", |_, _| saturation_vs_naive()),
    ("atomic cut divergence", |_, _| cut_divergence()),
];

pub fn all(seed: u64, samples: usize) -> Vec<SuiteResult> {
    ALL.iter().map(|(_, run)| run(seed, samples)).collect()
}
