//! Support in a base, in the fragments where it can be decided or refuted.
//!
//! Hypotheses are discharged by axioms: for atomic `H`, `H ⊩_B Δ` holds
//! exactly when `⊩_{B+H} Δ`, where `B+H` adds `⇒ h` for each `h ∈ H`. A
//! derivation in `B+H` lifts to any extension proving `⇒ Θ, h` by grafting
//! those proofs onto the axiom leaves, which carries `Θ` down to the root.

mod judgment;

use std::fmt;

use thiserror::Error;

use crate::base::{check_derivation, AtomicDerivation, Base, BaseError, Closure};
use crate::clp::{prove, Decision};
use crate::simulation::{atomic_mapping, simulation_schemas, SimError, SimulationVariant};
use crate::syntax::{set_atoms, AtomSet, AtomicSequent, FormulaSet, Sequent};

pub use judgment::{parse_judgment, unfold, InfNormalForm, Judgment, Obligation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupportError {
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error("scope violation: {0}")]
    Scope(String),
    #[error("'{0}' is not atomic")]
    NonAtomic(String),
}

impl From<SimError> for SupportError {
    fn from(e: SimError) -> SupportError {
        match e {
            SimError::Base(b) => SupportError::Base(b),
            other => SupportError::Scope(other.to_string()),
        }
    }
}

/// A derivation found in some extension of the base under evaluation.
#[derive(Debug, Clone)]
pub struct Derived {
    pub base: Base,
    pub derivation: AtomicDerivation,
}

/// An extension of the base in which an atomic query fails.
#[derive(Debug, Clone)]
pub struct Refutation {
    pub extension: Base,
    pub query: AtomicSequent,
}

#[derive(Debug, Clone)]
pub enum SupportVerdict {
    Supported(Vec<Derived>),
    NotSupported(Refutation),
    Unknown(String),
}

impl SupportVerdict {
    pub fn is_supported(&self) -> bool {
        matches!(self, SupportVerdict::Supported(_))
    }

    pub fn is_not_supported(&self) -> bool {
        matches!(self, SupportVerdict::NotSupported(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, SupportVerdict::Unknown(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            SupportVerdict::Supported(_) => "supported",
            SupportVerdict::NotSupported(_) => "not supported",
            SupportVerdict::Unknown(_) => "unknown",
        }
    }

    /// Re-checks the witness against the base it was computed for.
    pub fn verify(&self, base: &Base) -> Result<(), String> {
        match self {
            SupportVerdict::Supported(ds) => ds.iter().try_for_each(|d| {
                if !d.base.extends(base) {
                    return Err("derivation lives in a base that does not extend the input".into());
                }
                check_derivation(&d.derivation, &d.base)
            }),
            SupportVerdict::NotSupported(r) => {
                if !r.extension.extends(base) {
                    return Err("witness does not extend the input base".into());
                }
                match r.extension.derivable(&r.query) {
                    Ok(false) => Ok(()),
                    Ok(true) => Err(format!("'{}' is derivable in the witness", r.query)),
                    Err(e) => Err(e.to_string()),
                }
            }
            SupportVerdict::Unknown(_) => Ok(()),
        }
    }
}

impl fmt::Display for SupportVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportVerdict::Supported(ds) => {
                writeln!(f, "supported")?;
                for d in ds {
                    write!(f, "{}", d.derivation.to_text())?;
                }
                Ok(())
            }
            SupportVerdict::NotSupported(r) => {
                writeln!(f, "not supported")?;
                writeln!(f, "fails: {}", r.query)?;
                let added: Vec<String> = added_rules(&r.extension).collect();
                if !added.is_empty() {
                    writeln!(f, "in the extension by:")?;
                    for line in added {
                        writeln!(f, "  {line}")?;
                    }
                }
                Ok(())
            }
            SupportVerdict::Unknown(why) => writeln!(f, "unknown: {why}"),
        }
    }
}

/// Rules added by witness extensions, i.e. those with generated ids.
fn added_rules(b: &Base) -> impl Iterator<Item = String> + '_ {
    b.ground_rules()
        .into_iter()
        .filter(|r| r.id.starts_with(HYP) || r.id.starts_with(EXT))
        .map(|r| r.to_string())
}

const HYP: &str = "hyp";
const EXT: &str = "ext";

/// `base` plus `⇒ h` for each `h`, with ids that cannot clash.
fn with_axioms(base: &Base, stem: &str, heads: Vec<AtomicSequent>) -> Result<Base, BaseError> {
    let taken: Vec<&str> = base.ground_rules().into_iter().map(|r| r.id.as_str()).collect();
    let mut k = 0;
    let prefix = loop {
        let p = format!("{stem}{k}:");
        if !taken.iter().any(|id| id.starts_with(&p)) {
            break p;
        }
        k += 1;
    };
    base.extend_axioms(&prefix, heads)
}

fn with_hypotheses(base: &Base, h: &AtomSet) -> Result<Base, BaseError> {
    with_axioms(
        base,
        HYP,
        h.iter().map(|a| AtomicSequent::categorical([a.clone()].into())).collect(),
    )
}

/// Exact: `Γ ⊩_B Δ` for atomic `Γ`, `Δ`.
pub fn support_atomic(base: &Base, gamma: &AtomSet, delta: &AtomSet) -> Result<SupportVerdict, SupportError> {
    let ext = with_hypotheses(base, gamma)?;
    let query = AtomicSequent::categorical(delta.clone());
    let mut universe = gamma.clone();
    universe.extend(delta.iter().cloned());
    let set = ext.saturate(&universe)?;
    Ok(match set.derivation(&query) {
        Some(derivation) => SupportVerdict::Supported(vec![Derived { base: ext, derivation }]),
        None => SupportVerdict::NotSupported(Refutation { extension: ext, query }),
    })
}

/// Same as [`support_atomic`] on formula sets, rejecting compound members.
pub fn support_atomic_formulas(
    base: &Base,
    gamma: &FormulaSet,
    delta: &FormulaSet,
) -> Result<SupportVerdict, SupportError> {
    let atomic = |s: &FormulaSet| -> Result<AtomSet, SupportError> {
        s.iter()
            .map(|f| f.as_atom().cloned().ok_or_else(|| SupportError::NonAtomic(f.to_string())))
            .collect()
    };
    support_atomic(base, &atomic(gamma)?, &atomic(delta)?)
}

/// Exact whenever unfolding leaves only atomic hypotheses; `Unknown` otherwise.
pub fn support_exact(base: &Base, j: &Judgment) -> Result<SupportVerdict, SupportError> {
    let nf = unfold(j);
    let mut parts = Vec::with_capacity(nf.obligations.len());
    for o in &nf.obligations {
        let Some(h) = o.atomic_hypotheses() else {
            return Ok(SupportVerdict::Unknown(format!("compound hypotheses in '{o}'")));
        };
        parts.push((h, &o.succedents));
    }
    let mut derived = Vec::new();
    for (h, s) in parts {
        match support_atomic(base, &h, s)? {
            SupportVerdict::Supported(ds) => derived.extend(ds),
            other => return Ok(other),
        }
    }
    Ok(SupportVerdict::Supported(derived))
}

fn contains_all(base: &Base, sigma: &FormulaSet, v: SimulationVariant) -> bool {
    simulation_schemas(sigma, v).iter().all(|s| base.has_schema(s))
}

/// Support over an extension of a simulation base covering `Γ ∪ Δ`, read
/// off from derivability of the mapped atoms.
///
/// Over extensions of the full family with cut the query is
/// `α(Γ) ⇒ α(Δ)`; over extensions of the quasi family it is `⇒ α(Δ)` once
/// `⇒ α(A)` is added for each `A ∈ Γ`. The full family without cut gets the
/// exact evaluation instead.
pub fn support_oracle(base: &Base, j: &Judgment) -> Result<SupportVerdict, SupportError> {
    let sigma: FormulaSet = j.antecedents.union(&j.succedents).cloned().collect();
    let m = atomic_mapping(&sigma);
    let gamma = m.apply_set(&j.antecedents)?;
    let delta = m.apply_set(&j.succedents)?;
    let full = contains_all(base, &sigma, SimulationVariant::Full);
    if full && base.closure() == Closure::ST {
        let query = AtomicSequent::new(gamma, delta);
        let set = base.saturate(&query.atoms())?;
        return Ok(match set.derivation(&query) {
            Some(derivation) => SupportVerdict::Supported(vec![Derived {
                base: base.clone(),
                derivation,
            }]),
            None => SupportVerdict::NotSupported(Refutation {
                extension: base.clone(),
                query,
            }),
        });
    }
    if contains_all(base, &sigma, SimulationVariant::Quasi) {
        return support_atomic(base, &gamma, &delta);
    }
    if full {
        return support_exact(base, j);
    }
    Err(SupportError::Scope(format!("the base does not extend a simulation base for '{j}'")))
}

/// Largest number of extensions [`support_refute`] will try.
pub const REFUTE_LIMIT: usize = 20_000;

/// Searches extensions by at most `budget` atomic axioms for one breaking an
/// obligation. Never answers `Supported`.
pub fn support_refute(base: &Base, j: &Judgment, budget: usize) -> Result<SupportVerdict, SupportError> {
    let nf = unfold(j);
    let mut obligations = Vec::new();
    for o in &nf.obligations {
        match o.atomic_hypotheses() {
            Some(h) => obligations.push((h, o.succedents.clone())),
            None => return Ok(SupportVerdict::Unknown("compound hypotheses".into())),
        }
    }
    let mut universe = base.atoms();
    universe.extend(set_atoms(&j.antecedents));
    universe.extend(set_atoms(&j.succedents));
    let heads = categorical_heads(&universe);

    let mut tried = 0;
    let mut combo: Vec<usize> = Vec::new();
    for k in 0..=budget.min(heads.len()) {
        combo.clear();
        combo.extend(0..k);
        loop {
            tried += 1;
            if tried > REFUTE_LIMIT {
                return Ok(SupportVerdict::Unknown(format!("gave up after {REFUTE_LIMIT} extensions")));
            }
            let ext = with_axioms(base, EXT, combo.iter().map(|&i| heads[i].clone()).collect())?;
            for (h, s) in &obligations {
                if let v @ SupportVerdict::NotSupported(_) = support_atomic(&ext, h, s)? {
                    return Ok(v);
                }
            }
            if !next_combination(&mut combo, heads.len()) {
                break;
            }
        }
    }
    Ok(SupportVerdict::Unknown(format!("no refutation within {budget} added axioms")))
}

/// `⇒ S` for every nonempty `S` over the universe, smaller sets first.
fn categorical_heads(universe: &AtomSet) -> Vec<AtomicSequent> {
    let atoms: Vec<_> = universe.iter().cloned().collect();
    let n = atoms.len().min(12);
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|m| AtomicSequent::from_iters([], (0..n).filter(|i| m >> i & 1 == 1).map(|i| atoms[i].clone())))
        .collect()
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

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    WithCut,
    CutFree,
}

/// Validity together with its certificate, a proof or a falsifying valuation.
#[derive(Debug, Clone)]
pub struct Validity {
    pub flavor: Flavor,
    pub valid: bool,
    pub certificate: Decision,
}

/// Both flavors coincide with provability in the calculus.
pub fn valid(gamma: &FormulaSet, delta: &FormulaSet, flavor: Flavor) -> Validity {
    let certificate = prove(&Sequent::new(gamma.clone(), delta.clone()));
    Validity {
        flavor,
        valid: certificate.is_provable(),
        certificate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{make_base, GroundRule};
    use crate::syntax::{atom, parse_atomic_sequent, parse_formula, Atom};

    fn seq(s: &str) -> AtomicSequent {
        parse_atomic_sequent(s).unwrap()
    }

    fn atoms(names: &[&str]) -> AtomSet {
        names.iter().map(|n| atom(n)).collect()
    }

    fn j(s: &str) -> Judgment {
        parse_judgment(s).unwrap()
    }

    #[test]
    fn atomic_examples() {
        let st = Base::st();
        let v = support_atomic(&st, &atoms(&["p"]), &atoms(&["p"])).unwrap();
        assert!(v.is_supported());
        v.verify(&st).unwrap();
        let v = support_atomic(&st, &AtomSet::new(), &atoms(&["p"])).unwrap();
        assert!(v.is_not_supported());
        v.verify(&st).unwrap();

        let chain = |c| {
            make_base(
                vec![GroundRule::axiom("r1", seq("p => q")), GroundRule::axiom("r2", seq("q => r"))],
                c,
            )
            .unwrap()
        };
        assert!(support_atomic(&chain(Closure::ST), &atoms(&["p"]), &atoms(&["r"]))
            .unwrap()
            .is_supported());
        // without cut the axiom for p cannot be chained through p ⇒ q
        let hs = chain(Closure::HS);
        let v = support_atomic(&hs, &atoms(&["p"]), &atoms(&["r"])).unwrap();
        assert!(v.is_not_supported());
        v.verify(&hs).unwrap();
        assert!(support_atomic(&hs, &atoms(&["p"]), &atoms(&["p"])).unwrap().is_supported());
    }

    #[test]
    fn exact_unfolding() {
        let st = Base::st();
        assert!(support_exact(&st, &j("|= p -> p")).unwrap().is_supported());
        assert!(support_exact(&st, &j("|= p | (p -> bot)")).unwrap().is_supported());
        assert!(support_exact(&st, &j("|= p")).unwrap().is_not_supported());
        assert!(support_exact(&st, &j("p & q |= p")).unwrap().is_unknown());
        let hs = Base::hs();
        assert!(support_exact(&hs, &j("p |= q -> p")).unwrap().is_supported());
    }

    #[test]
    fn oracle_examples() {
        let qr = parse_formula("q & r").unwrap();
        let sigma: FormulaSet = [qr.clone(), parse_formula("q").unwrap(), parse_formula("r").unwrap()].into();
        let m = atomic_mapping(&sigma);
        let ax = [AtomicSequent::categorical([Atom::mapped(&qr)].into())];
        let st = crate::simulation::simulation_base(&sigma, &m, SimulationVariant::Full).unwrap();
        let st_ax = st.extend_axioms("a", ax.clone()).unwrap();
        let v = support_oracle(&st_ax, &j("|= q & r")).unwrap();
        assert!(v.is_supported());
        v.verify(&st_ax).unwrap();

        let hs = crate::simulation::simulation_base_with(&sigma, &m, SimulationVariant::Full, Closure::HS).unwrap();
        let hs_ax = hs.extend_axioms("a", ax).unwrap();
        let v = support_oracle(&hs_ax, &j("|= q & r")).unwrap();
        assert!(v.is_not_supported());
        v.verify(&hs_ax).unwrap();

        assert!(support_oracle(&st, &j("q & r |= q")).unwrap().is_supported());
        assert!(matches!(support_oracle(&Base::st(), &j("|= q & r")), Err(SupportError::Scope(_))));
    }

    #[test]
    fn refuter() {
        let st = Base::st();
        let v = support_refute(&st, &j("|= p"), 2).unwrap();
        let SupportVerdict::NotSupported(r) = &v else { panic!("{v}") };
        assert_eq!(r.extension, st);
        assert!(support_refute(&st, &j("|= p -> p"), 1).unwrap().is_unknown());
        assert!(support_refute(&st, &j("p & q |= p"), 1).unwrap().is_unknown());
    }

    #[test]
    fn validity() {
        let f = |s: &str| -> FormulaSet { [parse_formula(s).unwrap()].into() };
        assert!(valid(&f("q & r"), &f("q"), Flavor::WithCut).valid);
        assert!(valid(&FormulaSet::new(), &f("p | (p -> bot)"), Flavor::CutFree).valid);
        let v = valid(&FormulaSet::new(), &f("p"), Flavor::WithCut);
        assert!(!v.valid);
        let Decision::Refutable(val) = v.certificate else { panic!() };
        assert_eq!(val.get(&atom("p")), Some(&false));
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all.last().unwrap(), &vec![2, 3]);
        assert!(!next_combination(&mut [], 3));
    }
}
