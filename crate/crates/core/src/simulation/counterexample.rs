//! The base showing that cut-free support over `ℋ𝒮` is not closed under
//! the consequence `q ∧ r ⊩ q`.

use serde_json::{json, Value};

use crate::base::{Base, BaseError, Closure};
use crate::syntax::{parse_formula, Atom, AtomSet, AtomicSequent, FormulaSet};

use super::{atomic_mapping, simulation_base_with, SimulationVariant};

/// One derivability query with its expected and computed answers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub closure: Closure,
    pub sequent: AtomicSequent,
    pub expected: bool,
    pub actual: bool,
}

impl Fact {
    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone)]
pub struct Prop6Report {
    pub sigma: FormulaSet,
    pub hs_base: Base,
    pub st_base: Base,
    pub facts: Vec<Fact>,
    pub note: &'static str,
}

impl Prop6Report {
    pub fn all_hold(&self) -> bool {
        self.facts.iter().all(Fact::holds)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let sigma: Vec<String> = self.sigma.iter().map(|f| f.to_string()).collect();
        out.push_str(&format!("sigma: {}\n", sigma.join(", ")));
        out.push_str("extension: |- => @(q & r)\n");
        for f in &self.facts {
            out.push_str(&format!(
                "{}  {:<16} expected {:<5} got {:<5} {}\n",
                f.closure,
                f.sequent.to_string(),
                if f.expected { "|-" } else { "|/-" },
                if f.actual { "|-" } else { "|/-" },
                if f.holds() { "ok" } else { "MISMATCH" }
            ));
        }
        out.push_str(&format!("note: {}\n", self.note));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sigma": self.sigma.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "facts": self.facts.iter().map(|f| json!({
                "closure": f.closure.name(),
                "sequent": f.sequent.to_string(),
                "expected": f.expected,
                "derivable": f.actual,
            })).collect::<Vec<_>>(),
            "all_hold": self.all_hold(),
            "note": self.note,
        })
    }
}

const NOTE: &str = "the prose names => p and => q as underivable; the queries checked here are => q and => r";

/// Builds `𝒰` for `{q ∧ r, q}` under both closures, adds `⇒ p^{q∧r}`, and
/// saturates.
pub fn prop6_counterexample() -> Result<Prop6Report, BaseError> {
    let qr = parse_formula("q & r").expect("fixed formula");
    let q = parse_formula("q").expect("fixed formula");
    let sigma: FormulaSet = [qr.clone(), q].into();
    let m = atomic_mapping(&sigma);
    let p_qr = Atom::mapped(&qr);
    let (q, r) = (crate::syntax::atom("q"), crate::syntax::atom("r"));

    let build = |closure| -> Result<Base, BaseError> {
        let b = simulation_base_with(&sigma, &m, SimulationVariant::Full, closure).map_err(|e| match e {
            super::SimError::Base(b) => b,
            other => unreachable!("mapping covers sigma: {other}"),
        })?;
        b.extend_axioms("ax", [AtomicSequent::categorical([p_qr.clone()].into())])
    };
    let hs = build(Closure::HS)?;
    let st = build(Closure::ST)?;

    let cat = |a: &Atom| AtomicSequent::categorical([a.clone()].into());
    let hyp = |a: &Atom| AtomicSequent::new([p_qr.clone()].into(), [a.clone()].into());
    let queries = [
        (Closure::HS, cat(&p_qr), true),
        (Closure::HS, hyp(&q), true),
        (Closure::HS, hyp(&r), true),
        (Closure::HS, cat(&q), false),
        (Closure::HS, cat(&r), false),
        (Closure::ST, cat(&q), true),
    ];
    let universe: AtomSet = [p_qr.clone(), q.clone(), r.clone()].into();
    let hs_set = hs.saturate(&universe)?;
    let st_set = st.saturate(&universe)?;
    let facts = queries
        .into_iter()
        .map(|(closure, sequent, expected)| {
            let set = if closure == Closure::HS { &hs_set } else { &st_set };
            let actual = set.derivable(&sequent);
            Fact {
                closure,
                sequent,
                expected,
                actual,
            }
        })
        .collect();
    Ok(Prop6Report {
        sigma,
        hs_base: hs,
        st_base: st,
        facts,
        note: NOTE,
    })
}
