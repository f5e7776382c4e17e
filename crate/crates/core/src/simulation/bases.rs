use std::fmt;

use crate::base::{Base, Closure, SchemaRule};
use crate::clp::RuleLabel;
use crate::syntax::{subformulas, Connective, Formula, FormulaSet};

use super::{AtomicMapping, SimError};

/// Which rule family a simulation base uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimulationVariant {
    /// Left and right rules for every connective, closed with atomic cut.
    Full,
    /// Right rules plus the `Q` eliminations, without atomic cut.
    Quasi,
}

impl SimulationVariant {
    pub fn closure(self) -> Closure {
        match self {
            SimulationVariant::Full => Closure::ST,
            SimulationVariant::Quasi => Closure::HS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SimulationVariant::Full => "full",
            SimulationVariant::Quasi => "quasi",
        }
    }
}

impl fmt::Display for SimulationVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn family(f: &Formula, v: SimulationVariant) -> &'static [RuleLabel] {
    use RuleLabel::*;
    let c = match f {
        Formula::Bottom => {
            return match v {
                SimulationVariant::Full => &[LBot, RBot],
                SimulationVariant::Quasi => &[QBot],
            }
        }
        Formula::Atom(_) => return &[],
        _ => f.as_binary().expect("compound").0,
    };
    match (c, v) {
        (Connective::And, SimulationVariant::Full) => &[LAnd, RAnd],
        (Connective::Or, SimulationVariant::Full) => &[LOr, ROr],
        (Connective::Imp, SimulationVariant::Full) => &[LImp, RImp],
        (Connective::And, SimulationVariant::Quasi) => &[QAnd1, QAnd2, RAnd],
        (Connective::Or, SimulationVariant::Quasi) => &[QOr, ROr],
        (Connective::Imp, SimulationVariant::Quasi) => &[QImp, RImp],
    }
}

/// The schema rules of `family` for every non-atomic subformula of `sigma`.
pub fn simulation_schemas(sigma: &FormulaSet, family_of: SimulationVariant) -> Vec<SchemaRule> {
    let mut out = Vec::new();
    for f in subformulas(sigma) {
        for &tag in family(&f, family_of) {
            out.push(SchemaRule::new(tag, f.clone()).expect("family matches the connective"));
        }
    }
    out
}

/// `𝒰` (closed under cut) for `Full`, `𝒬` (cut-free) for `Quasi`.
pub fn simulation_base(
    sigma: &FormulaSet,
    m: &AtomicMapping,
    v: SimulationVariant,
) -> Result<Base, SimError> {
    simulation_base_with(sigma, m, v, v.closure())
}

/// A simulation base with an explicit closure, e.g. the full family without cut.
pub fn simulation_base_with(
    sigma: &FormulaSet,
    m: &AtomicMapping,
    family_of: SimulationVariant,
    closure: Closure,
) -> Result<Base, SimError> {
    let scope = subformulas(sigma);
    if !m.covers(&scope) {
        return Err(SimError::Scope("the mapping does not cover every subformula".into()));
    }
    Ok(Base::new(Vec::new(), simulation_schemas(sigma, family_of), closure)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulation::atomic_mapping;
    use crate::syntax::parse_formula;

    fn set(items: &[&str]) -> FormulaSet {
        items.iter().map(|s| parse_formula(s).unwrap()).collect()
    }

    fn tags(b: &Base) -> Vec<String> {
        b.schemas().iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn families() {
        let sigma = set(&["q & r", "q"]);
        let m = atomic_mapping(&sigma);
        let full = simulation_base(&sigma, &m, SimulationVariant::Full).unwrap();
        assert_eq!(tags(&full), ["L-and[q & r]", "R-and[q & r]"]);
        assert_eq!(full.closure(), Closure::ST);

        let sigma = set(&["bot"]);
        let full = simulation_base(&sigma, &atomic_mapping(&sigma), SimulationVariant::Full).unwrap();
        assert!(tags(&full).contains(&"L-bot[bot]".to_string()));

        let sigma = set(&["p -> q"]);
        let quasi = simulation_base(&sigma, &atomic_mapping(&sigma), SimulationVariant::Quasi).unwrap();
        assert_eq!(tags(&quasi), ["Q-imp[p -> q]", "R-imp[p -> q]"]);
        assert_eq!(quasi.closure(), Closure::HS);

        let narrow = atomic_mapping(&set(&["q"]));
        assert!(simulation_base(&set(&["q & r"]), &narrow, SimulationVariant::Full).is_err());
    }
}
