//! Atomic bases, their extensions and the derivability relation.

mod derivation;
mod file;
pub mod naive;
mod rule;
mod saturate;

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Atom, AtomSet, AtomicSequent};
use crate::template::Shape;

pub use derivation::{check_derivation, AtomicDerivation};
pub use file::{parse_base_file, render_base_file, BaseFileError};
pub use rule::{Closure, GroundRule, RuleRef, SchemaRule};
pub use saturate::{DerivableSet, MAX_UNIVERSE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaseError {
    #[error("'{0}' is not an atomic sequent")]
    NonAtomic(String),
    #[error("rule id '{0}' is used twice")]
    DuplicateId(String),
    #[error("{0}")]
    BadSchema(String),
    #[error("universe of {0} atoms exceeds the supported {MAX_UNIVERSE}")]
    UniverseTooLarge(usize),
    #[error("'{0}' is not derivable")]
    NotDerivable(String),
}

/// A finite atomic base: ground rules, schema rules and a closure policy.
///
/// Extensions keep a pointer to the base they extend; the rules of a base are
/// its own together with all of its ancestors'.
#[derive(Clone, PartialEq, Eq)]
pub struct Base {
    ground: Vec<GroundRule>,
    schemas: Vec<SchemaRule>,
    closure: Closure,
    parent: Option<Arc<Base>>,
}

/// A base of ground rules closed under the given policy.
pub fn make_base(ground: Vec<GroundRule>, closure: Closure) -> Result<Base, BaseError> {
    Base::new(ground, Vec::new(), closure)
}

impl Base {
    pub fn new(
        ground: Vec<GroundRule>,
        schemas: Vec<SchemaRule>,
        closure: Closure,
    ) -> Result<Base, BaseError> {
        let b = Base {
            ground,
            schemas,
            closure,
            parent: None,
        };
        b.check_ids()?;
        Ok(b)
    }

    /// The empty base closed under `Ainit` and `Acut`.
    pub fn st() -> Base {
        make_base(Vec::new(), Closure::ST).expect("no rules")
    }

    /// The empty base closed under `Ainit`.
    pub fn hs() -> Base {
        make_base(Vec::new(), Closure::HS).expect("no rules")
    }

    /// Adds rules. An empty list gives back the same base.
    pub fn extend(&self, rules: Vec<GroundRule>) -> Result<Base, BaseError> {
        if rules.is_empty() {
            return Ok(self.clone());
        }
        let b = Base {
            ground: rules,
            schemas: Vec::new(),
            closure: self.closure,
            parent: Some(Arc::new(self.clone())),
        };
        b.check_ids()?;
        Ok(b)
    }

    /// Adds the axioms `⇒ S` for each `S`, with ids `{prefix}{i}`.
    pub fn extend_axioms<I>(&self, prefix: &str, conclusions: I) -> Result<Base, BaseError>
    where
        I: IntoIterator<Item = AtomicSequent>,
    {
        let rules = conclusions
            .into_iter()
            .enumerate()
            .map(|(i, s)| GroundRule::axiom(format!("{prefix}{}", i + 1), s))
            .collect();
        self.extend(rules)
    }

    fn check_ids(&self) -> Result<(), BaseError> {
        let mut seen = BTreeSet::new();
        for r in self.ground_rules() {
            if !seen.insert(r.id.as_str()) {
                return Err(BaseError::DuplicateId(r.id.clone()));
            }
        }
        Ok(())
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    pub fn parent(&self) -> Option<&Base> {
        self.parent.as_deref()
    }

    /// Ground rules added at this level only.
    pub fn own_rules(&self) -> &[GroundRule] {
        &self.ground
    }

    /// All ground rules, oldest ancestor first.
    pub fn ground_rules(&self) -> Vec<&GroundRule> {
        let mut out = self.parent.as_ref().map(|p| p.ground_rules()).unwrap_or_default();
        out.extend(self.ground.iter());
        out
    }

    /// All schema rules, oldest ancestor first.
    pub fn schemas(&self) -> Vec<&SchemaRule> {
        let mut out = self.parent.as_ref().map(|p| p.schemas()).unwrap_or_default();
        out.extend(self.schemas.iter());
        out
    }

    pub fn has_schema(&self, s: &SchemaRule) -> bool {
        self.schemas.contains(s) || self.parent.as_ref().is_some_and(|p| p.has_schema(s))
    }

    pub fn ground_rule(&self, id: &str) -> Option<&GroundRule> {
        self.ground
            .iter()
            .find(|r| r.id == id)
            .or_else(|| self.parent.as_ref().and_then(|p| p.ground_rule(id)))
    }

    /// Whether `other` is this base or one of its ancestors.
    pub fn extends(&self, other: &Base) -> bool {
        self == other || self.parent.as_ref().is_some_and(|p| p.extends(other))
    }

    /// Atoms mentioned by ground and schema rules.
    pub fn atoms(&self) -> AtomSet {
        let mut out: AtomSet = self.ground_rules().into_iter().flat_map(|r| r.atoms().cloned()).collect();
        for s in self.schemas() {
            out.extend(s.atoms());
        }
        out
    }

    /// Templates of a rule reference, if the base has that rule.
    pub fn shapes(&self, r: &RuleRef) -> Option<(Vec<Shape<Atom>>, Shape<Atom>)> {
        match r {
            RuleRef::Ground(id) => self.ground_rule(id).map(GroundRule::shapes),
            RuleRef::Init(p) => Some(rule::init_shapes(p)),
            RuleRef::Cut(p) => self.closure.has_cut().then(|| rule::cut_shapes(p)),
            RuleRef::Schema(s) => {
                if self.has_schema(s) {
                    s.shapes()
                } else {
                    None
                }
            }
        }
    }

    /// Minimal derivable sequents over the rule atoms plus `extra`.
    pub fn saturate(&self, extra: &AtomSet) -> Result<DerivableSet, BaseError> {
        DerivableSet::compute(self, extra)
    }

    pub fn derivable(&self, s: &AtomicSequent) -> Result<bool, BaseError> {
        Ok(self.saturate(&s.atoms())?.derivable(s))
    }

    /// A derivation of exactly `s`.
    pub fn derivation(&self, s: &AtomicSequent) -> Result<AtomicDerivation, BaseError> {
        self.saturate(&s.atoms())?
            .derivation(s)
            .ok_or_else(|| BaseError::NotDerivable(s.to_string()))
    }
}

impl std::fmt::Debug for Base {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&render_base_file(self))
    }
}
