use std::fmt;

use crate::clp::RuleLabel;
use crate::syntax::{Atom, AtomicSequent, Connective, Formula, Sequent};
use crate::template::Shape;

use super::BaseError;

/// Closure policy of a base: identity axioms only, or identity axioms and atomic cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Closure {
    /// Closed under `Ainit`.
    HS,
    /// Closed under `Ainit` and `Acut`.
    ST,
}

impl Closure {
    pub fn name(self) -> &'static str {
        match self {
            Closure::HS => "hs",
            Closure::ST => "st",
        }
    }

    pub fn has_cut(self) -> bool {
        self == Closure::ST
    }
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rule over atomic sequents. No premises makes it an atomic axiom.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundRule {
    pub id: String,
    pub premises: Vec<AtomicSequent>,
    pub conclusion: AtomicSequent,
}

impl GroundRule {
    pub fn new(id: impl Into<String>, premises: Vec<AtomicSequent>, conclusion: AtomicSequent) -> GroundRule {
        GroundRule {
            id: id.into(),
            premises,
            conclusion,
        }
    }

    pub fn axiom(id: impl Into<String>, conclusion: AtomicSequent) -> GroundRule {
        GroundRule::new(id, Vec::new(), conclusion)
    }

    /// Builds a rule from arbitrary sequents, rejecting non-atomic ones.
    pub fn from_sequents(
        id: impl Into<String>,
        premises: &[Sequent],
        conclusion: &Sequent,
    ) -> Result<GroundRule, BaseError> {
        let atomic = |s: &Sequent| s.to_atomic().ok_or_else(|| BaseError::NonAtomic(s.to_string()));
        Ok(GroundRule::new(
            id,
            premises.iter().map(atomic).collect::<Result<_, _>>()?,
            atomic(conclusion)?,
        ))
    }

    pub fn is_axiom(&self) -> bool {
        self.premises.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.premises
            .iter()
            .chain(std::iter::once(&self.conclusion))
            .flat_map(|s| s.left.iter().chain(&s.right))
    }

    pub fn shapes(&self) -> (Vec<Shape<Atom>>, Shape<Atom>) {
        (
            self.premises.iter().map(shape).collect(),
            shape(&self.conclusion),
        )
    }
}

impl fmt::Display for GroundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prem: Vec<String> = self.premises.iter().map(|p| p.to_string()).collect();
        if prem.is_empty() {
            write!(f, "|- {}", self.conclusion)
        } else {
            write!(f, "{} |- {}", prem.join(" ; "), self.conclusion)
        }
    }
}

impl fmt::Debug for GroundRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {self}", self.id)
    }
}

fn shape(s: &AtomicSequent) -> Shape<Atom> {
    Shape {
        left: s.left.clone(),
        right: s.right.clone(),
    }
}

/// One rule of a (quasi-)simulation family, fixed to a principal formula.
///
/// The rule acts on the mapped atoms of the principal formula and its immediate
/// subformulas; contexts are supplied by derivability as for any base rule.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchemaRule {
    pub tag: RuleLabel,
    pub principal: Formula,
}

impl SchemaRule {
    pub fn new(tag: RuleLabel, principal: Formula) -> Result<SchemaRule, BaseError> {
        let r = SchemaRule { tag, principal };
        if r.shapes().is_none() {
            return Err(BaseError::BadSchema(format!(
                "{tag} cannot have principal formula {}",
                r.principal
            )));
        }
        Ok(r)
    }

    /// Premise and conclusion templates over mapped atoms.
    pub fn shapes(&self) -> Option<(Vec<Shape<Atom>>, Shape<Atom>)> {
        use RuleLabel::*;
        let m = Atom::mapped;
        let f = &self.principal;
        let pf = m(f);
        let l = |xs: Vec<Atom>| Shape::new(xs, []);
        let r = |xs: Vec<Atom>| Shape::new([], xs);
        if *f == Formula::Bottom {
            return match self.tag {
                LBot => Some((vec![], l(vec![pf]))),
                RBot => Some((vec![Shape::empty()], r(vec![pf]))),
                QBot => Some((vec![r(vec![pf])], Shape::empty())),
                _ => None,
            };
        }
        let (c, a, b) = f.as_binary()?;
        let (pa, pb) = (m(a), m(b));
        Some(match (self.tag, c) {
            (LAnd, Connective::And) => (vec![l(vec![pa, pb])], l(vec![pf])),
            (RAnd, Connective::And) => (vec![r(vec![pa]), r(vec![pb])], r(vec![pf])),
            (QAnd1, Connective::And) => (vec![r(vec![pf])], r(vec![pa])),
            (QAnd2, Connective::And) => (vec![r(vec![pf])], r(vec![pb])),
            (LOr, Connective::Or) => (vec![l(vec![pa]), l(vec![pb])], l(vec![pf])),
            (ROr, Connective::Or) => (vec![r(vec![pa, pb])], r(vec![pf])),
            (QOr, Connective::Or) => (vec![r(vec![pf])], r(vec![pa, pb])),
            (LImp, Connective::Imp) => (vec![r(vec![pa]), l(vec![pb])], l(vec![pf])),
            (RImp, Connective::Imp) => (vec![Shape::new([pa], [pb])], r(vec![pf])),
            (QImp, Connective::Imp) => (vec![r(vec![pf]), r(vec![pa])], r(vec![pb])),
            _ => return None,
        })
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let (prem, concl) = self.shapes().expect("validated at construction");
        let mut out: Vec<Atom> = prem
            .iter()
            .chain(std::iter::once(&concl))
            .flat_map(|s| s.left.iter().chain(&s.right).cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for SchemaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.tag, self.principal)
    }
}

impl fmt::Debug for SchemaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// What justifies a step of an atomic derivation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleRef {
    /// A ground rule of the base, by id.
    Ground(String),
    /// The identity axiom `p ⇒ p`.
    Init(Atom),
    /// Atomic cut on `p`.
    Cut(Atom),
    Schema(SchemaRule),
}

impl RuleRef {
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RuleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleRef::Ground(id) => f.write_str(id),
            RuleRef::Init(a) => write!(f, "Ainit({a})"),
            RuleRef::Cut(a) => write!(f, "Acut({a})"),
            RuleRef::Schema(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for RuleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn init_shapes(p: &Atom) -> (Vec<Shape<Atom>>, Shape<Atom>) {
    (vec![], Shape::new([p.clone()], [p.clone()]))
}

pub(crate) fn cut_shapes(p: &Atom) -> (Vec<Shape<Atom>>, Shape<Atom>) {
    (
        vec![Shape::new([], [p.clone()]), Shape::new([p.clone()], [])],
        Shape::empty(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn schema_shapes_follow_the_principal() {
        let f = parse_formula("q & r").unwrap();
        assert!(SchemaRule::new(RuleLabel::LAnd, f.clone()).is_ok());
        assert!(SchemaRule::new(RuleLabel::LOr, f.clone()).is_err());
        assert!(SchemaRule::new(RuleLabel::Init, f.clone()).is_err());
        let s = SchemaRule::new(RuleLabel::QAnd2, f).unwrap();
        let (prem, concl) = s.shapes().unwrap();
        assert_eq!(prem[0].right.iter().next().unwrap().name(), "@(q & r)");
        assert_eq!(concl.right.iter().next().unwrap().name(), "r");
        let bot = SchemaRule::new(RuleLabel::LBot, Formula::Bottom).unwrap();
        assert!(bot.shapes().unwrap().0.is_empty());
    }
}
