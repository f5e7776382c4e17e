//! Forward saturation up to subsumption.
//!
//! Sequents over the universe are pairs of bitsets. A rule with premise
//! templates `Fᵢ` and conclusion template `F` fires on minimal facts `Mᵢ`
//! (weakened with `Fᵢ` where needed) and yields `F ∪ ⋃(Mᵢ ∖ Fᵢ)`; every other
//! instance of the rule is a weakening of one of these. A fact disjoint from
//! its template would only reproduce a weakening of itself, so it is skipped.

use std::collections::{HashMap, VecDeque};

use crate::syntax::{Atom, AtomSet, AtomicSequent};
use crate::template::Shape;

use super::derivation::AtomicDerivation;
use super::rule::{cut_shapes, init_shapes, RuleRef};
use super::{Base, BaseError, Closure};

/// Largest universe a saturation can handle.
pub const MAX_UNIVERSE: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
struct Bits {
    l: u128,
    r: u128,
}

impl Bits {
    fn subset(self, o: Bits) -> bool {
        self.l & !o.l == 0 && self.r & !o.r == 0
    }

    fn meets(self, o: Bits) -> bool {
        self.l & o.l != 0 || self.r & o.r != 0
    }

    fn union(self, o: Bits) -> Bits {
        Bits {
            l: self.l | o.l,
            r: self.r | o.r,
        }
    }

    fn minus(self, o: Bits) -> Bits {
        Bits {
            l: self.l & !o.l,
            r: self.r & !o.r,
        }
    }
}

#[derive(Debug, Clone)]
struct Compiled {
    rule: RuleRef,
    prem: Vec<Bits>,
    concl: Bits,
}

#[derive(Debug, Clone)]
struct Fact {
    seq: Bits,
    rule: usize,
    support: Vec<usize>,
}

/// The minimal derivable sequents of a base over a finite universe, each with
/// one justification.
#[derive(Debug, Clone)]
pub struct DerivableSet {
    universe: Vec<Atom>,
    position: HashMap<Atom, usize>,
    closure: Closure,
    rules: Vec<Compiled>,
    facts: Vec<Fact>,
    alive: Vec<bool>,
}

impl DerivableSet {
    pub(crate) fn compute(base: &Base, extra: &AtomSet) -> Result<DerivableSet, BaseError> {
        let mut atoms = base.atoms();
        atoms.extend(extra.iter().cloned());
        if atoms.len() > MAX_UNIVERSE {
            return Err(BaseError::UniverseTooLarge(atoms.len()));
        }
        let universe: Vec<Atom> = atoms.into_iter().collect();
        let position = universe.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let mut set = DerivableSet {
            universe,
            position,
            closure: base.closure(),
            rules: Vec::new(),
            facts: Vec::new(),
            alive: Vec::new(),
        };
        set.compile(base);
        set.run();
        Ok(set)
    }

    fn bits(&self, s: &Shape<Atom>) -> Bits {
        let side = |xs: &AtomSet| xs.iter().fold(0u128, |acc, a| acc | 1 << self.position[a]);
        Bits {
            l: side(&s.left),
            r: side(&s.right),
        }
    }

    fn sequent(&self, b: Bits) -> AtomicSequent {
        let side = |x: u128| -> AtomSet {
            (0..self.universe.len())
                .filter(|i| x >> i & 1 == 1)
                .map(|i| self.universe[i].clone())
                .collect()
        };
        AtomicSequent::new(side(b.l), side(b.r))
    }

    fn push_rule(&mut self, rule: RuleRef, shapes: (Vec<Shape<Atom>>, Shape<Atom>)) {
        let prem = shapes.0.iter().map(|s| self.bits(s)).collect();
        let concl = self.bits(&shapes.1);
        self.rules.push(Compiled { rule, prem, concl });
    }

    fn compile(&mut self, base: &Base) {
        for a in self.universe.clone() {
            self.push_rule(RuleRef::Init(a.clone()), init_shapes(&a));
        }
        for r in base.ground_rules() {
            self.push_rule(RuleRef::Ground(r.id.clone()), r.shapes());
        }
        for s in base.schemas() {
            let shapes = s.shapes().expect("validated schema");
            self.push_rule(RuleRef::Schema(s.clone()), shapes);
        }
        if self.closure.has_cut() {
            for a in self.universe.clone() {
                self.push_rule(RuleRef::Cut(a.clone()), cut_shapes(&a));
            }
        }
    }

    fn run(&mut self) {
        let mut queue = VecDeque::new();
        let mut live: Vec<usize> = Vec::new();
        // processed facts meeting the template of (rule, premise)
        let mut index: Vec<Vec<Vec<usize>>> =
            self.rules.iter().map(|r| vec![Vec::new(); r.prem.len()]).collect();

        for r in 0..self.rules.len() {
            if self.rules[r].prem.is_empty() {
                let seq = self.rules[r].concl;
                self.insert(seq, r, Vec::new(), &mut live, &mut queue);
            }
        }

        let mut fresh = Vec::new();
        while let Some(f) = queue.pop_front() {
            if !self.alive[f] {
                continue;
            }
            let seq = self.facts[f].seq;
            let mut slots = Vec::new();
            for (r, rule) in self.rules.iter().enumerate() {
                for (i, t) in rule.prem.iter().enumerate() {
                    if seq.meets(*t) {
                        index[r][i].push(f);
                        slots.push((r, i));
                    }
                }
            }
            for (r, i) in slots {
                let rule = &self.rules[r];
                let mut chosen = vec![0; rule.prem.len()];
                self.combine(r, i, f, 0, rule.concl, &index[r], &mut chosen, &mut fresh);
            }
            for (seq, r, support) in fresh.drain(..) {
                self.insert(seq, r, support, &mut live, &mut queue);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn combine(
        &self,
        r: usize,
        fixed: usize,
        f: usize,
        j: usize,
        acc: Bits,
        index: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<(Bits, usize, Vec<usize>)>,
    ) {
        let rule = &self.rules[r];
        if j == rule.prem.len() {
            out.push((acc, r, chosen.clone()));
            return;
        }
        let t = rule.prem[j];
        if j == fixed {
            chosen[j] = f;
            let next = acc.union(self.facts[f].seq.minus(t));
            self.combine(r, fixed, f, j + 1, next, index, chosen, out);
            return;
        }
        for &g in &index[j] {
            if !self.alive[g] {
                continue;
            }
            chosen[j] = g;
            let next = acc.union(self.facts[g].seq.minus(t));
            self.combine(r, fixed, f, j + 1, next, index, chosen, out);
        }
    }

    fn insert(
        &mut self,
        seq: Bits,
        rule: usize,
        support: Vec<usize>,
        live: &mut Vec<usize>,
        queue: &mut VecDeque<usize>,
    ) {
        if live.iter().any(|&g| self.facts[g].seq.subset(seq)) {
            return;
        }
        let facts = &self.facts;
        let alive = &mut self.alive;
        live.retain(|&g| {
            if seq.subset(facts[g].seq) {
                alive[g] = false;
                false
            } else {
                true
            }
        });
        let id = self.facts.len();
        self.facts.push(Fact { seq, rule, support });
        self.alive.push(true);
        live.push(id);
        queue.push_back(id);
    }

    pub fn universe(&self) -> &[Atom] {
        &self.universe
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    /// The antichain, in the order the facts were found.
    pub fn minimal(&self) -> Vec<AtomicSequent> {
        self.live_ids().map(|i| self.sequent(self.facts[i].seq)).collect()
    }

    pub fn len(&self) -> usize {
        self.live_ids().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn live_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.facts.len()).filter(|&i| self.alive[i])
    }

    /// The justification stored for a minimal sequent.
    pub fn provenance(&self, s: &AtomicSequent) -> Option<(RuleRef, Vec<AtomicSequent>)> {
        let b = self.restrict(s)?;
        let id = self.live_ids().find(|&i| self.facts[i].seq == b)?;
        let fact = &self.facts[id];
        Some((
            self.rules[fact.rule].rule.clone(),
            fact.support.iter().map(|&g| self.sequent(self.facts[g].seq)).collect(),
        ))
    }

    /// `s` restricted to the universe, or `None` if an atom outside the
    /// universe occurs on both sides.
    fn restrict(&self, s: &AtomicSequent) -> Option<Bits> {
        let mut b = Bits::default();
        for a in &s.left {
            if let Some(&i) = self.position.get(a) {
                b.l |= 1 << i;
            }
        }
        for a in &s.right {
            match self.position.get(a) {
                Some(&i) => b.r |= 1 << i,
                None if s.left.contains(a) => return None,
                None => {}
            }
        }
        Some(b)
    }

    /// Atoms outside the universe occur in no rule, so they can only enter by
    /// weakening or as an identity axiom.
    pub fn derivable(&self, s: &AtomicSequent) -> bool {
        match self.restrict(s) {
            None => true,
            Some(b) => self.live_ids().any(|i| self.facts[i].seq.subset(b)),
        }
    }

    /// A minimal sequent subsuming `s`, if any.
    pub fn witness(&self, s: &AtomicSequent) -> Option<AtomicSequent> {
        let b = self.restrict(s)?;
        self.live_ids()
            .find(|&i| self.facts[i].seq.subset(b))
            .map(|i| self.sequent(self.facts[i].seq))
    }

    /// A derivation whose conclusion is exactly `s`.
    pub fn derivation(&self, s: &AtomicSequent) -> Option<AtomicDerivation> {
        match self.restrict(s) {
            None => {
                let p = s.left.iter().find(|a| s.right.contains(*a) && !self.position.contains_key(*a))?;
                Some(AtomicDerivation::new(s.clone(), RuleRef::Init(p.clone()), Vec::new()))
            }
            Some(b) => {
                let id = self.live_ids().find(|&i| self.facts[i].seq.subset(b))?;
                Some(self.reconstruct(id, s))
            }
        }
    }

    fn reconstruct(&self, id: usize, target: &AtomicSequent) -> AtomicDerivation {
        let fact = &self.facts[id];
        let rule = &self.rules[fact.rule];
        let own = self.sequent(fact.seq);
        let extra = AtomicSequent::new(
            target.left.difference(&own.left).cloned().collect(),
            target.right.difference(&own.right).cloned().collect(),
        );
        let children = fact
            .support
            .iter()
            .enumerate()
            .map(|(i, &g)| {
                let mut t = self.sequent(self.facts[g].seq.union(rule.prem[i]));
                if i == 0 {
                    t = t.union(&extra);
                }
                self.reconstruct(g, &t)
            })
            .collect();
        AtomicDerivation::new(target.clone(), rule.rule.clone(), children)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{check_derivation, make_base, GroundRule};
    use crate::syntax::{atom, parse_atomic_sequent};

    fn seq(s: &str) -> AtomicSequent {
        parse_atomic_sequent(s).unwrap()
    }

    fn chain(closure: Closure) -> Base {
        make_base(
            vec![
                GroundRule::new("r1", vec![], seq("p => q")),
                GroundRule::new("r2", vec![], seq("q => r")),
            ],
            closure,
        )
        .unwrap()
    }

    fn atoms(xs: &[&str]) -> AtomSet {
        xs.iter().map(|x| atom(x)).collect()
    }

    fn sorted(mut v: Vec<AtomicSequent>) -> Vec<AtomicSequent> {
        v.sort();
        v
    }

    #[test]
    fn empty_st_only_has_identities() {
        let d = Base::st().saturate(&atoms(&["p"])).unwrap();
        assert_eq!(d.minimal(), vec![seq("p => p")]);
    }

    #[test]
    fn cut_makes_the_difference() {
        let hs = chain(Closure::HS).saturate(&atoms(&["p", "q", "r"])).unwrap();
        let expected = ["p => p", "q => q", "r => r", "p => q", "q => r"];
        assert_eq!(sorted(hs.minimal()), sorted(expected.iter().map(|s| seq(s)).collect()));
        assert!(!hs.derivable(&seq("p => r")));
        let st = chain(Closure::ST).saturate(&atoms(&["p", "q", "r"])).unwrap();
        assert!(st.derivable(&seq("p => r")));
        let (rule, support) = st.provenance(&seq("p => r")).unwrap();
        assert_eq!(rule, RuleRef::Cut(atom("q")));
        assert_eq!(support, vec![seq("p => q"), seq("q => r")]);
    }

    #[test]
    fn derivations_check() {
        let b = chain(Closure::ST);
        let s = seq("p, t => r, s");
        let d = b.derivation(&s).unwrap();
        assert_eq!(d.conclusion, s);
        check_derivation(&d, &b).unwrap();
        // atoms foreign to every rule
        let d = b.derivation(&seq("x => x, y")).unwrap();
        check_derivation(&d, &b).unwrap();
        assert!(!Base::st().derivable(&seq("=> p")).unwrap());
        assert!(Base::st().derivable(&seq("r, p => p, s")).unwrap());
    }

    #[test]
    fn mix_over_an_axiom() {
        let b = make_base(
            vec![
                GroundRule::axiom("a", seq("=> p")),
                GroundRule::new("m", vec![seq("=> p")], seq("=> q")),
            ],
            Closure::HS,
        )
        .unwrap();
        let d = b.derivation(&seq("=> q")).unwrap();
        assert_eq!(d.rule, RuleRef::Ground("m".into()));
        assert_eq!(d.children[0].rule, RuleRef::Ground("a".into()));
        check_derivation(&d, &b).unwrap();
    }
}
