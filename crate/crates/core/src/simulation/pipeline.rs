//! From a valid sequent to a cut-free proof, by way of a derivation in a
//! simulation base extended with the antecedents as axioms.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::base::{check_derivation, AtomicDerivation, Base, GroundRule, RuleRef};
use crate::clp::{check_proof, check_proof_with, eliminate_cuts, prove, CheckMode, Decision, Proof, RuleLabel};
use crate::syntax::{AtomSet, AtomicSequent, FormulaSet, Sequent};

use super::{atomic_mapping, rewrite_q_rules, simulation_base, AtomicMapping, SimError, SimulationVariant};

/// Prefix of the ids of the axioms `⇒ α(B)` added for antecedents `B`.
pub const HYPOTHESIS_PREFIX: &str = "hyp:";

/// Node counts of each stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageStats {
    pub pi: usize,
    pub pi_prime: usize,
    pub pi_dprime: usize,
    pub rewritten: Option<usize>,
    pub final_nodes: usize,
    /// Cuts in the stage before cut elimination.
    pub cuts: usize,
    /// How often each `Q*` placeholder occurs in `Π″`.
    pub q_counts: Vec<(RuleLabel, usize)>,
}

/// Every stage of one extraction.
#[derive(Debug, Clone)]
pub struct ExtractionReport {
    pub sequent: Sequent,
    pub variant: SimulationVariant,
    pub mapping: AtomicMapping,
    pub base: Base,
    /// Derivation of `⇒ α(Δ)` in the base plus the antecedent axioms.
    pub stage_pi: AtomicDerivation,
    /// Derivation of `α(Γ) ⇒ α(Δ)` in the base alone.
    pub stage_pi_prime: AtomicDerivation,
    /// Image of `Π′` under `α⁻¹`; may contain cuts and `Q*` placeholders.
    pub stage_pi_dprime: Proof,
    /// `Π″` with placeholders replaced (quasi variant only).
    pub stage_rewritten: Option<Proof>,
    pub final_proof: Proof,
    pub used_hypotheses: bool,
    pub stats: StageStats,
}

impl ExtractionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "sequent": self.sequent.to_string(),
            "variant": self.variant.name(),
            "mapping": self.mapping.pairs().map(|(f, a)| json!([f.to_string(), a.name()])).collect::<Vec<_>>(),
            "stages": {
                "pi": self.stage_pi.to_json(),
                "pi_prime": self.stage_pi_prime.to_json(),
                "pi_dprime": self.stage_pi_dprime.to_json(),
                "rewritten": self.stage_rewritten.as_ref().map(Proof::to_json),
                "final": self.final_proof.to_json(),
            },
            "stats": {
                "pi": self.stats.pi,
                "pi_prime": self.stats.pi_prime,
                "pi_dprime": self.stats.pi_dprime,
                "rewritten": self.stats.rewritten,
                "final": self.stats.final_nodes,
                "cuts": self.stats.cuts,
                "q_counts": self.stats.q_counts.iter().map(|(r, n)| json!([r.name(), n])).collect::<Vec<_>>(),
            },
        })
    }
}

/// Adds `gamma` to the antecedent of every marked axiom and of every node
/// below one, turning each marked axiom `⇒ Θ` into an identity axiom on a
/// member of `Θ ∩ gamma`. If no node is marked the root is weakened instead.
pub fn prepend_context(
    d: &AtomicDerivation,
    gamma: &AtomSet,
    marked: &BTreeSet<String>,
) -> Result<AtomicDerivation, SimError> {
    let (mut out, touched) = prepend(d, gamma, marked)?;
    if !touched {
        out.weaken(&AtomicSequent::new(gamma.clone(), AtomSet::new()));
    }
    Ok(out)
}

fn prepend(
    d: &AtomicDerivation,
    gamma: &AtomSet,
    marked: &BTreeSet<String>,
) -> Result<(AtomicDerivation, bool), SimError> {
    let extra = AtomicSequent::new(gamma.clone(), AtomSet::new());
    if let RuleRef::Ground(id) = &d.rule {
        if marked.contains(id) {
            if !d.children.is_empty() {
                return Err(SimError::Structure(format!("marked rule {id} has premises")));
            }
            let p = d
                .conclusion
                .right
                .iter()
                .find(|a| gamma.contains(*a))
                .ok_or_else(|| {
                    SimError::Structure(format!("marked axiom '{}' shares no atom with the context", d.conclusion))
                })?;
            let node = AtomicDerivation::new(d.conclusion.union(&extra), RuleRef::Init(p.clone()), vec![]);
            return Ok((node, true));
        }
    }
    let mut touched = false;
    let mut children = Vec::with_capacity(d.children.len());
    for c in &d.children {
        let (c, t) = prepend(c, gamma, marked)?;
        touched |= t;
        children.push(c);
    }
    let conclusion = if touched {
        d.conclusion.union(&extra)
    } else {
        d.conclusion.clone()
    };
    Ok((AtomicDerivation::new(conclusion, d.rule.clone(), children), touched))
}

/// Replaces every atom by the formula it stands for, and each base rule by
/// the calculus rule of the same shape.
pub fn substitute(d: &AtomicDerivation, m: &AtomicMapping) -> Result<Proof, SimError> {
    let rule = match &d.rule {
        RuleRef::Init(_) => RuleLabel::Init,
        RuleRef::Cut(_) => RuleLabel::Cut,
        RuleRef::Schema(s) => s.tag,
        RuleRef::Ground(id) => {
            return Err(SimError::Structure(format!("ground rule {id} has no counterpart in the calculus")))
        }
    };
    let premises = d
        .children
        .iter()
        .map(|c| substitute(c, m))
        .collect::<Result<_, _>>()?;
    Ok(Proof::new(m.invert_sequent(&d.conclusion)?, rule, premises))
}

fn internal(stage: &str, detail: impl std::fmt::Display) -> SimError {
    SimError::Internal(format!("{stage}: {detail}"))
}

/// Runs the completeness argument on `Γ ⇒ Δ`.
pub fn extract_proof(
    gamma: &FormulaSet,
    delta: &FormulaSet,
    v: SimulationVariant,
) -> Result<ExtractionReport, SimError> {
    let sequent = Sequent::new(gamma.clone(), delta.clone());
    if let Decision::Refutable(val) = prove(&sequent) {
        return Err(SimError::Invalid(val));
    }
    let sigma: FormulaSet = gamma.union(delta).cloned().collect();
    let mapping = atomic_mapping(&sigma);
    let base = simulation_base(&sigma, &mapping, v)?;
    let gamma_at = mapping.apply_set(gamma)?;
    let delta_at = mapping.apply_set(delta)?;

    let hyps: Vec<GroundRule> = gamma_at
        .iter()
        .enumerate()
        .map(|(i, a)| {
            GroundRule::axiom(
                format!("{HYPOTHESIS_PREFIX}{}", i + 1),
                AtomicSequent::from_iters([], [a.clone()]),
            )
        })
        .collect();
    let marked: BTreeSet<String> = hyps.iter().map(|r| r.id.clone()).collect();
    let extended = base.extend(hyps)?;

    let goal = AtomicSequent::categorical(delta_at.clone());
    let mut extra = gamma_at.clone();
    extra.extend(delta_at.iter().cloned());
    let saturated = extended.saturate(&extra)?;
    let pi = saturated
        .derivation(&goal)
        .ok_or_else(|| internal("Π", format!("'{goal}' is not derivable from the antecedent axioms")))?;
    check_derivation(&pi, &extended).map_err(|e| internal("Π", e))?;
    let used_hypotheses = pi.count(&|r| matches!(r, RuleRef::Ground(id) if marked.contains(id))) > 0;

    let pi_prime = prepend_context(&pi, &gamma_at, &marked)?;
    check_derivation(&pi_prime, &base).map_err(|e| internal("Π′", e))?;
    let want = AtomicSequent::new(gamma_at, delta_at);
    if pi_prime.conclusion != want {
        return Err(internal("Π′", format!("ends in '{}', not '{want}'", pi_prime.conclusion)));
    }

    let pi_dprime = substitute(&pi_prime, &mapping)?;
    check_proof_with(&pi_dprime, CheckMode::WITH_Q).map_err(|e| internal("Π″", e))?;
    let q_counts: Vec<(RuleLabel, usize)> = RuleLabel::Q_RULES.iter().map(|&r| (r, pi_dprime.count(r))).collect();

    let rewritten = match v {
        SimulationVariant::Full => None,
        SimulationVariant::Quasi => {
            let r = rewrite_q_rules(&pi_dprime)?;
            check_proof(&r, true).map_err(|e| internal("rewrite", e))?;
            Some(r)
        }
    };
    let with_cuts = rewritten.as_ref().unwrap_or(&pi_dprime);
    let final_proof = eliminate_cuts(with_cuts).map_err(|e| internal("cut elimination", e))?;
    check_proof(&final_proof, false).map_err(|e| internal("final", e))?;
    if final_proof.conclusion != sequent {
        return Err(internal("final", format!("ends in '{}'", final_proof.conclusion)));
    }

    let stats = StageStats {
        pi: pi.size(),
        pi_prime: pi_prime.size(),
        pi_dprime: pi_dprime.size(),
        rewritten: rewritten.as_ref().map(Proof::size),
        final_nodes: final_proof.size(),
        cuts: with_cuts.count(RuleLabel::Cut),
        q_counts,
    };
    Ok(ExtractionReport {
        sequent,
        variant: v,
        mapping,
        base,
        stage_pi: pi,
        stage_pi_prime: pi_prime,
        stage_pi_dprime: pi_dprime,
        stage_rewritten: rewritten,
        final_proof,
        used_hypotheses,
        stats,
    })
}
