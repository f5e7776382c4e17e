//! Atomic mappings, simulation bases and the proof-extraction pipelines.

mod bases;
mod counterexample;
mod mapping;
mod pipeline;
mod rewrite;

use thiserror::Error;

use crate::base::BaseError;
use crate::clp::Valuation;

pub use bases::{simulation_base, simulation_base_with, simulation_schemas, SimulationVariant};
pub use counterexample::{prop6_counterexample, Fact, Prop6Report};
pub use mapping::{atomic_mapping, AtomicMapping};
pub use pipeline::{extract_proof, prepend_context, substitute, ExtractionReport, StageStats, HYPOTHESIS_PREFIX};
pub use rewrite::rewrite_q_rules;

#[derive(Debug, Clone, Error)]
pub enum SimError {
    #[error("sequent is not valid; falsified by {}", show_valuation(.0))]
    Invalid(Valuation),
    #[error("scope violation: {0}")]
    Scope(String),
    #[error(transparent)]
    Base(#[from] BaseError),
    #[error("structural mismatch: {0}")]
    Structure(String),
    #[error("internal check failed at {0}")]
    Internal(String),
}

fn show_valuation(v: &Valuation) -> String {
    let parts: Vec<String> = v.iter().map(|(a, b)| format!("{a}={}", u8::from(*b))).collect();
    format!("{{{}}}", parts.join(", "))
}
