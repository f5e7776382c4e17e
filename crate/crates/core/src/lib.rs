//! Base-extension semantics for classical propositional logic.

pub mod base;
pub mod clp;
pub mod gen;
pub mod simulation;
pub mod suites;
pub mod support;
pub mod syntax;
pub mod template;
