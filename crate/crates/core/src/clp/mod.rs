//! The multiplicative sequent calculus over sets of formulas: proofs, a
//! checker, a decision procedure and cut elimination.

mod check;
mod cut;
mod proof;
mod prove;

pub use check::{check_node, check_proof, check_proof_with, CheckError, CheckMode};
pub use cut::eliminate_cuts;
pub use proof::{Proof, RuleLabel};
pub use prove::{falsifies, prove, truth_table_valid, Decision, Valuation};
