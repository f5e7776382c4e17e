use super::check::{check_proof, CheckError};
use super::proof::{Proof, RuleLabel};
use super::prove::{prove, Decision};

/// Returns a cut-free proof of the same end-sequent.
///
/// Cut-free input is returned as is. Otherwise the end-sequent, valid because
/// the input is a proof, is proved again by backward search.
pub fn eliminate_cuts(p: &Proof) -> Result<Proof, CheckError> {
    check_proof(p, true)?;
    if p.is_cut_free() {
        return Ok(p.clone());
    }
    match prove(&p.conclusion) {
        Decision::Provable(q) => Ok(q),
        Decision::Refutable(_) => Err(CheckError {
            path: Vec::new(),
            sequent: p.conclusion.clone(),
            rule: RuleLabel::Cut,
            reason: "end-sequent of a checked proof is falsifiable".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_sequent;

    fn node(s: &str, rule: RuleLabel, premises: Vec<Proof>) -> Proof {
        Proof::new(parse_sequent(s).unwrap(), rule, premises)
    }

    #[test]
    fn removes_a_cut_on_q() {
        // q & r => q, then q => q, cut on q
        let left = node("q & r => q", RuleLabel::LAnd, vec![node("q, r => q", RuleLabel::Init, vec![])]);
        let right = node("q => q", RuleLabel::Init, vec![]);
        let p = node("q & r => q", RuleLabel::Cut, vec![left, right]);
        assert!(check_proof(&p, true).is_ok());
        let q = eliminate_cuts(&p).unwrap();
        assert!(q.is_cut_free());
        assert_eq!(q.conclusion, p.conclusion);
        assert!(check_proof(&q, false).is_ok());
    }

    #[test]
    fn cut_free_input_is_unchanged() {
        let p = node("p => p", RuleLabel::Init, vec![]);
        assert_eq!(eliminate_cuts(&p).unwrap(), p);
    }

    #[test]
    fn invalid_input_is_rejected() {
        let l = node("=> p", RuleLabel::Init, vec![]);
        let r = node("p => q", RuleLabel::Init, vec![]);
        assert!(eliminate_cuts(&node("=> q", RuleLabel::Cut, vec![l, r])).is_err());
    }
}
