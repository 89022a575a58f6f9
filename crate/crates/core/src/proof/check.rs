use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ConstantSpecification, Proof, Rule};
use crate::syntax::{Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RejectReason {
    /// Cited schema does not match the step's conclusion.
    BadAxiom,
    /// Major premise is not `minor -> conclusion`.
    BadMP,
    /// Necessitated pair is not in the constant specification.
    NotInCS,
    /// A referenced step or hypothesis index is out of range or not earlier.
    BadIndex,
    /// The step's conclusion differs from the cited hypothesis.
    BadHypothesis,
    /// The proof has no steps.
    EmptyProof,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    /// Zero-based index of the first failing step.
    pub step: usize,
    pub reason: RejectReason,
    pub detail: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {:?}: {}", self.step + 1, self.reason, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckReport {
    Accepted { theorem: Formula },
    Rejected(Rejection),
}

impl CheckReport {
    pub fn is_accepted(&self) -> bool {
        matches!(self, CheckReport::Accepted { .. })
    }
}

/// Checks every step of `proof` against the rules of iJT4 under `cs`.
pub fn check_proof(proof: &Proof, cs: &ConstantSpecification) -> CheckReport {
    if proof.steps.is_empty() {
        return CheckReport::Rejected(Rejection { step: 0, reason: RejectReason::EmptyProof, detail: "no steps".into() });
    }
    for i in 0..proof.steps.len() {
        if let Err((reason, detail)) = check_step(proof, cs, i) {
            return CheckReport::Rejected(Rejection { step: i, reason, detail });
        }
    }
    CheckReport::Accepted { theorem: proof.steps.last().expect("nonempty").conclusion.clone() }
}

fn check_step(proof: &Proof, cs: &ConstantSpecification, i: usize) -> Result<(), (RejectReason, String)> {
    let step = &proof.steps[i];
    match &step.rule {
        Rule::Hypothesis(k) => {
            let h = proof
                .hypotheses
                .get(*k)
                .ok_or((RejectReason::BadIndex, format!("no hypothesis {}", k + 1)))?;
            if *h != step.conclusion {
                return Err((RejectReason::BadHypothesis, format!("hypothesis {} is `{h}`", k + 1)));
            }
        }
        Rule::Axiom(schema) => {
            if !schema.matches(&step.conclusion) {
                return Err((RejectReason::BadAxiom, format!("`{}` is not an instance of {schema}", step.conclusion)));
            }
        }
        Rule::ModusPonens { major, minor } => {
            if *major >= i || *minor >= i {
                return Err((RejectReason::BadIndex, format!("mp cites steps {},{} from step {}", major + 1, minor + 1, i + 1)));
            }
            let maj = &proof.steps[*major].conclusion;
            let min = &proof.steps[*minor].conclusion;
            match maj {
                Formula::Implies(a, b) if **a == *min && **b == step.conclusion => {}
                _ => {
                    return Err((
                        RejectReason::BadMP,
                        format!("major `{maj}` is not `{min} -> {}`", step.conclusion),
                    ))
                }
            }
        }
        Rule::AxiomNecessitation(c) => match &step.conclusion {
            Formula::Just(Term::Constant(name), body) if name == c => {
                if !cs.contains(c, body) {
                    return Err((RejectReason::NotInCS, format!("({c}, {body}) is not in the constant specification")));
                }
            }
            other => return Err((RejectReason::NotInCS, format!("`{other}` is not of the form {c}:A"))),
        },
    }
    Ok(())
}
