//! Hilbert-style proofs for iJT4 under a constant specification.

mod axioms;
mod check;
mod cs;
mod deduce;
pub mod format;
mod internalize;
mod search;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::Formula;

pub use axioms::{match_axiom, AxiomSchema, UnknownSchema};
pub use check::{check_proof, CheckReport, RejectReason, Rejection};
pub use cs::ConstantSpecification;
pub use deduce::{deduce, discharge};
pub use internalize::internalize;
pub use search::{bounded_derive, Derivation};

/// How a proof step is justified.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// The hypothesis with this (zero-based) index.
    Hypothesis(usize),
    Axiom(AxiomSchema),
    /// Modus ponens from an earlier `minor` and an earlier `major = minor -> this`.
    ModusPonens { major: usize, minor: usize },
    /// `c:A` for `(c, A)` in the constant specification.
    AxiomNecessitation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProofStep {
    pub conclusion: Formula,
    pub rule: Rule,
}

/// A proof: hypotheses followed by justified steps. The last step's
/// conclusion is the theorem.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Proof {
    pub hypotheses: Vec<Formula>,
    pub steps: Vec<ProofStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("`{0}` is not an axiom instance")]
    NotAnAxiom(Formula),
    #[error("hypothesis `{0}` not found")]
    HypothesisNotFound(Formula),
    #[error("no constant in the specification covers axiom instance `{0}`")]
    NotAppropriate(Formula),
    #[error("input proof rejected: {0}")]
    InvalidProof(Rejection),
    #[error("expected {expected} witness terms, got {got}")]
    WitnessCount { expected: usize, got: usize },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
}

impl Proof {
    pub fn new(hypotheses: Vec<Formula>) -> Self {
        Proof { hypotheses, steps: Vec::new() }
    }

    /// Conclusion of the last step.
    pub fn theorem(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.conclusion)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The sub-proof consisting of `target` and the steps it depends on,
    /// renumbered, ending in `target`. Hypotheses are kept unchanged.
    pub fn slice(&self, target: usize) -> Proof {
        let mut needed = vec![false; target + 1];
        needed[target] = true;
        for i in (0..=target).rev() {
            if !needed[i] {
                continue;
            }
            if let Rule::ModusPonens { major, minor } = self.steps[i].rule {
                needed[major] = true;
                needed[minor] = true;
            }
        }
        let mut remap = vec![usize::MAX; target + 1];
        let mut out = Proof::new(self.hypotheses.clone());
        for (i, step) in self.steps[..=target].iter().enumerate() {
            if !needed[i] {
                continue;
            }
            let rule = match &step.rule {
                Rule::ModusPonens { major, minor } => Rule::ModusPonens { major: remap[*major], minor: remap[*minor] },
                r => r.clone(),
            };
            remap[i] = out.steps.len();
            out.steps.push(ProofStep { conclusion: step.conclusion.clone(), rule });
        }
        out
    }
}

/// Appends steps to a proof, reusing any earlier step with the same
/// conclusion.
#[derive(Clone, Debug, Default)]
pub struct ProofBuilder {
    proof: Proof,
    by_conclusion: HashMap<Formula, usize>,
}

impl ProofBuilder {
    pub fn new(hypotheses: Vec<Formula>) -> Self {
        ProofBuilder { proof: Proof::new(hypotheses), by_conclusion: HashMap::new() }
    }

    pub fn hypotheses(&self) -> &[Formula] {
        &self.proof.hypotheses
    }

    pub fn len(&self) -> usize {
        self.proof.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proof.steps.is_empty()
    }

    pub fn find(&self, a: &Formula) -> Option<usize> {
        self.by_conclusion.get(a).copied()
    }

    pub fn conclusion(&self, step: usize) -> &Formula {
        &self.proof.steps[step].conclusion
    }

    fn push(&mut self, conclusion: Formula, rule: Rule) -> usize {
        if let Some(&i) = self.by_conclusion.get(&conclusion) {
            return i;
        }
        let i = self.proof.steps.len();
        self.by_conclusion.insert(conclusion.clone(), i);
        self.proof.steps.push(ProofStep { conclusion, rule });
        i
    }

    /// Cites hypothesis `a`, appending it to the hypothesis list if absent.
    pub fn hyp(&mut self, a: &Formula) -> usize {
        if let Some(i) = self.find(a) {
            return i;
        }
        let k = match self.proof.hypotheses.iter().position(|h| h == a) {
            Some(k) => k,
            None => {
                self.proof.hypotheses.push(a.clone());
                self.proof.hypotheses.len() - 1
            }
        };
        self.push(a.clone(), Rule::Hypothesis(k))
    }

    pub fn axiom(&mut self, schema: AxiomSchema, a: Formula) -> usize {
        debug_assert!(schema.matches(&a), "{a} is not an instance of {schema}");
        self.push(a, Rule::Axiom(schema))
    }

    /// Instantiates and cites a schema.
    pub fn schema(&mut self, schema: AxiomSchema, formulas: &[Formula], terms: &[crate::syntax::Term]) -> usize {
        let a = schema.instantiate(formulas, terms);
        self.push(a, Rule::Axiom(schema))
    }

    pub fn necessitation(&mut self, constant: &str, a: Formula) -> usize {
        let conclusion = Formula::just(crate::syntax::Term::constant(constant), a);
        self.push(conclusion, Rule::AxiomNecessitation(constant.to_string()))
    }

    /// Modus ponens; panics if `major` is not `minor -> B`.
    pub fn mp(&mut self, major: usize, minor: usize) -> usize {
        let conclusion = match &self.proof.steps[major].conclusion {
            Formula::Implies(a, b) if **a == self.proof.steps[minor].conclusion => (**b).clone(),
            other => panic!(
                "modus ponens mismatch: major `{other}`, minor `{}`",
                self.proof.steps[minor].conclusion
            ),
        };
        self.push(conclusion, Rule::ModusPonens { major, minor })
    }

    /// Copies every step of `other` in, mapping its hypotheses by formula.
    /// Returns the index of `other`'s final step.
    pub fn splice(&mut self, other: &Proof) -> usize {
        let mut remap = Vec::with_capacity(other.steps.len());
        for step in &other.steps {
            let i = match &step.rule {
                Rule::Hypothesis(k) => self.hyp(&other.hypotheses[*k]),
                Rule::Axiom(s) => self.push(step.conclusion.clone(), Rule::Axiom(*s)),
                Rule::AxiomNecessitation(c) => self.push(step.conclusion.clone(), Rule::AxiomNecessitation(c.clone())),
                Rule::ModusPonens { major, minor } => self.mp(remap[*major], remap[*minor]),
            };
            remap.push(i);
        }
        *remap.last().expect("spliced proof has steps")
    }

    /// The proof ending at `target`, trimmed to the steps it uses.
    pub fn finish(&self, target: usize) -> Proof {
        self.proof.slice(target)
    }

    pub fn into_proof(self) -> Proof {
        self.proof
    }
}
