//! Prime sets at bounded scale.
//!
//! Everything here lives inside a finite [`FormulaUniverse`]. Derivability
//! questions go to an [`Oracle`] that answers with a checked proof from
//! [`bounded_derive`], a validated countermodel, or `Unknown`. Only a
//! countermodel counts as evidence of non-derivability; `Unknown` is never
//! treated as a refutation.

mod canonical;
mod prime;
pub mod shipped;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::proof::{bounded_derive, ConstantSpecification, Derivation, Proof};
use crate::semantics::{find_countermodel_sequent, Countermodel, CountermodelConfig};
use crate::syntax::{print_formula, Formula, Term};

pub use canonical::{bounded_canonical_model, truth_lemma, CanonicalModel, TruthLemmaReport};
pub use prime::{check_prime, prime_saturate, split_disjunction, PrimeVerdict, Saturation, Split, TraceStep};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SaturationError {
    #[error("universe is not subformula-closed: `{0}` is missing")]
    NotClosed(String),
    #[error("`{0}` is not in the universe")]
    NotInUniverse(String),
    #[error("the oracle derives the goal from the base set")]
    FailedPrecondition,
    #[error("universe has {size} formulas, over the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
}

/// A finite subformula-closed set of formulas, enumerated in lexicographic
/// order of printed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaUniverse {
    formulas: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl FormulaUniverse {
    /// The subformula closure of `seeds`.
    pub fn from_seeds<'a>(seeds: impl IntoIterator<Item = &'a Formula>) -> Self {
        let set = crate::syntax::subformula_closure(seeds);
        Self::build(set)
    }

    /// Exactly `formulas`, which must be subformula-closed.
    pub fn new(formulas: impl IntoIterator<Item = Formula>) -> Result<Self, SaturationError> {
        let set: BTreeSet<Formula> = formulas.into_iter().collect();
        for f in &set {
            for g in f.subformulas() {
                if !set.contains(&g) {
                    return Err(SaturationError::NotClosed(print_formula(&g)));
                }
            }
        }
        Ok(Self::build(set))
    }

    fn build(set: BTreeSet<Formula>) -> Self {
        let mut keyed: Vec<(String, Formula)> = set.into_iter().map(|f| (print_formula(&f), f)).collect();
        keyed.sort();
        let formulas: Vec<Formula> = keyed.into_iter().map(|(_, f)| f).collect();
        let index = formulas.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        FormulaUniverse { formulas, index }
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn index_of(&self, a: &Formula) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn contains(&self, a: &Formula) -> bool {
        self.index.contains_key(a)
    }
}

/// A derivability question `hyps ⊢ goal`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub hyps: BTreeSet<Formula>,
    pub goal: Formula,
}

impl Sequent {
    pub fn new(hyps: impl IntoIterator<Item = Formula>, goal: Formula) -> Self {
        Sequent { hyps: hyps.into_iter().collect(), goal }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hyps: Vec<String> = self.hyps.iter().map(print_formula).collect();
        write!(f, "{{{}}} |- {}", hyps.join(", "), print_formula(&self.goal))
    }
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Derivable(Proof),
    RefutedBySemantics(Box<Countermodel>),
    Unknown,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Derivable(_) => "derivable",
            Certificate::RefutedBySemantics(_) => "refuted",
            Certificate::Unknown => "unknown",
        }
    }

    pub fn is_derivable(&self) -> bool {
        matches!(self, Certificate::Derivable(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Certificate::RefutedBySemantics(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Certificate::Unknown)
    }
}

/// Answers derivability questions: proof search to `depth` first, then
/// countermodel search. Answers are cached and shareable across threads.
#[derive(Debug)]
pub struct Oracle {
    cs: Arc<ConstantSpecification>,
    depth: usize,
    models: CountermodelConfig,
    cache: Mutex<HashMap<Sequent, Certificate>>,
}

impl Oracle {
    pub fn new(cs: Arc<ConstantSpecification>, depth: usize) -> Self {
        Self::with_models(cs, depth, CountermodelConfig { max_worlds: 3, evidence_budget: 2, parallel: true })
    }

    pub fn with_models(cs: Arc<ConstantSpecification>, depth: usize, models: CountermodelConfig) -> Self {
        Oracle { cs, depth, models, cache: Mutex::new(HashMap::new()) }
    }

    pub fn cs(&self) -> &Arc<ConstantSpecification> {
        &self.cs
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn query(&self, s: &Sequent) -> Certificate {
        if let Some(c) = self.cache.lock().expect("oracle cache").get(s) {
            return c.clone();
        }
        let hyps: Vec<Formula> = s.hyps.iter().cloned().collect();
        let cert = match bounded_derive(&hyps, &s.goal, &self.cs, self.depth) {
            Derivation::Derivable(p) => Certificate::Derivable(p),
            Derivation::UnknownAtBound => match find_countermodel_sequent(&hyps, &s.goal, &self.models, &self.cs) {
                Some(cm) => Certificate::RefutedBySemantics(Box::new(cm)),
                None => Certificate::Unknown,
            },
        };
        self.cache.lock().expect("oracle cache").insert(s.clone(), cert.clone());
        cert
    }
}

/// A subset of a universe with the oracle answers gathered about it.
#[derive(Clone, Debug)]
pub struct BoundedTheory {
    pub members: BTreeSet<Formula>,
    pub oracle_bound: usize,
    pub certificates: BTreeMap<Sequent, Certificate>,
}

impl BoundedTheory {
    pub fn new(members: impl IntoIterator<Item = Formula>, oracle_bound: usize) -> Self {
        BoundedTheory { members: members.into_iter().collect(), oracle_bound, certificates: BTreeMap::new() }
    }

    pub(crate) fn ask(&mut self, oracle: &Oracle, s: Sequent) -> Certificate {
        let c = oracle.query(&s);
        self.certificates.insert(s, c.clone());
        c
    }

    pub fn unknown_count(&self) -> usize {
        self.certificates.values().filter(|c| c.is_unknown()).count()
    }
}

/// `t⁻¹Δ = {A | t:A ∈ Δ}`.
pub fn inverse_evidence(th: &BoundedTheory, t: &Term) -> BTreeSet<Formula> {
    th.members
        .iter()
        .filter_map(|f| match f {
            Formula::Just(s, a) if s == t => Some((**a).clone()),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_term};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn universe_is_ordered_by_printed_form() {
        let u = FormulaUniverse::from_seeds([&f("x:p -> q")]);
        let printed: Vec<String> = u.formulas().iter().map(print_formula).collect();
        assert_eq!(printed, ["p", "q", "x:p", "x:p -> q"]);
        assert_eq!(u.index_of(&f("q")), Some(1));
        assert!(FormulaUniverse::new([f("p -> q")]).is_err());
    }

    #[test]
    fn inverse_evidence_reads_off() {
        let th = BoundedTheory::new([f("x:p"), f("p"), f("x:(p -> q)"), f("y:q")], 0);
        let x = parse_term("x").unwrap();
        assert_eq!(inverse_evidence(&th, &x), [f("p"), f("p -> q")].into_iter().collect());
        let none = BoundedTheory::new([f("p")], 0);
        assert!(inverse_evidence(&none, &x).is_empty());
    }

    #[test]
    fn oracle_certificates_are_checkable() {
        let cs = Arc::new(ConstantSpecification::standard());
        let o = Oracle::new(cs.clone(), 4);
        match o.query(&Sequent::new([f("p -> _|_"), f("p")], f("_|_"))) {
            Certificate::Derivable(p) => assert!(crate::proof::check_proof(&p, &cs).is_accepted()),
            c => panic!("{}", c.kind()),
        }
        match o.query(&Sequent::new([f("p \\/ q")], f("p"))) {
            Certificate::RefutedBySemantics(cm) => assert!(crate::semantics::validate_closed(&cm.model).ok),
            c => panic!("{}", c.kind()),
        }
    }
}
