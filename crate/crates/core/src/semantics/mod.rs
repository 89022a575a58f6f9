//! Basic evaluations and basic modular models.
//!
//! A [`BasicEvaluation`] is a finite poset of worlds with an atomic
//! valuation and user-supplied base evidence. [`close_evidence`] computes the
//! least evidence function containing the base and satisfying the closure
//! conditions for application, sum, the constant specification and `!`, plus
//! upward persistence along the order. Evidence sets can be infinite (a
//! schematic constant justifies every instance of its schema), so they are
//! kept as finite sets of [patterns](crate::pattern).

mod closure;
mod countermodel;
mod eval;
pub mod format;
pub mod poset;
mod validate;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::proof::ConstantSpecification;
use crate::syntax::{Formula, Term};

pub use closure::{apply_patterns, close_evidence, EvidenceClosure};
pub use countermodel::{find_countermodel, find_countermodel_sequent, CountermodelConfig, Countermodel};
pub use eval::{check_validity, evaluate_truth, ClosedModel};
pub use validate::{check_factivity, validate_closed, validate_model, CheckVerdict, Condition, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("universe is not closed: `{0}` is missing")]
    UniverseNotClosed(String),
    #[error("no world named `{0}`")]
    UnknownWorld(String),
    #[error("world index {0} out of range")]
    WorldOutOfRange(usize),
}

/// A finite basic evaluation before closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasicEvaluation {
    worlds: Vec<String>,
    /// `leq[w][v]` iff `w <= v`.
    leq: Vec<Vec<bool>>,
    atoms: Vec<BTreeSet<String>>,
    base: BTreeMap<(usize, Term), BTreeSet<Formula>>,
    term_universe: BTreeSet<Term>,
    formula_universe: BTreeSet<Formula>,
    #[serde(skip)]
    cs: Arc<ConstantSpecification>,
}

impl BasicEvaluation {
    /// Worlds with the given names, ordered only reflexively, no true atoms
    /// and no evidence.
    pub fn new<S: Into<String>>(worlds: impl IntoIterator<Item = S>, cs: Arc<ConstantSpecification>) -> Self {
        let worlds: Vec<String> = worlds.into_iter().map(Into::into).collect();
        let n = worlds.len();
        let leq = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        BasicEvaluation {
            worlds,
            leq,
            atoms: vec![BTreeSet::new(); n],
            base: BTreeMap::new(),
            term_universe: BTreeSet::new(),
            formula_universe: BTreeSet::new(),
            cs,
        }
    }

    /// `n` worlds named `w0 .. w{n-1}`.
    pub fn with_worlds(n: usize, cs: Arc<ConstantSpecification>) -> Self {
        Self::new((0..n).map(|i| format!("w{i}")), cs)
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn world_names(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_index(&self, name: &str) -> Result<usize, SemanticsError> {
        self.worlds
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| SemanticsError::UnknownWorld(name.to_string()))
    }

    pub fn cs(&self) -> &Arc<ConstantSpecification> {
        &self.cs
    }

    pub fn leq(&self, w: usize, v: usize) -> bool {
        self.leq[w][v]
    }

    /// Adds the single pair `w <= v`; no closure is taken.
    pub fn set_leq(&mut self, w: usize, v: usize) {
        self.leq[w][v] = true;
    }

    pub fn atom_true(&self, p: &str, w: usize) -> bool {
        self.atoms[w].contains(p)
    }

    pub fn true_atoms(&self, w: usize) -> &BTreeSet<String> {
        &self.atoms[w]
    }

    pub fn set_atom(&mut self, w: usize, p: impl Into<String>) {
        self.atoms[w].insert(p.into());
    }

    /// Puts `a` into the base evidence of `t` at `w` and grows the universes
    /// to cover `t` and `a`.
    pub fn add_evidence(&mut self, w: usize, t: Term, a: Formula) {
        self.term_universe.extend(t.subterms());
        self.extend_universe([&a]);
        self.base.entry((w, t)).or_default().insert(a);
    }

    pub fn base_evidence(&self) -> &BTreeMap<(usize, Term), BTreeSet<Formula>> {
        &self.base
    }

    /// Adds the formulas' subformulas to the formula universe and their
    /// terms' subterms to the term universe.
    pub fn extend_universe<'a>(&mut self, formulas: impl IntoIterator<Item = &'a Formula>) {
        for f in formulas {
            self.term_universe.extend(f.terms());
            self.formula_universe.extend(f.subformulas());
        }
    }

    /// Adds one term without closing under subterms (for testing closure
    /// errors); prefer [`BasicEvaluation::extend_universe`].
    pub fn insert_term_raw(&mut self, t: Term) {
        self.term_universe.insert(t);
    }

    pub fn term_universe(&self) -> &BTreeSet<Term> {
        &self.term_universe
    }

    pub fn formula_universe(&self) -> &BTreeSet<Formula> {
        &self.formula_universe
    }

    /// Worlds above `w`, including `w`.
    pub fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&v| self.leq[w][v])
    }
}
