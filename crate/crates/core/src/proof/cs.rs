use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::axioms::{match_axiom, AxiomSchema};
use super::ProofError;
use crate::pattern::PFormula;
use crate::syntax::Formula;

/// A constant specification: which constants justify which axiom instances.
///
/// Explicit entries list finitely many `(c, A)` pairs; each `A` must be an
/// axiom instance. Schematic entries assign a constant to a whole schema, so
/// `(c, A)` holds for every instance `A` of that schema. The two kinds may be
/// mixed in one specification.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantSpecification {
    schematic: BTreeMap<String, BTreeSet<AxiomSchema>>,
    explicit: BTreeMap<String, BTreeSet<Formula>>,
}

impl ConstantSpecification {
    pub fn new() -> Self {
        Self::default()
    }

    /// One constant per schema: `c1` for `IPC-1` through `c14` for `J-4`.
    pub fn standard() -> Self {
        let mut cs = Self::new();
        for (i, s) in AxiomSchema::ALL.iter().enumerate() {
            cs.add_schematic(format!("c{}", i + 1), *s);
        }
        cs
    }

    /// The standard constant for a schema.
    pub fn standard_constant(schema: AxiomSchema) -> String {
        format!("c{}", schema.index() + 1)
    }

    pub fn add_schematic(&mut self, constant: impl Into<String>, schema: AxiomSchema) {
        self.schematic.entry(constant.into()).or_default().insert(schema);
    }

    /// Adds `(constant, a)`; fails if `a` is not an axiom instance.
    pub fn add_explicit(&mut self, constant: impl Into<String>, a: Formula) -> Result<(), ProofError> {
        if match_axiom(&a).is_empty() {
            return Err(ProofError::NotAnAxiom(a));
        }
        self.explicit.entry(constant.into()).or_default().insert(a);
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.schematic.is_empty() && self.explicit.is_empty()
    }

    pub fn constants(&self) -> BTreeSet<String> {
        self.schematic.keys().chain(self.explicit.keys()).cloned().collect()
    }

    pub fn schematic_entries(&self) -> impl Iterator<Item = (&str, AxiomSchema)> {
        self.schematic.iter().flat_map(|(c, ss)| ss.iter().map(move |s| (c.as_str(), *s)))
    }

    pub fn explicit_entries(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.explicit.iter().flat_map(|(c, fs)| fs.iter().map(move |f| (c.as_str(), f)))
    }

    /// Whether `(constant, a)` is in the specification.
    pub fn contains(&self, constant: &str, a: &Formula) -> bool {
        self.explicit.get(constant).is_some_and(|fs| fs.contains(a))
            || self.schematic.get(constant).is_some_and(|ss| ss.iter().any(|s| s.matches(a)))
    }

    /// The first constant, in name order, that justifies `a`.
    pub fn constant_for(&self, a: &Formula) -> Option<String> {
        self.constants().into_iter().find(|c| self.contains(c, a))
    }

    /// Every schema has a schematic constant, so every axiom instance is covered.
    pub fn is_axiomatically_appropriate(&self) -> bool {
        let covered: BTreeSet<AxiomSchema> = self.schematic.values().flatten().copied().collect();
        covered.len() == AxiomSchema::ALL.len()
    }

    /// The set `{A | (constant, A) in CS}` as finitely many patterns.
    pub fn evidence_patterns(&self, constant: &str) -> Vec<PFormula> {
        let mut out = Vec::new();
        if let Some(ss) = self.schematic.get(constant) {
            out.extend(ss.iter().map(|s| s.pattern()));
        }
        if let Some(fs) = self.explicit.get(constant) {
            out.extend(fs.iter().map(PFormula::ground));
        }
        out
    }
}
