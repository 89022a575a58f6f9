use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::pattern::{and, fm, imp, just, or, tm, Bindings, PFormula, PTerm};
use crate::syntax::{Formula, Term};

/// The fourteen axiom schemas: a nine-schema Hilbert base for
/// intuitionistic propositional logic followed by the justification axioms.
///
/// Schema metavariables: formulas `A`, `B`, `C`; terms `t`, `s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomSchema {
    /// `A -> (B -> A)`
    K,
    /// `(A -> (B -> C)) -> ((A -> B) -> (A -> C))`
    S,
    /// `A -> (B -> A /\ B)`
    AndIntro,
    /// `A /\ B -> A`
    AndElimL,
    /// `A /\ B -> B`
    AndElimR,
    /// `A -> A \/ B`
    OrIntroL,
    /// `B -> A \/ B`
    OrIntroR,
    /// `(A -> C) -> ((B -> C) -> (A \/ B -> C))`
    OrElim,
    /// `_|_ -> A`
    Efq,
    /// `t:(A -> B) -> (s:A -> t.s:B)`
    JApp,
    /// `t:A -> t+s:A`
    JSumL,
    /// `s:A -> t+s:A`
    JSumR,
    /// `t:A -> A`
    JT,
    /// `t:A -> !t:t:A`
    J4,
}

impl AxiomSchema {
    pub const ALL: [AxiomSchema; 14] = [
        AxiomSchema::K,
        AxiomSchema::S,
        AxiomSchema::AndIntro,
        AxiomSchema::AndElimL,
        AxiomSchema::AndElimR,
        AxiomSchema::OrIntroL,
        AxiomSchema::OrIntroR,
        AxiomSchema::OrElim,
        AxiomSchema::Efq,
        AxiomSchema::JApp,
        AxiomSchema::JSumL,
        AxiomSchema::JSumR,
        AxiomSchema::JT,
        AxiomSchema::J4,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            AxiomSchema::K => "IPC-1",
            AxiomSchema::S => "IPC-2",
            AxiomSchema::AndIntro => "IPC-3",
            AxiomSchema::AndElimL => "IPC-4",
            AxiomSchema::AndElimR => "IPC-5",
            AxiomSchema::OrIntroL => "IPC-6",
            AxiomSchema::OrIntroR => "IPC-7",
            AxiomSchema::OrElim => "IPC-8",
            AxiomSchema::Efq => "IPC-9",
            AxiomSchema::JApp => "J-App",
            AxiomSchema::JSumL => "J-Sum-L",
            AxiomSchema::JSumR => "J-Sum-R",
            AxiomSchema::JT => "J-T",
            AxiomSchema::J4 => "J-4",
        }
    }

    /// Position in [`AxiomSchema::ALL`].
    pub fn index(self) -> usize {
        AxiomSchema::ALL.iter().position(|&s| s == self).expect("listed")
    }

    /// Number of formula and term metavariables.
    pub fn arity(self) -> (usize, usize) {
        match self {
            AxiomSchema::K
            | AxiomSchema::AndIntro
            | AxiomSchema::AndElimL
            | AxiomSchema::AndElimR
            | AxiomSchema::OrIntroL
            | AxiomSchema::OrIntroR => (2, 0),
            AxiomSchema::S | AxiomSchema::OrElim => (3, 0),
            AxiomSchema::Efq => (1, 0),
            AxiomSchema::JApp => (2, 2),
            AxiomSchema::JSumL | AxiomSchema::JSumR => (1, 2),
            AxiomSchema::JT | AxiomSchema::J4 => (1, 1),
        }
    }

    /// The schema as a pattern: formulas `A, B, C` are metas 0, 1, 2 and
    /// terms `t, s` are term metas 0, 1.
    pub fn pattern(self) -> PFormula {
        let (a, b, c) = (fm(0), fm(1), fm(2));
        let (t, s) = (tm(0), tm(1));
        match self {
            AxiomSchema::K => imp(a.clone(), imp(b, a)),
            AxiomSchema::S => imp(
                imp(a.clone(), imp(b.clone(), c.clone())),
                imp(imp(a.clone(), b), imp(a, c)),
            ),
            AxiomSchema::AndIntro => imp(a.clone(), imp(b.clone(), and(a, b))),
            AxiomSchema::AndElimL => imp(and(a.clone(), b), a),
            AxiomSchema::AndElimR => imp(and(a, b.clone()), b),
            AxiomSchema::OrIntroL => imp(a.clone(), or(a, b)),
            AxiomSchema::OrIntroR => imp(b.clone(), or(a, b)),
            AxiomSchema::OrElim => imp(
                imp(a.clone(), c.clone()),
                imp(imp(b.clone(), c.clone()), imp(or(a, b), c)),
            ),
            AxiomSchema::Efq => imp(PFormula::Falsum, a),
            AxiomSchema::JApp => imp(
                just(t.clone(), imp(a.clone(), b.clone())),
                imp(just(s.clone(), a), just(PTerm::app(t, s), b)),
            ),
            AxiomSchema::JSumL => imp(just(t.clone(), a.clone()), just(PTerm::sum(t, s), a)),
            AxiomSchema::JSumR => imp(just(s.clone(), a.clone()), just(PTerm::sum(t, s), a)),
            AxiomSchema::JT => imp(just(t, a.clone()), a),
            AxiomSchema::J4 => imp(just(t.clone(), a.clone()), just(PTerm::bang(t.clone()), just(t, a))),
        }
    }

    /// True iff `a` is an instance of this schema.
    pub fn matches(self, a: &Formula) -> bool {
        static PATTERNS: std::sync::OnceLock<Vec<PFormula>> = std::sync::OnceLock::new();
        PATTERNS.get_or_init(|| Self::ALL.iter().map(|s| s.pattern()).collect())[self.index()].is_match(a)
    }

    /// Instantiates the schema. Missing metavariables default to `_|_`
    /// (formulas) and to the first supplied term, or `x` (terms).
    pub fn instantiate(self, formulas: &[Formula], terms: &[Term]) -> Formula {
        let (nf, nt) = self.arity();
        let mut b = Bindings::default();
        for i in 0..nf.max(3) {
            let f = formulas.get(i).cloned().unwrap_or(Formula::Falsum);
            b.formulas.insert(i as u32, f);
        }
        for i in 0..nt.max(2) {
            let t = terms
                .get(i)
                .or_else(|| terms.first())
                .cloned()
                .unwrap_or_else(|| Term::var("x"));
            b.terms.insert(i as u32, t);
        }
        self.pattern().instantiate(&b).expect("all metavariables bound")
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown axiom schema tag `{0}`")]
pub struct UnknownSchema(pub String);

impl FromStr for AxiomSchema {
    type Err = UnknownSchema;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let by_tag = AxiomSchema::ALL.iter().copied().find(|a| a.tag().eq_ignore_ascii_case(s));
        if let Some(a) = by_tag {
            return Ok(a);
        }
        Ok(match s {
            "K" => AxiomSchema::K,
            "S" => AxiomSchema::S,
            "EFQ" => AxiomSchema::Efq,
            _ => return Err(UnknownSchema(s.to_string())),
        })
    }
}

/// Every schema `a` is an instance of.
pub fn match_axiom(a: &Formula) -> BTreeSet<AxiomSchema> {
    AxiomSchema::ALL.iter().copied().filter(|s| s.matches(a)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn factivity_instance() {
        assert_eq!(match_axiom(&f("x:p -> p")), BTreeSet::from([AxiomSchema::JT]));
    }

    #[test]
    fn application_instance() {
        assert_eq!(match_axiom(&f("x:(p->q) -> (y:p -> x.y:q)")), BTreeSet::from([AxiomSchema::JApp]));
    }

    #[test]
    fn non_axiom() {
        assert!(match_axiom(&f("p -> q")).is_empty());
    }

    #[test]
    fn overlapping_schemas() {
        // K with A = B
        let hits = match_axiom(&f("p -> p -> p"));
        assert!(hits.contains(&AxiomSchema::K));
        // both sum halves when the summands coincide
        let hits = match_axiom(&f("x:p -> x + x:p"));
        assert_eq!(hits, BTreeSet::from([AxiomSchema::JSumL, AxiomSchema::JSumR]));
    }

    #[test]
    fn instantiation_round_trips_through_matching() {
        for s in AxiomSchema::ALL {
            let a = s.instantiate(&[f("p"), f("q -> r"), f("x:p")], &[Term::var("u"), Term::var("v")]);
            assert!(s.matches(&a), "{s} {a}");
        }
    }

    #[test]
    fn tags_parse() {
        for s in AxiomSchema::ALL {
            assert_eq!(s.tag().parse::<AxiomSchema>().unwrap(), s);
        }
        assert!("J-X".parse::<AxiomSchema>().is_err());
    }
}
