use std::collections::{BTreeSet, HashMap, HashSet};

use super::{BasicEvaluation, SemanticsError};
use crate::pattern::{imp, PFormula, PTerm, Subst};
use crate::syntax::{Formula, Term};

/// The least evidence function over the term universe, per world, as
/// finite sets of patterns.
#[derive(Clone, Debug, Default)]
pub struct EvidenceClosure {
    sets: HashMap<Term, Vec<Evidence>>,
}

/// One evidence set: its patterns, with the ground ones also hashed.
#[derive(Clone, Debug, Default)]
struct Evidence {
    all: BTreeSet<PFormula>,
    ground: HashSet<Formula>,
    open: Vec<PFormula>,
}

impl Evidence {
    fn new(all: BTreeSet<PFormula>) -> Self {
        let mut ground = HashSet::new();
        let mut open = Vec::new();
        for p in &all {
            match p.to_ground() {
                Some(f) => {
                    ground.insert(f);
                }
                None => open.push(p.clone()),
            }
        }
        Evidence { all, ground, open }
    }

    fn contains(&self, a: &Formula) -> bool {
        self.ground.contains(a) || self.open.iter().any(|p| p.is_match(a))
    }
}

impl EvidenceClosure {
    /// Patterns describing `t*_w`, if `t` was in the term universe.
    pub fn patterns(&self, t: &Term, w: usize) -> Option<&BTreeSet<PFormula>> {
        self.sets.get(t).map(|per_world| &per_world[w].all)
    }

    /// Whether `a ∈ t*_w`; `None` if `t` is outside the term universe.
    pub fn contains(&self, t: &Term, w: usize, a: &Formula) -> Option<bool> {
        self.sets.get(t).map(|per_world| per_world[w].contains(a))
    }

    /// `t*_w` restricted to a finite set of formulas.
    pub fn restricted(&self, t: &Term, w: usize, within: &BTreeSet<Formula>) -> BTreeSet<Formula> {
        let Some(per_world) = self.sets.get(t) else { return BTreeSet::new() };
        let e = &per_world[w];
        let mut out: BTreeSet<Formula> = e.ground.iter().filter(|a| within.contains(*a)).cloned().collect();
        if !e.open.is_empty() {
            out.extend(within.iter().filter(|a| e.open.iter().any(|p| p.is_match(a))).cloned());
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.sets.keys()
    }
}

/// `X · Y := {A | B -> A ∈ X, B ∈ Y}` for single patterns.
pub fn apply_patterns(major: &PFormula, minor: &PFormula) -> Option<PFormula> {
    let minor = minor.rename_apart(major);
    let x = major.fresh_formula_meta().max(minor.fresh_formula_meta());
    let query = imp(minor, PFormula::Meta(x));
    let mut s = Subst::default();
    if !s.unify(major, &query) {
        return None;
    }
    Some(PFormula::Meta(x).resolve(&s).canonical())
}

/// Checks that the universes are closed under subterms and subformulas.
pub(crate) fn check_universe(m: &BasicEvaluation) -> Result<(), SemanticsError> {
    for t in m.term_universe() {
        let parts: Vec<&Term> = match t {
            Term::App(l, r) | Term::Sum(l, r) => vec![l, r],
            Term::Bang(i) => vec![i],
            _ => vec![],
        };
        for p in parts {
            if !m.term_universe().contains(p) {
                return Err(SemanticsError::UniverseNotClosed(format!("term {p}")));
            }
        }
    }
    for f in m.formula_universe() {
        let parts: Vec<&Formula> = match f {
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => vec![l, r],
            Formula::Just(t, b) => {
                if !m.term_universe().contains(t) {
                    return Err(SemanticsError::UniverseNotClosed(format!("term {t}")));
                }
                vec![b]
            }
            _ => vec![],
        };
        for p in parts {
            if !m.formula_universe().contains(p) {
                return Err(SemanticsError::UniverseNotClosed(format!("formula {p}")));
            }
        }
    }
    Ok(())
}

/// Computes the least evidence function containing the base evidence and
/// closed under the application, sum, constant-specification and `!`
/// conditions, with evidence persisting upward along the order.
pub fn close_evidence(m: &BasicEvaluation) -> Result<EvidenceClosure, SemanticsError> {
    check_universe(m)?;
    let n = m.len();
    let mut terms: Vec<&Term> = m.term_universe().iter().collect();
    terms.sort_by_key(|t| t.size());
    let mut sets: HashMap<Term, Vec<Evidence>> = HashMap::with_capacity(terms.len());
    for t in terms {
        let mut per_world = Vec::with_capacity(n);
        for v in 0..n {
            let mut set: BTreeSet<PFormula> = BTreeSet::new();
            for w in 0..n {
                if m.leq(w, v) {
                    if let Some(fs) = m.base_evidence().get(&(w, t.clone())) {
                        set.extend(fs.iter().map(PFormula::ground));
                    }
                }
            }
            match t {
                Term::Constant(c) => set.extend(m.cs().evidence_patterns(c).into_iter().map(|p| p.canonical())),
                Term::Variable(_) => {}
                Term::Sum(l, r) => {
                    set.extend(sets[&**l][v].all.iter().cloned());
                    set.extend(sets[&**r][v].all.iter().cloned());
                }
                Term::Bang(s) => {
                    let ps = PTerm::ground(s);
                    set.extend(sets[&**s][v].all.iter().map(|p| PFormula::Just(ps.clone(), Box::new(p.clone()))));
                }
                Term::App(s, u) => {
                    for major in &sets[&**s][v].all {
                        for minor in &sets[&**u][v].all {
                            if let Some(r) = apply_patterns(major, minor) {
                                set.insert(r);
                            }
                        }
                    }
                }
            }
            per_world.push(Evidence::new(set));
        }
        sets.insert(t.clone(), per_world);
    }
    Ok(EvidenceClosure { sets })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::proof::ConstantSpecification;
    use crate::syntax::{parse_formula, parse_term};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn one_world() -> BasicEvaluation {
        BasicEvaluation::with_worlds(1, Arc::new(ConstantSpecification::standard()))
    }

    #[test]
    fn sum_collects_both_sides() {
        let mut m = one_world();
        m.add_evidence(0, t("x"), f("p"));
        m.extend_universe([&f("x + y:p")]);
        let c = close_evidence(&m).unwrap();
        assert_eq!(c.contains(&t("x + y"), 0, &f("p")), Some(true));
        assert_eq!(c.contains(&t("y + x"), 0, &f("p")), None);
    }

    #[test]
    fn application_applies_implications() {
        let mut m = one_world();
        m.add_evidence(0, t("s"), f("p -> q"));
        m.add_evidence(0, t("u"), f("p"));
        m.extend_universe([&f("s.u:q")]);
        let c = close_evidence(&m).unwrap();
        assert_eq!(c.contains(&t("s.u"), 0, &f("q")), Some(true));
        assert_eq!(c.contains(&t("s.u"), 0, &f("p")), Some(false));
    }

    #[test]
    fn bang_quotes_evidence() {
        let mut m = one_world();
        m.add_evidence(0, t("s"), f("p"));
        m.extend_universe([&f("!s:s:p")]);
        let c = close_evidence(&m).unwrap();
        assert_eq!(c.contains(&t("!s"), 0, &f("s:p")), Some(true));
    }

    #[test]
    fn schematic_constants_through_application() {
        // c1 justifies every K instance: (c1.x)* ∋ q -> p whenever p ∈ x*
        let mut m = one_world();
        m.add_evidence(0, t("x"), f("p"));
        m.extend_universe([&f("c1.x:(q -> p)")]);
        let c = close_evidence(&m).unwrap();
        assert_eq!(c.contains(&t("c1.x"), 0, &f("q -> p")), Some(true));
        assert_eq!(c.contains(&t("c1.x"), 0, &f("x:q -> p")), Some(true));
        assert_eq!(c.contains(&t("c1.x"), 0, &f("q -> q")), Some(false));
        assert_eq!(c.contains(&t("c1"), 0, &f("p -> q -> p")), Some(true));
    }

    #[test]
    fn evidence_persists_upward() {
        let mut m = BasicEvaluation::with_worlds(2, Arc::new(ConstantSpecification::new()));
        m.set_leq(0, 1);
        m.add_evidence(0, t("x"), f("p"));
        let c = close_evidence(&m).unwrap();
        assert_eq!(c.contains(&t("x"), 1, &f("p")), Some(true));
    }

    #[test]
    fn missing_subterm_is_reported() {
        let mut m = one_world();
        m.insert_term_raw(t("x.y"));
        assert!(matches!(close_evidence(&m), Err(SemanticsError::UniverseNotClosed(_))));
    }
}
