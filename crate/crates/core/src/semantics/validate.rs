use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use super::{BasicEvaluation, ClosedModel};
use crate::syntax::{Formula, Term};

/// Which requirement a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    /// A universe misses a subterm or subformula.
    Universe,
    Reflexivity,
    Transitivity,
    Antisymmetry,
    /// Atoms persist upward.
    M1,
    /// Evidence persists upward.
    M2,
    /// `s*·t* ⊆ (s·t)*`.
    Application,
    /// `s* ∪ t* ⊆ (s+t)*`.
    Sum,
    /// `(c, A) ∈ CS ⇒ A ∈ c*`.
    Specification,
    /// `s:s* ⊆ (!s)*`.
    Bang,
    /// `A ∈ t*_w ⇒ w ⊨ A`.
    Factivity,
}

impl Condition {
    pub fn tag(self) -> &'static str {
        match self {
            Condition::Universe => "universe",
            Condition::Reflexivity => "reflexivity",
            Condition::Transitivity => "transitivity",
            Condition::Antisymmetry => "antisymmetry",
            Condition::M1 => "M1",
            Condition::M2 => "M2",
            Condition::Application => "cond1",
            Condition::Sum => "cond2",
            Condition::Specification => "cond3",
            Condition::Bang => "cond4",
            Condition::Factivity => "factivity",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub worlds: Vec<String>,
    /// The offending term and/or formula, printed.
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.condition, self.worlds.join(","), self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckVerdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl CheckVerdict {
    fn from(violations: Vec<Violation>) -> Self {
        CheckVerdict { ok: violations.is_empty(), violations }
    }

    pub fn has(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }
}

struct Sink<'a> {
    names: &'a [String],
    out: Vec<Violation>,
}

impl Sink<'_> {
    fn push(&mut self, condition: Condition, worlds: &[usize], witness: String) {
        let worlds = worlds.iter().map(|&w| self.names[w].clone()).collect();
        self.out.push(Violation { condition, worlds, witness });
    }
}

fn order_and_atoms(m: &BasicEvaluation, sink: &mut Sink<'_>) {
    let n = m.len();
    for w in 0..n {
        if !m.leq(w, w) {
            sink.push(Condition::Reflexivity, &[w], String::new());
        }
        for v in 0..n {
            if w != v && m.leq(w, v) && m.leq(v, w)
                && w < v {
                    sink.push(Condition::Antisymmetry, &[w, v], String::new());
                }
            for u in 0..n {
                if m.leq(w, v) && m.leq(v, u) && !m.leq(w, u) {
                    sink.push(Condition::Transitivity, &[w, v, u], String::new());
                }
            }
            if w != v && m.leq(w, v) {
                for p in m.true_atoms(w) {
                    if !m.atom_true(p, v) {
                        sink.push(Condition::M1, &[w, v], p.clone());
                    }
                }
            }
        }
    }
}

/// `t*_w ∩ formula_universe` for every term and world.
type Restricted = HashMap<(Term, usize), BTreeSet<Formula>>;

fn restrict(cm: &ClosedModel) -> Restricted {
    let m = cm.evaluation();
    let mut out = HashMap::new();
    for t in m.term_universe() {
        for w in 0..m.len() {
            out.insert((t.clone(), w), cm.closure().restricted(t, w, m.formula_universe()));
        }
    }
    out
}

fn evidence_conditions(cm: &ClosedModel, ev: &Restricted, sink: &mut Sink<'_>) {
    let m = cm.evaluation();
    let fu = m.formula_universe();
    let get = |t: &Term, w: usize| &ev[&(t.clone(), w)];
    for t in m.term_universe() {
        for w in 0..m.len() {
            let here = get(t, w);
            for v in m.successors(w).filter(|&v| v != w) {
                for a in here.difference(get(t, v)) {
                    sink.push(Condition::M2, &[w, v], format!("{t}:{a}"));
                }
            }
            match t {
                Term::Constant(name) => {
                    for a in fu {
                        if !here.contains(a) && m.cs().contains(name, a) {
                            sink.push(Condition::Specification, &[w], format!("{t}:{a}"));
                        }
                    }
                }
                Term::Variable(_) => {}
                Term::Sum(l, r) => {
                    for a in get(l, w).union(get(r, w)) {
                        if !here.contains(a) {
                            sink.push(Condition::Sum, &[w], format!("{t}:{a}"));
                        }
                    }
                }
                Term::Bang(s) => {
                    for a in get(s, w) {
                        let quoted = Formula::just((**s).clone(), a.clone());
                        if cm.closure().contains(t, w, &quoted) != Some(true) {
                            sink.push(Condition::Bang, &[w], format!("{t}:{s}:{a}"));
                        }
                    }
                }
                Term::App(s, u) => {
                    let minors = get(u, w);
                    for major in get(s, w) {
                        if let Formula::Implies(b, a) = major {
                            if minors.contains(&**b) && !here.contains(&**a) {
                                sink.push(Condition::Application, &[w], format!("{t}:{a}"));
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Factivity restricted to the universes: every `A ∈ t*_w` with `t` in the
/// term universe and `A` in the formula universe is true at `w`.
pub fn check_factivity(cm: &ClosedModel) -> Vec<Violation> {
    let m = cm.evaluation();
    let mut sink = Sink { names: m.world_names(), out: Vec::new() };
    factivity(cm, &restrict(cm), &mut sink);
    sink.out
}

fn factivity(cm: &ClosedModel, ev: &Restricted, sink: &mut Sink<'_>) {
    let m = cm.evaluation();
    let mut cache = HashMap::new();
    for t in m.term_universe() {
        for w in 0..m.len() {
            for a in &ev[&(t.clone(), w)] {
                let Ok(row) = cm.table(a, &mut cache) else { continue };
                if !row[w] {
                    sink.push(Condition::Factivity, &[w], format!("{t}:{a}"));
                }
            }
        }
    }
}

fn evidence_and_factivity(cm: &ClosedModel, sink: &mut Sink<'_>) {
    let ev = restrict(cm);
    evidence_conditions(cm, &ev, sink);
    factivity(cm, &ev, sink);
}

/// Checks the order laws, M1, M2, the four closure conditions and
/// factivity, all within the universes.
pub fn validate_model(m: &BasicEvaluation) -> CheckVerdict {
    let mut sink = Sink { names: m.world_names(), out: Vec::new() };
    order_and_atoms(m, &mut sink);
    match ClosedModel::close(m.clone()) {
        Ok(cm) => {
            evidence_and_factivity(&cm, &mut sink);
        }
        Err(e) => sink.out.push(Violation { condition: Condition::Universe, worlds: Vec::new(), witness: e.to_string() }),
    }
    CheckVerdict::from(sink.out)
}

/// [`validate_model`] for an already closed model.
pub fn validate_closed(cm: &ClosedModel) -> CheckVerdict {
    let m = cm.evaluation();
    let mut sink = Sink { names: m.world_names(), out: Vec::new() };
    order_and_atoms(m, &mut sink);
    evidence_and_factivity(cm, &mut sink);
    CheckVerdict::from(sink.out)
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

    fn chain() -> BasicEvaluation {
        let mut m = BasicEvaluation::with_worlds(2, Arc::new(ConstantSpecification::standard()));
        m.set_leq(0, 1);
        m
    }

    #[test]
    fn excluded_middle_model_is_valid() {
        let mut m = chain();
        m.set_atom(1, "p");
        m.extend_universe([&f("p \\/ (p -> _|_)")]);
        let v = validate_model(&m);
        assert!(v.ok, "{:?}", v.violations);
    }

    #[test]
    fn factivity_breach() {
        let mut m = chain();
        m.add_evidence(0, parse_term("x").unwrap(), f("p"));
        let v = validate_model(&m);
        assert!(!v.ok);
        assert!(v.violations.iter().any(|x| x.condition == Condition::Factivity
            && x.worlds == ["w0"]
            && x.witness == "x:p"));
    }

    #[test]
    fn m1_breach() {
        let mut m = chain();
        m.set_atom(0, "p");
        let v = validate_model(&m);
        assert_eq!(v.violations.len(), 1);
        assert_eq!(v.violations[0].condition, Condition::M1);
    }

    #[test]
    fn order_laws() {
        let mut m = BasicEvaluation::with_worlds(3, Arc::new(ConstantSpecification::new()));
        m.set_leq(0, 1);
        m.set_leq(1, 0);
        m.set_leq(1, 2);
        let v = validate_model(&m);
        assert!(v.has(Condition::Antisymmetry));
        assert!(v.has(Condition::Transitivity));
        assert!(!v.has(Condition::Reflexivity));
    }

    #[test]
    fn justification_truth_axiom_holds_in_valid_model() {
        let mut m = chain();
        m.set_atom(0, "p");
        m.set_atom(1, "p");
        m.add_evidence(0, parse_term("x").unwrap(), f("p"));
        m.extend_universe([&f("x:p -> p")]);
        let v = validate_model(&m);
        assert!(v.ok, "{:?}", v.violations);
        let cm = ClosedModel::close(m).unwrap();
        assert!(super::super::check_validity(&cm, &f("x:p -> p")).unwrap());
    }
}
