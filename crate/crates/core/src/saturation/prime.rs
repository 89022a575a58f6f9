use std::collections::BTreeSet;

use serde::Serialize;

use super::{BoundedTheory, Certificate, FormulaUniverse, Oracle, SaturationError, Sequent};
use crate::syntax::{print_formula, Formula};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PrimeVerdict {
    Prime,
    NotPrime(String),
    Unknown(String),
}

impl PrimeVerdict {
    pub fn is_prime(&self) -> bool {
        matches!(self, PrimeVerdict::Prime)
    }
}

/// Checks consistency, the disjunction property, and closure relative to
/// the universe: every `A` in the universe outside the members must come
/// with a countermodel to `members ⊢ A`. Oracle answers are recorded in
/// `th`.
pub fn check_prime(th: &mut BoundedTheory, u: &FormulaUniverse, oracle: &Oracle) -> PrimeVerdict {
    if let Some(a) = th.members.iter().find(|a| !u.contains(a)) {
        return PrimeVerdict::NotPrime(format!("{} is outside the universe", print_formula(a)));
    }
    if th.members.contains(&Formula::Falsum) {
        return PrimeVerdict::NotPrime("contains _|_".into());
    }
    for f in &th.members {
        if let Formula::Or(a, b) = f {
            if !th.members.contains(&**a) && !th.members.contains(&**b) {
                return PrimeVerdict::NotPrime(format!("disjunction property fails for {}", print_formula(f)));
            }
        }
    }
    let mut unknown = None;
    for a in u.formulas() {
        if th.members.contains(a) {
            continue;
        }
        match th.ask(oracle, Sequent::new(th.members.iter().cloned(), a.clone())) {
            Certificate::Derivable(_) => {
                return PrimeVerdict::NotPrime(format!("derives {} but does not contain it", print_formula(a)));
            }
            Certificate::Unknown => {
                unknown.get_or_insert_with(|| format!("closure under {} undecided", print_formula(a)));
            }
            Certificate::RefutedBySemantics(_) => {}
        }
    }
    match unknown {
        Some(reason) => PrimeVerdict::Unknown(reason),
        None => PrimeVerdict::Prime,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Split {
    Left,
    Right,
    Unknown,
}

/// Picks a disjunct that can be added to `n` without deriving `goal`,
/// preferring the left one; only a countermodel counts.
pub fn split_disjunction(n: &BTreeSet<Formula>, a: &Formula, b: &Formula, goal: &Formula, oracle: &Oracle) -> Split {
    let with = |x: &Formula| Sequent::new(n.iter().cloned().chain([x.clone()]), goal.clone());
    if oracle.query(&with(a)).is_refuted() {
        Split::Left
    } else if oracle.query(&with(b)).is_refuted() {
        Split::Right
    } else {
        Split::Unknown
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub index: usize,
    pub formula: String,
    pub added: bool,
    /// Kind of certificate behind the decision.
    pub certificate: &'static str,
}

#[derive(Clone, Debug)]
pub struct Saturation {
    pub theory: BoundedTheory,
    pub trace: Vec<TraceStep>,
}

/// Walks the universe in order, adding each formula whose addition is
/// certified not to derive `goal`.
pub fn prime_saturate(
    n: &BTreeSet<Formula>,
    goal: &Formula,
    u: &FormulaUniverse,
    oracle: &Oracle,
) -> Result<Saturation, SaturationError> {
    if let Some(a) = n.iter().find(|a| !u.contains(a)) {
        return Err(SaturationError::NotInUniverse(print_formula(a)));
    }
    let mut th = BoundedTheory::new(n.iter().cloned(), oracle.depth());
    if th.ask(oracle, Sequent::new(n.iter().cloned(), goal.clone())).is_derivable() {
        return Err(SaturationError::FailedPrecondition);
    }
    let mut trace = Vec::new();
    for (index, a) in u.formulas().iter().enumerate() {
        if th.members.contains(a) {
            continue;
        }
        let cert = th.ask(oracle, Sequent::new(th.members.iter().cloned().chain([a.clone()]), goal.clone()));
        let added = cert.is_refuted();
        if added {
            th.members.insert(a.clone());
        }
        trace.push(TraceStep { index, formula: print_formula(a), added, certificate: cert.kind() });
    }
    Ok(Saturation { theory: th, trace })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::proof::ConstantSpecification;
    use crate::saturation::inverse_evidence;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn set(xs: &[&str]) -> BTreeSet<Formula> {
        xs.iter().map(|s| f(s)).collect()
    }

    fn oracle() -> Oracle {
        Oracle::new(Arc::new(ConstantSpecification::standard()), 4)
    }

    #[test]
    fn prime_examples() {
        let o = oracle();
        let u = FormulaUniverse::from_seeds([&f("p \\/ q")]);
        let mut th = BoundedTheory::new(set(&["p \\/ q", "p"]), 4);
        assert_eq!(check_prime(&mut th, &u, &o), PrimeVerdict::Prime);
        let mut th = BoundedTheory::new(set(&["p \\/ q"]), 4);
        assert!(matches!(check_prime(&mut th, &u, &o), PrimeVerdict::NotPrime(_)));
        let u = FormulaUniverse::from_seeds([&f("_|_ -> p")]);
        let mut th = BoundedTheory::new(set(&["_|_"]), 4);
        assert!(matches!(check_prime(&mut th, &u, &o), PrimeVerdict::NotPrime(_)));
        // missing a derivable member
        let u = FormulaUniverse::from_seeds([&f("p /\\ q")]);
        let mut th = BoundedTheory::new(set(&["p", "q"]), 4);
        assert!(matches!(check_prime(&mut th, &u, &o), PrimeVerdict::NotPrime(_)));
    }

    #[test]
    fn split_examples() {
        let o = oracle();
        let (p, q, bot) = (f("p"), f("q"), f("_|_"));
        assert_eq!(split_disjunction(&set(&[]), &p, &q, &bot, &o), Split::Left);
        assert_eq!(split_disjunction(&set(&["p -> _|_"]), &p, &q, &bot, &o), Split::Right);
        assert_eq!(split_disjunction(&set(&[]), &p, &p, &f("p /\\ q"), &o), Split::Left);
    }

    #[test]
    fn saturation_examples() {
        let o = oracle();
        let u = FormulaUniverse::from_seeds([&f("p \\/ q"), &f("_|_")]);
        let s = prime_saturate(&set(&["p \\/ q"]), &f("_|_"), &u, &o).unwrap();
        let m = &s.theory.members;
        assert!(m.contains(&f("p \\/ q")) && (m.contains(&f("p")) || m.contains(&f("q"))));
        assert!(!m.contains(&f("_|_")));

        let u = FormulaUniverse::from_seeds([&f("p")]);
        let s = prime_saturate(&set(&[]), &f("p"), &u, &o).unwrap();
        assert!(s.theory.members.is_empty());

        let u = FormulaUniverse::from_seeds([&f("x:p"), &f("p"), &f("_|_")]);
        let mut s = prime_saturate(&set(&["x:p"]), &f("_|_"), &u, &o).unwrap();
        assert!(s.theory.members.is_superset(&set(&["x:p", "p"])));
        assert_eq!(check_prime(&mut s.theory, &u, &o), PrimeVerdict::Prime);
        assert_eq!(inverse_evidence(&s.theory, &crate::syntax::parse_term("x").unwrap()), set(&["p"]));
    }

    #[test]
    fn derivable_goal_fails_precondition() {
        let u = FormulaUniverse::from_seeds([&f("p /\\ q")]);
        let r = prime_saturate(&set(&["p /\\ q"]), &f("p"), &u, &oracle());
        assert_eq!(r.err(), Some(SaturationError::FailedPrecondition));
    }
}
