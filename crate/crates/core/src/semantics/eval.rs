use std::collections::HashMap;

use super::{close_evidence, BasicEvaluation, EvidenceClosure, SemanticsError};
use crate::syntax::Formula;

/// A basic evaluation together with its closed evidence.
#[derive(Clone, Debug)]
pub struct ClosedModel {
    eval: BasicEvaluation,
    closure: EvidenceClosure,
}

impl ClosedModel {
    pub fn close(eval: BasicEvaluation) -> Result<Self, SemanticsError> {
        let closure = close_evidence(&eval)?;
        Ok(ClosedModel { eval, closure })
    }

    pub fn evaluation(&self) -> &BasicEvaluation {
        &self.eval
    }

    pub fn closure(&self) -> &EvidenceClosure {
        &self.closure
    }

    pub fn into_evaluation(self) -> BasicEvaluation {
        self.eval
    }

    /// Truth of `a` at every world, indexed by world.
    pub fn truth_table(&self, a: &Formula) -> Result<Vec<bool>, SemanticsError> {
        let mut cache = HashMap::new();
        self.table(a, &mut cache)
    }

    pub(crate) fn table(&self, a: &Formula, cache: &mut HashMap<Formula, Vec<bool>>) -> Result<Vec<bool>, SemanticsError> {
        if let Some(t) = cache.get(a) {
            return Ok(t.clone());
        }
        let n = self.eval.len();
        let out = match a {
            Formula::Falsum => vec![false; n],
            Formula::Atom(p) => (0..n).map(|w| self.eval.atom_true(p, w)).collect(),
            Formula::And(l, r) => {
                let (l, r) = (self.table(l, cache)?, self.table(r, cache)?);
                l.iter().zip(&r).map(|(x, y)| *x && *y).collect()
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.table(l, cache)?, self.table(r, cache)?);
                l.iter().zip(&r).map(|(x, y)| *x || *y).collect()
            }
            Formula::Implies(l, r) => {
                let (l, r) = (self.table(l, cache)?, self.table(r, cache)?);
                (0..n).map(|w| self.eval.successors(w).all(|v| !l[v] || r[v])).collect()
            }
            Formula::Just(t, body) => {
                let mut row = Vec::with_capacity(n);
                for w in 0..n {
                    let hit = self
                        .closure
                        .contains(t, w, body)
                        .ok_or_else(|| SemanticsError::UniverseNotClosed(format!("term {t}")))?;
                    row.push(hit);
                }
                row
            }
        };
        cache.insert(a.clone(), out.clone());
        Ok(out)
    }
}

/// Truth of `a` at world `w`.
pub fn evaluate_truth(m: &ClosedModel, w: usize, a: &Formula) -> Result<bool, SemanticsError> {
    if w >= m.eval.len() {
        return Err(SemanticsError::WorldOutOfRange(w));
    }
    Ok(m.truth_table(a)?[w])
}

/// Truth of `a` at every world.
pub fn check_validity(m: &ClosedModel, a: &Formula) -> Result<bool, SemanticsError> {
    Ok(m.truth_table(a)?.into_iter().all(|x| x))
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

    /// w0 <= w1, p true only at w1.
    fn excluded_middle_model() -> BasicEvaluation {
        let mut m = BasicEvaluation::with_worlds(2, Arc::new(ConstantSpecification::standard()));
        m.set_leq(0, 1);
        m.set_atom(1, "p");
        m
    }

    #[test]
    fn excluded_middle_fails_at_root() {
        let m = ClosedModel::close(excluded_middle_model()).unwrap();
        let lem = f("p \\/ (p -> _|_)");
        // brute force over both worlds by hand: w0 has p false and w1 >= w0 has p true
        assert!(!evaluate_truth(&m, 0, &lem).unwrap());
        assert!(evaluate_truth(&m, 1, &lem).unwrap());
        assert!(!check_validity(&m, &f("p")).unwrap());
        assert!(check_validity(&m, &f("_|_ -> p")).unwrap());
        assert!(!evaluate_truth(&m, 1, &Formula::Falsum).unwrap());
    }

    #[test]
    fn justification_clause_reads_evidence() {
        let mut e = excluded_middle_model();
        e.set_atom(0, "p");
        e.add_evidence(0, parse_term("x").unwrap(), f("p"));
        let m = ClosedModel::close(e).unwrap();
        assert!(evaluate_truth(&m, 0, &f("x:p")).unwrap());
        assert!(check_validity(&m, &f("x:p -> p")).unwrap());
    }

    #[test]
    fn unknown_term_is_an_error() {
        let m = ClosedModel::close(excluded_middle_model()).unwrap();
        assert!(matches!(evaluate_truth(&m, 0, &f("y:p")), Err(SemanticsError::UniverseNotClosed(_))));
        assert!(matches!(evaluate_truth(&m, 5, &f("p")), Err(SemanticsError::WorldOutOfRange(5))));
    }
}
