use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{check_prime, BoundedTheory, Certificate, FormulaUniverse, Oracle, PrimeVerdict, SaturationError, Sequent};
use crate::par;
use crate::proof::match_axiom;
use crate::semantics::{BasicEvaluation, ClosedModel, SemanticsError};
use crate::syntax::{print_formula, Formula, Term};

/// The canonical model restricted to the prime subsets of a universe.
#[derive(Clone, Debug)]
pub struct CanonicalModel {
    pub evaluation: BasicEvaluation,
    /// Worlds in order: `Δ0`, `Δ1`, ...
    pub worlds: Vec<BoundedTheory>,
    /// Candidate sets left out because the oracle could not decide them.
    pub excluded: Vec<(BTreeSet<Formula>, String)>,
}

/// Necessary conditions for a set to be prime and closed within the
/// universe, cheap enough to run on every subset.
fn plausible(u: &FormulaUniverse, inn: &[bool], forced: &[bool]) -> bool {
    let at = |f: &Formula| inn[u.index_of(f).expect("universe is closed")];
    u.formulas().iter().enumerate().all(|(i, f)| {
        if forced[i] && !inn[i] {
            return false;
        }
        match f {
            Formula::Falsum => !inn[i],
            Formula::Atom(_) => true,
            Formula::And(a, b) => inn[i] == (at(a) && at(b)),
            Formula::Or(a, b) => inn[i] == (at(a) || at(b)),
            Formula::Implies(a, b) => (!inn[i] || !at(a) || at(b)) && (!at(b) || inn[i]),
            Formula::Just(_, a) => !inn[i] || at(a),
        }
    })
}

/// Enumerates subsets of `u` by size then lexicographically, keeps those
/// certified prime, and assembles them into a model ordered by inclusion
/// with atoms by membership and evidence `t⁻¹Δ`.
pub fn bounded_canonical_model(u: &FormulaUniverse, oracle: &Oracle, cap: usize, parallel: bool) -> Result<CanonicalModel, SaturationError> {
    let n = u.len();
    if n > cap || n >= 32 {
        return Err(SaturationError::CapExceeded { size: n, cap });
    }
    // theorems in the universe belong to every prime set
    let forced: Vec<bool> = u
        .formulas()
        .iter()
        .map(|f| {
            !match_axiom(f).is_empty()
                || matches!(f, Formula::Implies(a, _) if **a == Formula::Falsum)
                || matches!(f, Formula::Just(Term::Constant(c), a) if oracle.cs().contains(c, a))
        })
        .collect();
    let mut candidates: Vec<Vec<usize>> = (0u32..(1u32 << n))
        .filter_map(|mask| {
            let inn: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            plausible(u, &inn, &forced).then(|| (0..n).filter(|&i| inn[i]).collect())
        })
        .collect();
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let checked = par::map(&candidates, parallel, |idx| {
        let mut th = BoundedTheory::new(idx.iter().map(|&i| u.formulas()[i].clone()), oracle.depth());
        let verdict = check_prime(&mut th, u, oracle);
        (th, verdict)
    });
    let mut worlds = Vec::new();
    let mut excluded = Vec::new();
    for (th, verdict) in checked {
        match verdict {
            PrimeVerdict::Prime => worlds.push(th),
            PrimeVerdict::Unknown(reason) => excluded.push((th.members, reason)),
            PrimeVerdict::NotPrime(_) => {}
        }
    }
    let names: Vec<String> = (0..worlds.len()).map(|i| format!("Δ{i}")).collect();
    let mut m = BasicEvaluation::new(names, oracle.cs().clone());
    for (i, a) in worlds.iter().enumerate() {
        for (j, b) in worlds.iter().enumerate() {
            if i != j && a.members.is_subset(&b.members) {
                m.set_leq(i, j);
            }
        }
        for f in &a.members {
            match f {
                Formula::Atom(p) => m.set_atom(i, p.clone()),
                Formula::Just(t, body) => m.add_evidence(i, t.clone(), (**body).clone()),
                _ => {}
            }
        }
    }
    m.extend_universe(u.formulas());
    Ok(CanonicalModel { evaluation: m, worlds, excluded })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TruthLemmaReport {
    /// (world, formula) pairs compared.
    pub checked: usize,
    /// `world: formula (member=.., true=..)` for each disagreement.
    pub mismatches: Vec<String>,
    /// Pairs skipped for lack of a certificate, and excluded candidate sets.
    pub unknown: Vec<String>,
}

impl TruthLemmaReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares membership with truth for every world and every formula of the
/// universe whose status is certified.
pub fn truth_lemma(cm: &CanonicalModel, u: &FormulaUniverse) -> Result<TruthLemmaReport, SemanticsError> {
    let closed = ClosedModel::close(cm.evaluation.clone())?;
    let mut report = TruthLemmaReport::default();
    let mut cache = HashMap::new();
    let names = cm.evaluation.world_names();
    for a in u.formulas() {
        let row = closed.table(a, &mut cache)?;
        for (w, th) in cm.worlds.iter().enumerate() {
            let member = th.members.contains(a);
            let certified = member
                || matches!(
                    th.certificates.get(&Sequent::new(th.members.iter().cloned(), a.clone())),
                    Some(Certificate::RefutedBySemantics(_))
                );
            if !certified {
                report.unknown.push(format!("{}: {}", names[w], print_formula(a)));
                continue;
            }
            report.checked += 1;
            if member != row[w] {
                report
                    .mismatches
                    .push(format!("{}: {} (member={member}, true={})", names[w], print_formula(a), row[w]));
            }
        }
    }
    for (set, reason) in &cm.excluded {
        let members: Vec<String> = set.iter().map(print_formula).collect();
        report.unknown.push(format!("excluded {{{}}}: {reason}", members.join(", ")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::proof::ConstantSpecification;
    use crate::semantics::validate_model;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn build(seeds: &[&str]) -> (FormulaUniverse, CanonicalModel) {
        let fs: Vec<Formula> = seeds.iter().map(|s| f(s)).collect();
        let u = FormulaUniverse::from_seeds(&fs);
        let o = Oracle::new(Arc::new(ConstantSpecification::standard()), 4);
        let cm = bounded_canonical_model(&u, &o, 12, false).unwrap();
        (u, cm)
    }

    #[test]
    fn single_atom_gives_two_worlds() {
        let (u, cm) = build(&["p"]);
        assert_eq!(cm.worlds.len(), 2);
        assert!(cm.worlds[0].members.is_empty());
        assert_eq!(cm.worlds[1].members, [f("p")].into_iter().collect());
        assert!(cm.evaluation.leq(0, 1));
        assert!(validate_model(&cm.evaluation).ok);
        let r = truth_lemma(&cm, &u).unwrap();
        assert!(r.holds() && r.unknown.is_empty());
        assert_eq!(r.checked, 2);
    }

    #[test]
    fn disjunctions_are_prime() {
        let (u, cm) = build(&["p \\/ q"]);
        let pq = f("p \\/ q");
        for w in &cm.worlds {
            if w.members.contains(&pq) {
                assert!(w.members.contains(&f("p")) || w.members.contains(&f("q")));
            }
        }
        assert!(truth_lemma(&cm, &u).unwrap().holds());
    }

    #[test]
    fn justified_formulas_hold() {
        let (u, cm) = build(&["x:p", "p"]);
        for w in &cm.worlds {
            assert!(!w.members.contains(&f("x:p")) || w.members.contains(&f("p")));
        }
        assert_eq!(cm.worlds.len(), 3);
        assert!(validate_model(&cm.evaluation).ok);
        let r = truth_lemma(&cm, &u).unwrap();
        assert!(r.holds() && r.unknown.is_empty(), "{r:?}");
    }

    #[test]
    fn implication_universe() {
        let (u, cm) = build(&["(p -> q) -> _|_", "x:(p -> q)"]);
        assert!(validate_model(&cm.evaluation).ok);
        let r = truth_lemma(&cm, &u).unwrap();
        assert!(r.holds() && r.unknown.is_empty(), "{r:?}");
    }

    #[test]
    fn cap_is_enforced() {
        let u = FormulaUniverse::from_seeds([&f("(p -> q) /\\ (q -> r) /\\ (r -> p1)")]);
        let o = Oracle::new(Arc::new(ConstantSpecification::standard()), 2);
        assert!(matches!(bounded_canonical_model(&u, &o, 5, false), Err(SaturationError::CapExceeded { .. })));
    }
}
