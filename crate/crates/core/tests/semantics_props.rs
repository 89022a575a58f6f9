use std::collections::BTreeSet;
use std::sync::Arc;

use jlogic_core::generate::Gen;
use jlogic_core::proof::ConstantSpecification;
use jlogic_core::semantics::{apply_patterns, validate_model, BasicEvaluation, ClosedModel};
use jlogic_core::syntax::{Formula, Term};
use proptest::prelude::*;

fn cs() -> Arc<ConstantSpecification> {
    Arc::new(ConstantSpecification::standard())
}

fn model(seed: u64, formulas: usize) -> (Vec<Formula>, BasicEvaluation) {
    let mut g = Gen::new(seed);
    let fs: Vec<Formula> = (0..formulas).map(|_| g.formula(3)).collect();
    let m = g.valid_model(&cs(), 4, 4, &fs);
    (fs, m)
}

/// `t*_v` members contributed by base evidence at or below `v`.
fn base_up(m: &BasicEvaluation, t: &Term, v: usize) -> BTreeSet<Formula> {
    (0..m.len())
        .filter(|&w| m.leq(w, v))
        .filter_map(|w| m.base_evidence().get(&(w, t.clone())))
        .flatten()
        .cloned()
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truth_persists_upward(seed in any::<u64>()) {
        let (fs, m) = model(seed, 12);
        prop_assert!(validate_model(&m).ok);
        let cm = ClosedModel::close(m).unwrap();
        let ev = cm.evaluation();
        for a in &fs {
            let row = cm.truth_table(a).unwrap();
            for w in 0..ev.len() {
                for v in ev.successors(w) {
                    prop_assert!(!row[w] || row[v]);
                }
            }
        }
    }

    #[test]
    fn theorems_hold_everywhere(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let th = g.theorems(10, 12);
        let m = g.valid_model(&cs(), 3, 4, &th);
        prop_assert!(validate_model(&m).ok);
        let cm = ClosedModel::close(m).unwrap();
        for a in &th {
            prop_assert!(cm.truth_table(a).unwrap().iter().all(|&x| x), "{}", a);
        }
    }

    /// Every derived member has a one-step reason in the rest of the family,
    /// so none can be dropped without breaking a closure condition.
    #[test]
    fn closure_is_least(seed in any::<u64>()) {
        let (_, m) = model(seed, 6);
        let cm = ClosedModel::close(m.clone()).unwrap();
        let c = cm.closure();
        let fu = m.formula_universe();
        for t in m.term_universe() {
            for w in 0..m.len() {
                let base = base_up(&m, t, w);
                for a in c.restricted(t, w, fu) {
                    if base.contains(&a) {
                        continue;
                    }
                    let has = |s: &Term, b: &Formula| c.contains(s, w, b) == Some(true);
                    let reason = match t {
                        Term::Constant(name) => m.cs().contains(name, &a),
                        Term::Variable(_) => false,
                        Term::Sum(l, r) => has(l, &a) || has(r, &a),
                        Term::Bang(s) => matches!(&a, Formula::Just(s2, b) if s2 == &**s && has(s, b)),
                        Term::App(s, u) => {
                            let (majors, minors) = (c.patterns(s, w).unwrap(), c.patterns(u, w).unwrap());
                            majors.iter().any(|p| {
                                minors.iter().any(|q| apply_patterns(p, q).is_some_and(|r| r.is_match(&a)))
                            })
                        }
                    };
                    prop_assert!(reason, "{}:{} at {}", t, a, w);
                }
            }
        }
    }

    /// Feeding the closure back in as base evidence changes nothing.
    #[test]
    fn closure_is_idempotent(seed in any::<u64>()) {
        let (_, m) = model(seed, 6);
        let cm = ClosedModel::close(m.clone()).unwrap();
        let fu = m.formula_universe().clone();
        let mut again = m.clone();
        for t in m.term_universe() {
            for w in 0..m.len() {
                for a in cm.closure().restricted(t, w, &fu) {
                    again.add_evidence(w, t.clone(), a);
                }
            }
        }
        prop_assert_eq!(again.formula_universe(), &fu);
        let cm2 = ClosedModel::close(again).unwrap();
        for t in m.term_universe() {
            for w in 0..m.len() {
                prop_assert_eq!(cm.closure().restricted(t, w, &fu), cm2.closure().restricted(t, w, &fu));
            }
        }
    }
}
