use std::sync::Arc;

use jlogic_core::proof::{check_proof, ConstantSpecification};
use jlogic_core::saturation::shipped::SHIPPED;
use jlogic_core::saturation::{
    bounded_canonical_model, check_prime, inverse_evidence, prime_saturate, truth_lemma, Certificate, Oracle, PrimeVerdict,
};
use jlogic_core::semantics::{evaluate_truth, validate_closed, validate_model};
use jlogic_core::syntax::Formula;

fn oracle() -> Oracle {
    Oracle::new(Arc::new(ConstantSpecification::standard()), 4)
}

#[test]
fn shipped_saturations_are_prime() {
    let o = oracle();
    for s in SHIPPED {
        let u = s.universe();
        assert!(u.len() <= 30, "{}", s.name);
        let mut sat = prime_saturate(&s.base_set(), &s.goal(), &u, &o).unwrap_or_else(|e| panic!("{}: {e}", s.name));
        let th = &mut sat.theory;
        assert!(th.members.is_superset(&s.base_set()), "{}", s.name);
        assert!(!th.members.contains(&s.goal()), "{}", s.name);
        assert_eq!(check_prime(th, &u, &o), PrimeVerdict::Prime, "{}", s.name);
        assert_eq!(th.unknown_count(), 0, "{}", s.name);
        for f in u.formulas() {
            if let Formula::Just(t, _) = f {
                assert!(inverse_evidence(th, t).is_subset(&th.members), "{}", s.name);
            }
        }
        // trace only ever grows the set
        let mut prev = s.base_set().len();
        for step in &sat.trace {
            prev += step.added as usize;
        }
        assert_eq!(prev, th.members.len(), "{}", s.name);
    }
}

#[test]
fn certificates_check_out() {
    let o = oracle();
    let s = &SHIPPED[2];
    let sat = prime_saturate(&s.base_set(), &s.goal(), &s.universe(), &o).unwrap();
    for (seq, cert) in &sat.theory.certificates {
        match cert {
            Certificate::Derivable(p) => {
                assert!(check_proof(p, o.cs()).is_accepted());
                assert_eq!(p.theorem(), Some(&seq.goal));
                assert!(p.hypotheses.iter().all(|h| seq.hyps.contains(h)));
            }
            Certificate::RefutedBySemantics(cm) => {
                assert!(validate_closed(&cm.model).ok);
                assert!(!evaluate_truth(&cm.model, cm.world, &seq.goal).unwrap());
                for h in &seq.hyps {
                    assert!(evaluate_truth(&cm.model, cm.world, h).unwrap());
                }
            }
            Certificate::Unknown => panic!("unknown for {seq}"),
        }
    }
}

#[test]
fn shipped_canonical_models_satisfy_truth_lemma() {
    let o = oracle();
    for s in SHIPPED {
        let u = s.universe();
        if u.len() > 12 {
            continue;
        }
        let cm = bounded_canonical_model(&u, &o, 12, true).unwrap();
        assert!(!cm.worlds.is_empty(), "{}", s.name);
        let v = validate_model(&cm.evaluation);
        assert!(v.ok, "{}: {:?}", s.name, v.violations);
        let r = truth_lemma(&cm, &u).unwrap();
        assert!(r.holds(), "{}: {:?}", s.name, r.mismatches);
        assert!(r.unknown.is_empty(), "{}: {:?}", s.name, r.unknown);
        eprintln!("{}: {} formulas, {} worlds", s.name, u.len(), cm.worlds.len());
    }
}
