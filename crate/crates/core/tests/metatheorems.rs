use jlogic_core::generate::Gen;
use jlogic_core::proof::{bounded_derive, check_proof, deduce, internalize, ConstantSpecification, Derivation, ProofBuilder};
use jlogic_core::syntax::{parse_formula, Formula, Term};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// M ∪ {A} ⊢ B gives M ⊢ A -> B, and MP with A takes it back.
    #[test]
    fn deduction_both_ways(seed in any::<u64>(), hyps in 1usize..4) {
        let cs = ConstantSpecification::standard();
        let p = Gen::new(seed).proof(hyps, 30);
        let a = p.hypotheses[0].clone();
        let b = p.theorem().unwrap().clone();
        let d = deduce(&p, &a, &cs).unwrap();
        prop_assert!(check_proof(&d, &cs).is_accepted());
        prop_assert_eq!(d.theorem(), Some(&Formula::implies(a.clone(), b.clone())));
        prop_assert!(!d.hypotheses.contains(&a));

        let mut back = ProofBuilder::new(d.hypotheses.clone());
        let imp = back.splice(&d);
        let h = back.hyp(&a);
        let out = back.mp(imp, h);
        let back = back.finish(out);
        prop_assert!(check_proof(&back, &cs).is_accepted());
        prop_assert_eq!(back.theorem(), Some(&b));
    }

    #[test]
    fn internalization_yields_justified_theorem(seed in any::<u64>(), hyps in 0usize..4) {
        let cs = ConstantSpecification::standard();
        let p = Gen::new(seed).proof(hyps, 30);
        let ws: Vec<Term> = (0..hyps).map(|i| Term::var(format!("u{i}"))).collect();
        let (t, q) = internalize(&p, &ws, &cs).unwrap();
        prop_assert!(check_proof(&q, &cs).is_accepted());
        prop_assert_eq!(q.theorem(), Some(&Formula::just(t, p.theorem().unwrap().clone())));
        for h in &q.hypotheses {
            prop_assert!(matches!(h, Formula::Just(Term::Variable(_), _)));
        }
    }
}

#[test]
fn bounded_derive_is_monotone_in_depth() {
    let cs = ConstantSpecification::standard();
    let goals = ["p -> p", "p /\\ q -> q /\\ p", "(p -> q) -> (q -> r) -> p -> r", "x:p -> c1.x:(q -> p)"];
    for g in goals {
        let g = parse_formula(g).unwrap();
        let mut found = false;
        for k in 0..=6 {
            let d = bounded_derive(&[], &g, &cs, k);
            if found {
                assert!(d.is_derivable(), "lost {g:?} at depth {k}");
            }
            if let Derivation::Derivable(p) = &d {
                assert!(check_proof(p, &cs).is_accepted());
                assert_eq!(p.theorem(), Some(&g));
                found = true;
            }
        }
        assert!(found, "{g:?}");
    }
}
