use super::{check_proof, AxiomSchema, CheckReport, ConstantSpecification, Proof, ProofBuilder, ProofError, Rule};
use crate::syntax::{Formula, Term};

/// Lifts a proof of `A` from `B1..Bn` to a proof of `t:A` from
/// `s1:B1..sn:Bn`, returning `t` and the lifted proof.
///
/// Hypotheses map to their witnesses, axioms to a covering constant,
/// modus ponens to application and necessitated `c:A` to `!c`.
pub fn internalize(
    proof: &Proof,
    witnesses: &[Term],
    cs: &ConstantSpecification,
) -> Result<(Term, Proof), ProofError> {
    if witnesses.len() != proof.hypotheses.len() {
        return Err(ProofError::WitnessCount { expected: proof.hypotheses.len(), got: witnesses.len() });
    }
    if let CheckReport::Rejected(r) = check_proof(proof, cs) {
        return Err(ProofError::InvalidProof(r));
    }
    let lifted_hyps: Vec<Formula> = proof
        .hypotheses
        .iter()
        .zip(witnesses)
        .map(|(b, s)| Formula::just(s.clone(), b.clone()))
        .collect();
    let mut b = ProofBuilder::new(lifted_hyps);
    // (term, step proving term:C_i)
    let mut lifted: Vec<(Term, usize)> = Vec::with_capacity(proof.steps.len());
    for step in &proof.steps {
        let c = &step.conclusion;
        let entry = match &step.rule {
            Rule::Hypothesis(k) => {
                let s = witnesses[*k].clone();
                let i = b.hyp(&Formula::just(s.clone(), c.clone()));
                (s, i)
            }
            Rule::Axiom(_) => {
                let k = cs.constant_for(c).ok_or_else(|| ProofError::NotAppropriate(c.clone()))?;
                let i = b.necessitation(&k, c.clone());
                (Term::constant(k), i)
            }
            Rule::ModusPonens { major, minor } => {
                let (u, ui) = lifted[*major].clone();
                let (v, vi) = lifted[*minor].clone();
                let d = proof.steps[*minor].conclusion.clone();
                // u:(D -> C) -> (v:D -> u.v:C)
                let app = b.schema(AxiomSchema::JApp, &[d, c.clone()], &[u.clone(), v.clone()]);
                let m = b.mp(app, ui);
                (Term::app(u, v), b.mp(m, vi))
            }
            Rule::AxiomNecessitation(k) => {
                let Formula::Just(_, body) = c else { unreachable!("checked") };
                let nec = b.necessitation(k, (**body).clone());
                let t = Term::constant(k.clone());
                // k:A -> !k:k:A
                let four = b.schema(AxiomSchema::J4, &[(**body).clone()], std::slice::from_ref(&t));
                (Term::bang(t), b.mp(four, nec))
            }
        };
        lifted.push(entry);
    }
    let (t, last) = lifted.pop().expect("accepted proofs are nonempty");
    Ok((t, b.finish(last)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::ProofStep;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn step(c: &str, rule: Rule) -> ProofStep {
        ProofStep { conclusion: f(c), rule }
    }

    #[test]
    fn hypothesis_case() {
        let pf = Proof { hypotheses: vec![f("p")], steps: vec![step("p", Rule::Hypothesis(0))] };
        let (t, out) = internalize(&pf, &[Term::var("x")], &ConstantSpecification::standard()).unwrap();
        assert_eq!(t, Term::var("x"));
        assert_eq!(out.hypotheses, vec![f("x:p")]);
        assert_eq!(check_proof(&out, &ConstantSpecification::standard()), CheckReport::Accepted { theorem: f("x:p") });
    }

    #[test]
    fn modus_ponens_becomes_application() {
        let pf = Proof {
            hypotheses: vec![f("p -> q"), f("p")],
            steps: vec![
                step("p -> q", Rule::Hypothesis(0)),
                step("p", Rule::Hypothesis(1)),
                step("q", Rule::ModusPonens { major: 0, minor: 1 }),
            ],
        };
        let cs = ConstantSpecification::standard();
        let (t, out) = internalize(&pf, &[Term::var("x"), Term::var("y")], &cs).unwrap();
        assert_eq!(t.to_string(), "x.y");
        assert_eq!(out.hypotheses, vec![f("x:(p -> q)"), f("y:p")]);
        assert_eq!(check_proof(&out, &cs), CheckReport::Accepted { theorem: f("x.y:q") });
    }

    #[test]
    fn necessitation_becomes_bang() {
        let cs = ConstantSpecification::standard();
        let pf = Proof { hypotheses: vec![], steps: vec![step("c13:(x:p -> p)", Rule::AxiomNecessitation("c13".into()))] };
        let (t, out) = internalize(&pf, &[], &cs).unwrap();
        assert_eq!(t.to_string(), "!c13");
        assert_eq!(check_proof(&out, &cs), CheckReport::Accepted { theorem: f("!c13:c13:(x:p -> p)") });
    }

    #[test]
    fn uncovered_axiom_is_reported() {
        let mut cs = ConstantSpecification::new();
        cs.add_schematic("c1", AxiomSchema::K);
        let pf = Proof { hypotheses: vec![], steps: vec![step("x:p -> p", Rule::Axiom(AxiomSchema::JT))] };
        assert_eq!(internalize(&pf, &[], &cs), Err(ProofError::NotAppropriate(f("x:p -> p"))));
        assert!(matches!(internalize(&pf, &[Term::var("x")], &cs), Err(ProofError::WitnessCount { .. })));
    }
}
