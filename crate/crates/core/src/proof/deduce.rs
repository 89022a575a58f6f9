use super::{check_proof, AxiomSchema, CheckReport, Proof, ProofBuilder, ProofError, Rule};
use crate::syntax::Formula;

/// Deduction theorem: turns a proof of `B` from `M ∪ {a}` into a proof of
/// `a -> B` from `M`.
///
/// `a` must be listed among the hypotheses (it may be unused). Every copy of
/// `a` is removed; the remaining hypotheses keep their order.
pub fn deduce(proof: &Proof, a: &Formula, cs: &super::ConstantSpecification) -> Result<Proof, ProofError> {
    if !proof.hypotheses.contains(a) {
        return Err(ProofError::HypothesisNotFound(a.clone()));
    }
    discharge(proof, a, cs)
}

/// Like [`deduce`], but `a` need not be a hypothesis at all: an absent `a`
/// is discharged vacuously.
pub fn discharge(proof: &Proof, a: &Formula, cs: &super::ConstantSpecification) -> Result<Proof, ProofError> {
    if let CheckReport::Rejected(r) = check_proof(proof, cs) {
        return Err(ProofError::InvalidProof(r));
    }
    Ok(discharge_unchecked(proof, a))
}

/// The transformation itself; `proof` must already be accepted.
pub(crate) fn discharge_unchecked(proof: &Proof, a: &Formula) -> Proof {
    let remaining: Vec<Formula> = proof.hypotheses.iter().filter(|h| *h != a).cloned().collect();
    let mut b = ProofBuilder::new(remaining);
    // idx[i] proves `a -> C_i`
    let mut idx = Vec::with_capacity(proof.steps.len());
    for step in &proof.steps {
        let c = &step.conclusion;
        let i = match &step.rule {
            Rule::Hypothesis(_) if c == a => identity(&mut b, a),
            Rule::Hypothesis(_) | Rule::Axiom(_) | Rule::AxiomNecessitation(_) => {
                let plain = match &step.rule {
                    Rule::Hypothesis(_) => b.hyp(c),
                    Rule::Axiom(s) => b.axiom(*s, c.clone()),
                    Rule::AxiomNecessitation(k) => {
                        let Formula::Just(_, body) = c else { unreachable!("checked") };
                        b.necessitation(k, (**body).clone())
                    }
                    Rule::ModusPonens { .. } => unreachable!(),
                };
                weaken(&mut b, plain, a)
            }
            Rule::ModusPonens { major, minor } => {
                let d = &proof.steps[*minor].conclusion;
                // (a -> (D -> C)) -> ((a -> D) -> (a -> C))
                let s = b.schema(AxiomSchema::S, &[a.clone(), d.clone(), c.clone()], &[]);
                let t = b.mp(s, idx[*major]);
                b.mp(t, idx[*minor])
            }
        };
        idx.push(i);
    }
    b.finish(*idx.last().expect("accepted proofs are nonempty"))
}

/// From a step proving `C`, derive `a -> C` by K.
pub(crate) fn weaken(b: &mut ProofBuilder, step: usize, a: &Formula) -> usize {
    let c = b.conclusion(step).clone();
    let target = Formula::implies(a.clone(), c.clone());
    if let Some(i) = b.find(&target) {
        return i;
    }
    let k = b.schema(AxiomSchema::K, &[c, a.clone()], &[]);
    b.mp(k, step)
}

/// `a -> a` via S, K, K.
pub(crate) fn identity(b: &mut ProofBuilder, a: &Formula) -> usize {
    let target = Formula::implies(a.clone(), a.clone());
    if let Some(i) = b.find(&target) {
        return i;
    }
    let aa = target;
    let s = b.schema(AxiomSchema::S, &[a.clone(), aa.clone(), a.clone()], &[]);
    let k1 = b.schema(AxiomSchema::K, &[a.clone(), aa], &[]);
    let m = b.mp(s, k1);
    let k2 = b.schema(AxiomSchema::K, &[a.clone(), a.clone()], &[]);
    b.mp(m, k2)
}
