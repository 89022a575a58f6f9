//! Seeded random generators for terms, formulas, proofs, theorems and
//! valid models. `JLOGIC_SEED` overrides the default seed.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::proof::{AxiomSchema, ConstantSpecification, Proof, ProofBuilder};
use crate::semantics::poset::posets;
use crate::semantics::{validate_model, BasicEvaluation, ClosedModel};
use crate::syntax::{Formula, Term};

pub const SEED_ENV: &str = "JLOGIC_SEED";

/// Formulas sampled from the requested universe as evidence candidates.
const SEED_POOL: usize = 24;

/// `JLOGIC_SEED` if set and numeric, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

pub struct Gen {
    rng: ChaCha8Rng,
    pub atoms: Vec<String>,
    pub variables: Vec<String>,
    pub constants: Vec<String>,
}

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: ["p", "q", "r"].map(String::from).to_vec(),
            variables: ["x", "y", "z"].map(String::from).to_vec(),
            constants: (1..=14).map(|i| format!("c{i}")).collect(),
        }
    }

    pub fn from_env(default: u64) -> Self {
        Self::new(seed_from_env(default))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn pick(&mut self, xs: &[String]) -> String {
        xs.choose(&mut self.rng).expect("non-empty pool").clone()
    }

    /// A term of depth at most `depth`.
    pub fn term(&mut self, depth: usize) -> Term {
        let leaf = depth == 0 || self.rng.gen_bool(0.4);
        if leaf {
            return if self.rng.gen_bool(0.6) {
                Term::var(self.pick(&self.variables.clone()))
            } else {
                Term::constant(self.pick(&self.constants.clone()))
            };
        }
        match self.rng.gen_range(0..3) {
            0 => Term::app(self.term(depth - 1), self.term(depth - 1)),
            1 => Term::sum(self.term(depth - 1), self.term(depth - 1)),
            _ => Term::bang(self.term(depth - 1)),
        }
    }

    /// A formula of depth at most `depth`; justification terms have depth
    /// at most 2.
    pub fn formula(&mut self, depth: usize) -> Formula {
        let leaf = depth == 0 || self.rng.gen_bool(0.25);
        if leaf {
            return if self.rng.gen_bool(0.1) {
                Formula::Falsum
            } else {
                Formula::atom(self.pick(&self.atoms.clone()))
            };
        }
        match self.rng.gen_range(0..4) {
            0 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
            1 => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
            2 => Formula::implies(self.formula(depth - 1), self.formula(depth - 1)),
            _ => {
                let d = self.rng.gen_range(0..=depth.min(2));
                Formula::just(self.term(d), self.formula(depth - 1))
            }
        }
    }

    /// An instance of `schema` with formula arguments of depth at most
    /// `depth`.
    pub fn schema_instance(&mut self, schema: AxiomSchema, depth: usize) -> Formula {
        let (nf, nt) = schema.arity();
        let fs: Vec<Formula> = (0..nf).map(|_| self.formula(depth)).collect();
        let ts: Vec<Term> = (0..nt).map(|_| self.term(2)).collect();
        schema.instantiate(&fs, &ts)
    }

    fn small_formula_from(&mut self, pool: &[Formula]) -> Formula {
        let small: Vec<&Formula> = pool.iter().filter(|f| f.size() <= 8).collect();
        if !small.is_empty() && self.rng.gen_bool(0.6) {
            (*small.choose(&mut self.rng).unwrap()).clone()
        } else {
            self.formula(1)
        }
    }

    /// A proof with `hyps` hypotheses and at most `max_steps` steps that
    /// `check_proof` accepts under the standard specification.
    pub fn proof(&mut self, hyps: usize, max_steps: usize) -> Proof {
        let hyps: Vec<Formula> = (0..hyps).map(|_| self.formula(2)).collect();
        let mut b = ProofBuilder::new(hyps.clone());
        for h in &hyps {
            b.hyp(h);
        }
        let mut stall = 0;
        while b.len() < max_steps && stall < 4 * max_steps {
            let before = b.len();
            let pool: Vec<Formula> = (0..b.len()).map(|i| b.conclusion(i).clone()).collect();
            match self.rng.gen_range(0..10) {
                0 | 1 => {
                    let schema = *AxiomSchema::ALL.choose(&mut self.rng).unwrap();
                    let (nf, nt) = schema.arity();
                    let fs: Vec<Formula> = (0..nf).map(|_| self.small_formula_from(&pool)).collect();
                    let ts: Vec<Term> = (0..nt).map(|_| self.term(1)).collect();
                    b.schema(schema, &fs, &ts);
                }
                2 => {
                    let schema = *AxiomSchema::ALL.choose(&mut self.rng).unwrap();
                    let a = self.schema_instance(schema, 1);
                    b.necessitation(&ConstantSpecification::standard_constant(schema), a);
                }
                3..=5 if max_steps - b.len() >= 2 && !pool.is_empty() => {
                    // weaken an earlier conclusion: A, A -> (B -> A) / B -> A
                    let i = self.rng.gen_range(0..pool.len());
                    if pool[i].size() <= 10 {
                        let extra = self.formula(1);
                        let k = b.schema(AxiomSchema::K, &[pool[i].clone(), extra], &[]);
                        b.mp(k, i);
                    }
                }
                _ => {
                    let mut pairs = Vec::new();
                    for (i, major) in pool.iter().enumerate() {
                        if let Formula::Implies(a, c) = major {
                            if let (Some(j), None) = (b.find(a), b.find(c)) {
                                pairs.push((i, j));
                            }
                        }
                    }
                    if let Some(&(i, j)) = pairs.choose(&mut self.rng) {
                        b.mp(i, j);
                    }
                }
            }
            if b.len() == before {
                stall += 1;
            }
        }
        if b.is_empty() {
            let a = self.schema_instance(AxiomSchema::K, 1);
            b.axiom(AxiomSchema::K, a);
        }
        b.into_proof()
    }

    /// Distinct theorems: conclusions of hypothesis-free random proofs.
    pub fn theorems(&mut self, count: usize, max_steps: usize) -> Vec<Formula> {
        let mut out = std::collections::BTreeSet::new();
        let mut order = Vec::new();
        let mut rounds = 0;
        while order.len() < count && rounds < 100 * count {
            rounds += 1;
            let p = self.proof(0, max_steps);
            let steps: Vec<Formula> = p.steps.iter().map(|s| s.conclusion.clone()).rev().collect();
            for f in steps {
                if f.size() <= 24 && out.insert(f.clone()) {
                    order.push(f);
                    break;
                }
            }
        }
        order
    }

    /// A random model with up to `max_worlds` worlds, the given formulas in
    /// its universe, and up to `budget` base evidence entries. Each seed is
    /// kept only if [`validate_model`] accepts it on a sample of the
    /// universe; the finished model is not re-validated here.
    pub fn valid_model(
        &mut self,
        cs: &Arc<ConstantSpecification>,
        max_worlds: usize,
        budget: usize,
        universe: &[Formula],
    ) -> BasicEvaluation {
        let n = self.rng.gen_range(1..=max_worlds.max(1));
        let ps = posets(n);
        let poset = ps.choose(&mut self.rng).unwrap().clone();
        let ups = poset.up_sets();
        let mut m = BasicEvaluation::with_worlds(n, cs.clone());
        for i in 0..n {
            for j in 0..n {
                if i != j && poset.leq[i][j] {
                    m.set_leq(i, j);
                }
            }
        }
        let atoms: std::collections::BTreeSet<String> =
            universe.iter().flat_map(|f| f.atoms()).chain(self.atoms.iter().cloned()).collect();
        for p in atoms {
            let set = *ups.choose(&mut self.rng).unwrap();
            for w in 0..n {
                if set >> w & 1 == 1 {
                    m.set_atom(w, p.clone());
                }
            }
        }
        // seed against a small sample of the universe, then grow it at the end
        let mut candidates: Vec<Formula> =
            crate::syntax::subformula_closure(universe).into_iter().filter(|f| f.size() <= 6).collect();
        candidates.shuffle(&mut self.rng);
        candidates.truncate(SEED_POOL);
        m.extend_universe(&candidates);
        let terms: Vec<Term> = m
            .term_universe()
            .iter()
            .filter(|t| t.size() <= 3)
            .cloned()
            .chain(self.variables.iter().map(Term::var))
            .collect();
        let mut seeded = 0;
        for _ in 0..budget * 4 {
            if seeded >= budget || candidates.is_empty() {
                break;
            }
            let w = self.rng.gen_range(0..n);
            let t = terms.choose(&mut self.rng).unwrap().clone();
            let a = candidates.choose(&mut self.rng).unwrap().clone();
            let true_here = ClosedModel::close(m.clone())
                .ok()
                .and_then(|cm| cm.truth_table(&a).ok())
                .is_some_and(|row| row[w]);
            if !true_here {
                continue;
            }
            let mut next = m.clone();
            next.add_evidence(w, t, a);
            if validate_model(&next).ok {
                m = next;
                seeded += 1;
            }
        }
        m.extend_universe(universe);
        m
    }
}
