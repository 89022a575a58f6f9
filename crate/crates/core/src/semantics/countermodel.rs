use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::poset::{posets, Poset};
use super::validate::validate_closed;
use super::{BasicEvaluation, ClosedModel};
use crate::par;
use crate::proof::ConstantSpecification;
use crate::syntax::{Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountermodelConfig {
    pub max_worlds: usize,
    /// Maximum number of justification subformulas seeded with evidence.
    pub evidence_budget: usize,
    /// Search candidates on the thread pool (needs the `parallel` feature).
    pub parallel: bool,
}

impl Default for CountermodelConfig {
    fn default() -> Self {
        CountermodelConfig { max_worlds: 3, evidence_budget: 1, parallel: true }
    }
}

/// A valid finite model and the least world where the hypotheses hold and
/// the goal fails.
#[derive(Clone, Debug)]
pub struct Countermodel {
    pub model: ClosedModel,
    pub world: usize,
}

impl Countermodel {
    pub fn world_name(&self) -> &str {
        &self.model.evaluation().world_names()[self.world]
    }
}

/// Searches finite models up to `max_worlds` worlds in which `a` fails
/// somewhere. Posets are tried by size then canonical code, atom valuations
/// and evidence seeds lexicographically, so the answer does not depend on
/// scheduling.
pub fn find_countermodel(a: &Formula, cfg: &CountermodelConfig, cs: &Arc<ConstantSpecification>) -> Option<Countermodel> {
    find_countermodel_sequent(&[], a, cfg, cs)
}

/// As [`find_countermodel`], for a world where every hypothesis holds and
/// `goal` fails.
pub fn find_countermodel_sequent(
    hyps: &[Formula],
    goal: &Formula,
    cfg: &CountermodelConfig,
    cs: &Arc<ConstantSpecification>,
) -> Option<Countermodel> {
    let mut all: Vec<&Formula> = hyps.iter().collect();
    all.push(goal);
    let atoms: Vec<String> = all.iter().flat_map(|f| f.atoms()).collect::<BTreeSet<_>>().into_iter().collect();
    let justs: Vec<(Term, Formula)> = all
        .iter()
        .flat_map(|f| f.subformulas())
        .filter_map(|f| match f {
            Formula::Just(t, b) => Some((t, *b)),
            _ => None,
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for n in 1..=cfg.max_worlds.max(1) {
        for poset in posets(n) {
            let mut base = BasicEvaluation::with_worlds(n, cs.clone());
            for (i, row) in poset.leq.iter().enumerate() {
                for (j, &b) in row.iter().enumerate() {
                    if b {
                        base.set_leq(i, j);
                    }
                }
            }
            base.extend_universe(all.iter().copied());
            let search = Candidates::new(&poset, atoms.len(), justs.len(), cfg.evidence_budget);
            let found = par::find_first(0..search.total(), cfg.parallel, |i| {
                let (atom_sets, seeds) = search.decode(i);
                let mut m = base.clone();
                for (p, set) in atoms.iter().zip(&atom_sets) {
                    for w in bits(*set, n) {
                        m.set_atom(w, p.clone());
                    }
                }
                for (k, set) in seeds {
                    for w in bits(set, n) {
                        m.add_evidence(w, justs[k].0.clone(), justs[k].1.clone());
                    }
                }
                let cm = ClosedModel::close(m).ok()?;
                let world = refuting_world(&cm, hyps, goal)?;
                validate_closed(&cm).ok.then_some(Countermodel { model: cm, world })
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

fn bits(set: u32, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |w| set >> w & 1 == 1)
}

fn refuting_world(cm: &ClosedModel, hyps: &[Formula], goal: &Formula) -> Option<usize> {
    let mut cache = HashMap::new();
    let g = cm.table(goal, &mut cache).ok()?;
    let hs: Vec<Vec<bool>> = hyps.iter().map(|h| cm.table(h, &mut cache)).collect::<Result<_, _>>().ok()?;
    (0..g.len()).find(|&w| !g[w] && hs.iter().all(|h| h[w]))
}

/// Enumeration of (atom up-sets, evidence seeds) for one poset.
struct Candidates {
    up: Vec<u32>,
    atoms: usize,
    /// Each entry: (justification index, up-set index), at most `budget`
    /// entries, sorted by justification index.
    seeds: Vec<Vec<(usize, usize)>>,
}

impl Candidates {
    fn new(poset: &Poset, atoms: usize, justs: usize, budget: usize) -> Self {
        let up = poset.up_sets();
        let mut seeds = Vec::new();
        let mut digits = vec![0usize; justs];
        // lexicographic over digit vectors with at most `budget` non-zero entries
        loop {
            if digits.iter().filter(|&&d| d != 0).count() <= budget {
                seeds.push(digits.iter().enumerate().filter(|(_, &d)| d != 0).map(|(k, &d)| (k, d)).collect());
            }
            let mut k = justs;
            loop {
                if k == 0 {
                    return Candidates { up, atoms, seeds };
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] < up.len() {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    fn total(&self) -> u64 {
        (self.up.len() as u64).pow(self.atoms as u32) * self.seeds.len() as u64
    }

    fn decode(&self, i: u64) -> (Vec<u32>, Vec<(usize, u32)>) {
        let s = self.seeds.len() as u64;
        let (mut atom_part, seed_part) = (i / s, i % s);
        let base = self.up.len() as u64;
        let mut atom_sets = vec![0; self.atoms];
        for slot in atom_sets.iter_mut().rev() {
            *slot = self.up[(atom_part % base) as usize];
            atom_part /= base;
        }
        let seeds = self.seeds[seed_part as usize].iter().map(|&(k, d)| (k, self.up[d])).collect();
        (atom_sets, seeds)
    }
}
