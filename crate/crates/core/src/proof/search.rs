//! Bounded, goal-directed proof search.
//!
//! Each context (a set of hypotheses) is first saturated forward inside the
//! subformula universe of the query: conjunction elimination, factivity,
//! modus ponens, the justification axioms and every axiom instance or
//! necessitation that lands in the universe. The goal is then attacked
//! backwards. Implication and conjunction goals and disjunctive facts are
//! decomposed first since those steps never lose provability; after that the
//! search tries justification introductions, disjunction introduction,
//! implication facts with a provable antecedent, factivity, conjunction
//! elimination and ex falso. Discharged hypotheses go through the deduction
//! transformer, so every result is an ordinary Hilbert proof.
//!
//! Depths are explored iteratively from 0 up to the bound, so a goal found
//! at some bound is found at every larger bound.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use super::deduce::discharge_unchecked;
use super::{match_axiom, AxiomSchema, ConstantSpecification, Proof, ProofBuilder};
use crate::syntax::{subformula_closure, Formula, Term};

/// Outcome of [`bounded_derive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Derivable(Proof),
    /// No proof within the search discipline at this bound. This is not a
    /// certificate of underivability.
    UnknownAtBound,
}

impl Derivation {
    pub fn proof(&self) -> Option<&Proof> {
        match self {
            Derivation::Derivable(p) => Some(p),
            Derivation::UnknownAtBound => None,
        }
    }

    pub fn is_derivable(&self) -> bool {
        matches!(self, Derivation::Derivable(_))
    }
}

/// Searches for a proof of `goal` from `hyps` with backward depth at most
/// `depth`. The returned proof lists the distinct hypotheses in their given
/// order and is accepted by the checker.
pub fn bounded_derive(hyps: &[Formula], goal: &Formula, cs: &ConstantSpecification, depth: usize) -> Derivation {
    let mut seen = HashSet::new();
    let ordered: Vec<Formula> = hyps.iter().filter(|h| seen.insert((*h).clone())).cloned().collect();
    let ctx: Ctx = Rc::new(ordered.iter().cloned().collect());
    let universe = subformula_closure(ordered.iter().chain(std::iter::once(goal)));
    let mut search = Search::new(cs, universe);
    for d in 0..=depth {
        if let Some(p) = search.prove(&ctx, goal, d) {
            let mut b = ProofBuilder::new(ordered);
            let last = b.splice(&p);
            return Derivation::Derivable(b.finish(last));
        }
    }
    Derivation::UnknownAtBound
}

type Ctx = Rc<BTreeSet<Formula>>;

/// Forward-saturated facts of one context.
struct Facts {
    builder: ProofBuilder,
    known: BTreeMap<Formula, usize>,
}

impl Facts {
    fn proof_of(&self, a: &Formula) -> Option<Proof> {
        self.known.get(a).map(|&i| self.builder.finish(i))
    }

    fn has(&self, a: &Formula) -> bool {
        self.known.contains_key(a)
    }
}

struct Search<'a> {
    cs: &'a ConstantSpecification,
    universe: BTreeSet<Formula>,
    /// Axiom instances and necessitations inside the universe.
    free: Vec<(Formula, Option<AxiomSchema>, Option<String>)>,
    facts: HashMap<Ctx, Rc<Facts>>,
    memo: HashMap<(Ctx, Formula, usize), Option<Rc<Proof>>>,
    active: HashSet<(Ctx, Formula)>,
}

impl<'a> Search<'a> {
    fn new(cs: &'a ConstantSpecification, universe: BTreeSet<Formula>) -> Self {
        let mut free = Vec::new();
        for a in &universe {
            if let Some(s) = match_axiom(a).into_iter().next() {
                free.push((a.clone(), Some(s), None));
            } else if let Formula::Just(Term::Constant(c), body) = a {
                if cs.contains(c, body) {
                    free.push((a.clone(), None, Some(c.clone())));
                }
            }
        }
        Search { cs, universe, free, facts: HashMap::new(), memo: HashMap::new(), active: HashSet::new() }
    }

    fn facts(&mut self, ctx: &Ctx) -> Rc<Facts> {
        if let Some(f) = self.facts.get(ctx) {
            return f.clone();
        }
        let f = Rc::new(self.saturate(ctx));
        self.facts.insert(ctx.clone(), f.clone());
        f
    }

    fn saturate(&self, ctx: &Ctx) -> Facts {
        let mut b = ProofBuilder::new(ctx.iter().cloned().collect());
        let mut known = BTreeMap::new();
        for h in ctx.iter() {
            let i = b.hyp(h);
            known.insert(h.clone(), i);
        }
        for (a, schema, constant) in &self.free {
            if known.contains_key(a) {
                continue;
            }
            let i = match (schema, constant) {
                (Some(s), _) => b.axiom(*s, a.clone()),
                (None, Some(c)) => {
                    let Formula::Just(_, body) = a else { unreachable!() };
                    b.necessitation(c, (**body).clone())
                }
                _ => unreachable!(),
            };
            known.insert(a.clone(), i);
        }
        loop {
            let mut new: Vec<(Formula, usize)> = Vec::new();
            let snapshot: Vec<(Formula, usize)> = known.iter().map(|(f, i)| (f.clone(), *i)).collect();
            for (f, i) in &snapshot {
                match f {
                    Formula::And(l, r) => {
                        for (schema, part) in [(AxiomSchema::AndElimL, l), (AxiomSchema::AndElimR, r)] {
                            if !known.contains_key(&**part) {
                                let ax = b.schema(schema, &[(**l).clone(), (**r).clone()], &[]);
                                new.push(((**part).clone(), b.mp(ax, *i)));
                            }
                        }
                    }
                    Formula::Implies(x, y) => {
                        if let (Some(&xi), false) = (known.get(&**x), known.contains_key(&**y)) {
                            new.push(((**y).clone(), b.mp(*i, xi)));
                        }
                    }
                    Formula::Just(t, a)
                        if !known.contains_key(&**a) => {
                            let ax = b.schema(AxiomSchema::JT, &[(**a).clone()], std::slice::from_ref(t));
                            new.push(((**a).clone(), b.mp(ax, *i)));
                        }
                    _ => {}
                }
            }
            for g in &self.universe {
                if known.contains_key(g) {
                    continue;
                }
                if let Some(i) = justification_forward(&mut b, &known, g) {
                    new.push((g.clone(), i));
                }
            }
            let mut changed = false;
            for (f, i) in new {
                if let std::collections::btree_map::Entry::Vacant(e) = known.entry(f) {
                    e.insert(i);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Facts { builder: b, known }
    }

    fn prove(&mut self, ctx: &Ctx, goal: &Formula, depth: usize) -> Option<Rc<Proof>> {
        let key = (ctx.clone(), goal.clone(), depth);
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let active_key = (ctx.clone(), goal.clone());
        if !self.active.insert(active_key.clone()) {
            return None;
        }
        let result = self.prove_inner(ctx, goal, depth).map(Rc::new);
        self.active.remove(&active_key);
        self.memo.insert(key, result.clone());
        result
    }

    fn prove_inner(&mut self, ctx: &Ctx, goal: &Formula, depth: usize) -> Option<Proof> {
        let facts = self.facts(ctx);
        if let Some(p) = facts.proof_of(goal) {
            return Some(p);
        }
        if let Some(p) = facts.proof_of(&Formula::Falsum) {
            return Some(self.assemble(ctx, |b| {
                let bot = b.splice(&p);
                let efq = b.schema(AxiomSchema::Efq, std::slice::from_ref(goal), &[]);
                b.mp(efq, bot)
            }));
        }
        if let Some(s) = match_axiom(goal).into_iter().next() {
            return Some(self.assemble(ctx, |b| b.axiom(s, goal.clone())));
        }
        if let Formula::Just(Term::Constant(c), body) = goal {
            if self.cs.contains(c, body) {
                return Some(self.assemble(ctx, |b| b.necessitation(c, (**body).clone())));
            }
        }
        if depth == 0 {
            return None;
        }
        let d = depth - 1;

        match goal {
            Formula::Implies(a, bb) => {
                let inner = self.prove(&extend(ctx, a), bb, d)?;
                return Some(discharge_unchecked(&inner, a));
            }
            Formula::And(l, r) => {
                let pl = self.prove(ctx, l, d)?;
                let pr = self.prove(ctx, r, d)?;
                return Some(self.assemble(ctx, |b| {
                    let li = b.splice(&pl);
                    let ri = b.splice(&pr);
                    let ax = b.schema(AxiomSchema::AndIntro, &[(**l).clone(), (**r).clone()], &[]);
                    let m = b.mp(ax, li);
                    b.mp(m, ri)
                }));
            }
            _ => {}
        }

        // Case split on the first undecided disjunctive fact.
        let split = facts.known.keys().find_map(|f| match f {
            Formula::Or(x, y) if !facts.has(x) && !facts.has(y) => Some((f.clone(), (**x).clone(), (**y).clone())),
            _ => None,
        });
        if let Some((disj, x, y)) = split {
            let px = self.prove(&extend(ctx, &x), goal, d)?;
            let py = self.prove(&extend(ctx, &y), goal, d)?;
            let dx = discharge_unchecked(&px, &x);
            let dy = discharge_unchecked(&py, &y);
            let pd = facts.proof_of(&disj).expect("known");
            return Some(self.assemble(ctx, |b| {
                let di = b.splice(&pd);
                let xi = b.splice(&dx);
                let yi = b.splice(&dy);
                let ax = b.schema(AxiomSchema::OrElim, &[x.clone(), y.clone(), goal.clone()], &[]);
                let m1 = b.mp(ax, xi);
                let m2 = b.mp(m1, yi);
                b.mp(m2, di)
            }));
        }

        if let Formula::Just(t, a) = goal {
            if let Some(p) = self.justification_backward(ctx, t, a, d) {
                return Some(p);
            }
        }

        if let Formula::Or(l, r) = goal {
            for (schema, part) in [(AxiomSchema::OrIntroL, l), (AxiomSchema::OrIntroR, r)] {
                if let Some(pp) = self.prove(ctx, part, d) {
                    return Some(self.assemble(ctx, |b| {
                        let pi = b.splice(&pp);
                        let ax = b.schema(schema, &[(**l).clone(), (**r).clone()], &[]);
                        b.mp(ax, pi)
                    }));
                }
            }
        }

        // Implication facts whose antecedent is provable.
        let implications: Vec<(Formula, Formula, Formula)> = facts
            .known
            .keys()
            .filter_map(|f| match f {
                Formula::Implies(x, y) if !facts.has(x) && !facts.has(y) => {
                    Some((f.clone(), (**x).clone(), (**y).clone()))
                }
                _ => None,
            })
            .collect();
        for (imp, x, y) in implications {
            let Some(px) = self.prove(ctx, &x, d) else { continue };
            let Some(py) = self.prove(&extend(ctx, &y), goal, d) else { continue };
            let dy = discharge_unchecked(&py, &y);
            let pimp = facts.proof_of(&imp).expect("known");
            return Some(self.assemble(ctx, |b| {
                let ii = b.splice(&pimp);
                let xi = b.splice(&px);
                let yi = b.mp(ii, xi);
                let gi = b.splice(&dy);
                b.mp(gi, yi)
            }));
        }

        let candidates: Vec<Formula> = self
            .universe
            .iter()
            .filter(|f| match f {
                Formula::Just(_, a) => **a == *goal,
                Formula::And(l, r) => **l == *goal || **r == *goal,
                _ => false,
            })
            .cloned()
            .collect();
        for c in candidates {
            let Some(pc) = self.prove(ctx, &c, d) else { continue };
            return Some(self.assemble(ctx, |b| {
                let ci = b.splice(&pc);
                let ax = match &c {
                    Formula::Just(t, a) => b.schema(AxiomSchema::JT, &[(**a).clone()], std::slice::from_ref(t)),
                    Formula::And(l, r) if **l == *goal => b.schema(AxiomSchema::AndElimL, &[(**l).clone(), (**r).clone()], &[]),
                    Formula::And(l, r) => b.schema(AxiomSchema::AndElimR, &[(**l).clone(), (**r).clone()], &[]),
                    _ => unreachable!(),
                };
                b.mp(ax, ci)
            }));
        }

        if *goal != Formula::Falsum {
            if let Some(pb) = self.prove(ctx, &Formula::Falsum, d) {
                return Some(self.assemble(ctx, |b| {
                    let bi = b.splice(&pb);
                    let efq = b.schema(AxiomSchema::Efq, std::slice::from_ref(goal), &[]);
                    b.mp(efq, bi)
                }));
            }
        }
        None
    }

    fn justification_backward(&mut self, ctx: &Ctx, t: &Term, a: &Formula, d: usize) -> Option<Proof> {
        match t {
            Term::App(u, v) => {
                let mut antecedents: BTreeSet<Formula> = BTreeSet::new();
                for f in &self.universe {
                    match f {
                        Formula::Just(s, body) if s == &**u => {
                            if let Formula::Implies(x, y) = &**body {
                                if **y == *a {
                                    antecedents.insert((**x).clone());
                                }
                            }
                        }
                        Formula::Just(s, body) if s == &**v => {
                            antecedents.insert((**body).clone());
                        }
                        _ => {}
                    }
                }
                for x in antecedents {
                    let major = Formula::just((**u).clone(), Formula::implies(x.clone(), a.clone()));
                    let minor = Formula::just((**v).clone(), x.clone());
                    let Some(pu) = self.prove(ctx, &major, d) else { continue };
                    let Some(pv) = self.prove(ctx, &minor, d) else { continue };
                    return Some(self.assemble(ctx, |b| {
                        let ui = b.splice(&pu);
                        let vi = b.splice(&pv);
                        let ax = b.schema(AxiomSchema::JApp, &[x.clone(), a.clone()], &[(**u).clone(), (**v).clone()]);
                        let m = b.mp(ax, ui);
                        b.mp(m, vi)
                    }));
                }
                None
            }
            Term::Sum(u, v) => {
                for (schema, part) in [(AxiomSchema::JSumL, u), (AxiomSchema::JSumR, v)] {
                    let sub = Formula::just((**part).clone(), a.clone());
                    if let Some(ps) = self.prove(ctx, &sub, d) {
                        return Some(self.assemble(ctx, |b| {
                            let si = b.splice(&ps);
                            let ax = b.schema(schema, std::slice::from_ref(a), &[(**u).clone(), (**v).clone()]);
                            b.mp(ax, si)
                        }));
                    }
                }
                None
            }
            Term::Bang(u) => match a {
                Formula::Just(s, body) if s == &**u => {
                    let ps = self.prove(ctx, a, d)?;
                    Some(self.assemble(ctx, |b| {
                        let si = b.splice(&ps);
                        let ax = b.schema(AxiomSchema::J4, &[(**body).clone()], &[(**u).clone()]);
                        b.mp(ax, si)
                    }))
                }
                _ => None,
            },
            Term::Constant(_) | Term::Variable(_) => None,
        }
    }

    fn assemble(&self, ctx: &Ctx, build: impl FnOnce(&mut ProofBuilder) -> usize) -> Proof {
        let mut b = ProofBuilder::new(ctx.iter().cloned().collect());
        let last = build(&mut b);
        b.finish(last)
    }
}

fn extend(ctx: &Ctx, a: &Formula) -> Ctx {
    if ctx.contains(a) {
        return ctx.clone();
    }
    let mut next = (**ctx).clone();
    next.insert(a.clone());
    Rc::new(next)
}

/// Derives a justification formula `g` of the universe from known facts by
/// one application of J-App, J-Sum or J-4.
fn justification_forward(b: &mut ProofBuilder, known: &BTreeMap<Formula, usize>, g: &Formula) -> Option<usize> {
    let Formula::Just(t, a) = g else { return None };
    match t {
        Term::Sum(u, v) => {
            for (schema, part) in [(AxiomSchema::JSumL, u), (AxiomSchema::JSumR, v)] {
                if let Some(&i) = known.get(&Formula::just((**part).clone(), (**a).clone())) {
                    let ax = b.schema(schema, &[(**a).clone()], &[(**u).clone(), (**v).clone()]);
                    return Some(b.mp(ax, i));
                }
            }
            None
        }
        Term::Bang(u) => match &**a {
            Formula::Just(s, body) if s == &**u => {
                let &i = known.get(a)?;
                let ax = b.schema(AxiomSchema::J4, &[(**body).clone()], &[(**u).clone()]);
                Some(b.mp(ax, i))
            }
            _ => None,
        },
        Term::App(u, v) => {
            for (f, &i) in known {
                let Formula::Just(s, body) = f else { continue };
                if s != &**u {
                    continue;
                }
                let Formula::Implies(x, y) = &**body else { continue };
                if **y != **a {
                    continue;
                }
                if let Some(&j) = known.get(&Formula::just((**v).clone(), (**x).clone())) {
                    let ax = b.schema(AxiomSchema::JApp, &[(**x).clone(), (**a).clone()], &[(**u).clone(), (**v).clone()]);
                    let m = b.mp(ax, i);
                    return Some(b.mp(m, j));
                }
            }
            None
        }
        Term::Constant(_) | Term::Variable(_) => None,
    }
}
