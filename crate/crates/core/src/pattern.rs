//! Formulas and terms with metavariables.
//!
//! Axiom schemas are patterns, and evidence sets that contain every instance
//! of a schema are represented by finitely many patterns. Formula and term
//! metavariables live in separate namespaces.

use std::collections::HashMap;

use crate::syntax::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PTerm {
    Meta(u32),
    Constant(String),
    Variable(String),
    App(Box<PTerm>, Box<PTerm>),
    Sum(Box<PTerm>, Box<PTerm>),
    Bang(Box<PTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PFormula {
    Meta(u32),
    Atom(String),
    Falsum,
    And(Box<PFormula>, Box<PFormula>),
    Or(Box<PFormula>, Box<PFormula>),
    Implies(Box<PFormula>, Box<PFormula>),
    Just(PTerm, Box<PFormula>),
}

/// Ground bindings produced by one-way matching.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub formulas: HashMap<u32, Formula>,
    pub terms: HashMap<u32, Term>,
}

/// Triangular substitution produced by unification.
#[derive(Clone, Debug, Default)]
pub struct Subst {
    formulas: HashMap<u32, PFormula>,
    terms: HashMap<u32, PTerm>,
}

pub fn fm(i: u32) -> PFormula {
    PFormula::Meta(i)
}

pub fn tm(i: u32) -> PTerm {
    PTerm::Meta(i)
}

pub fn imp(a: PFormula, b: PFormula) -> PFormula {
    PFormula::Implies(Box::new(a), Box::new(b))
}

pub fn and(a: PFormula, b: PFormula) -> PFormula {
    PFormula::And(Box::new(a), Box::new(b))
}

pub fn or(a: PFormula, b: PFormula) -> PFormula {
    PFormula::Or(Box::new(a), Box::new(b))
}

pub fn just(t: PTerm, a: PFormula) -> PFormula {
    PFormula::Just(t, Box::new(a))
}

impl PTerm {
    pub fn ground(t: &Term) -> Self {
        match t {
            Term::Constant(c) => PTerm::Constant(c.clone()),
            Term::Variable(v) => PTerm::Variable(v.clone()),
            Term::App(l, r) => PTerm::App(Box::new(Self::ground(l)), Box::new(Self::ground(r))),
            Term::Sum(l, r) => PTerm::Sum(Box::new(Self::ground(l)), Box::new(Self::ground(r))),
            Term::Bang(i) => PTerm::Bang(Box::new(Self::ground(i))),
        }
    }

    pub fn app(l: PTerm, r: PTerm) -> Self {
        PTerm::App(Box::new(l), Box::new(r))
    }

    pub fn sum(l: PTerm, r: PTerm) -> Self {
        PTerm::Sum(Box::new(l), Box::new(r))
    }

    pub fn bang(i: PTerm) -> Self {
        PTerm::Bang(Box::new(i))
    }

    fn to_ground(&self) -> Option<Term> {
        Some(match self {
            PTerm::Meta(_) => return None,
            PTerm::Constant(c) => Term::Constant(c.clone()),
            PTerm::Variable(v) => Term::Variable(v.clone()),
            PTerm::App(l, r) => Term::app(l.to_ground()?, r.to_ground()?),
            PTerm::Sum(l, r) => Term::sum(l.to_ground()?, r.to_ground()?),
            PTerm::Bang(i) => Term::bang(i.to_ground()?),
        })
    }

    fn instantiate(&self, b: &Bindings) -> Option<Term> {
        Some(match self {
            PTerm::Meta(i) => b.terms.get(i)?.clone(),
            PTerm::Constant(c) => Term::Constant(c.clone()),
            PTerm::Variable(v) => Term::Variable(v.clone()),
            PTerm::App(l, r) => Term::app(l.instantiate(b)?, r.instantiate(b)?),
            PTerm::Sum(l, r) => Term::sum(l.instantiate(b)?, r.instantiate(b)?),
            PTerm::Bang(i) => Term::bang(i.instantiate(b)?),
        })
    }

    fn matches(&self, t: &Term, b: &mut Bindings) -> bool {
        match (self, t) {
            (PTerm::Meta(i), _) => match b.terms.get(i) {
                Some(bound) => bound == t,
                None => {
                    b.terms.insert(*i, t.clone());
                    true
                }
            },
            (PTerm::Constant(a), Term::Constant(c)) | (PTerm::Variable(a), Term::Variable(c)) => a == c,
            (PTerm::App(pl, pr), Term::App(l, r)) | (PTerm::Sum(pl, pr), Term::Sum(l, r)) => {
                pl.matches(l, b) && pr.matches(r, b)
            }
            (PTerm::Bang(pi), Term::Bang(i)) => pi.matches(i, b),
            _ => false,
        }
    }

    fn map_metas(&self, f: &mut impl FnMut(u32) -> u32) -> PTerm {
        match self {
            PTerm::Meta(i) => PTerm::Meta(f(*i)),
            PTerm::Constant(_) | PTerm::Variable(_) => self.clone(),
            PTerm::App(l, r) => PTerm::app(l.map_metas(f), r.map_metas(f)),
            PTerm::Sum(l, r) => PTerm::sum(l.map_metas(f), r.map_metas(f)),
            PTerm::Bang(i) => PTerm::bang(i.map_metas(f)),
        }
    }

    fn max_meta(&self) -> Option<u32> {
        match self {
            PTerm::Meta(i) => Some(*i),
            PTerm::Constant(_) | PTerm::Variable(_) => None,
            PTerm::App(l, r) | PTerm::Sum(l, r) => l.max_meta().max(r.max_meta()),
            PTerm::Bang(i) => i.max_meta(),
        }
    }

    fn occurs(&self, var: u32, s: &Subst) -> bool {
        match s.walk_term(self) {
            PTerm::Meta(i) => *i == var,
            PTerm::Constant(_) | PTerm::Variable(_) => false,
            PTerm::App(l, r) | PTerm::Sum(l, r) => l.occurs(var, s) || r.occurs(var, s),
            PTerm::Bang(i) => i.occurs(var, s),
        }
    }

    fn resolve(&self, s: &Subst) -> PTerm {
        match s.walk_term(self) {
            PTerm::Meta(i) => PTerm::Meta(*i),
            t @ (PTerm::Constant(_) | PTerm::Variable(_)) => t.clone(),
            PTerm::App(l, r) => PTerm::app(l.resolve(s), r.resolve(s)),
            PTerm::Sum(l, r) => PTerm::sum(l.resolve(s), r.resolve(s)),
            PTerm::Bang(i) => PTerm::bang(i.resolve(s)),
        }
    }
}

impl PFormula {
    pub fn ground(a: &Formula) -> Self {
        match a {
            Formula::Atom(p) => PFormula::Atom(p.clone()),
            Formula::Falsum => PFormula::Falsum,
            Formula::And(l, r) => and(Self::ground(l), Self::ground(r)),
            Formula::Or(l, r) => or(Self::ground(l), Self::ground(r)),
            Formula::Implies(l, r) => imp(Self::ground(l), Self::ground(r)),
            Formula::Just(t, b) => just(PTerm::ground(t), Self::ground(b)),
        }
    }

    /// The formula itself when it has no metavariables.
    pub fn to_ground(&self) -> Option<Formula> {
        Some(match self {
            PFormula::Meta(_) => return None,
            PFormula::Atom(p) => Formula::Atom(p.clone()),
            PFormula::Falsum => Formula::Falsum,
            PFormula::And(l, r) => Formula::and(l.to_ground()?, r.to_ground()?),
            PFormula::Or(l, r) => Formula::or(l.to_ground()?, r.to_ground()?),
            PFormula::Implies(l, r) => Formula::implies(l.to_ground()?, r.to_ground()?),
            PFormula::Just(t, b) => Formula::just(t.to_ground()?, b.to_ground()?),
        })
    }

    pub fn is_ground(&self) -> bool {
        self.max_formula_meta().is_none() && self.max_term_meta().is_none()
    }

    /// Replaces metavariables with their bindings; `None` if one is unbound.
    pub fn instantiate(&self, b: &Bindings) -> Option<Formula> {
        Some(match self {
            PFormula::Meta(i) => b.formulas.get(i)?.clone(),
            PFormula::Atom(p) => Formula::Atom(p.clone()),
            PFormula::Falsum => Formula::Falsum,
            PFormula::And(l, r) => Formula::and(l.instantiate(b)?, r.instantiate(b)?),
            PFormula::Or(l, r) => Formula::or(l.instantiate(b)?, r.instantiate(b)?),
            PFormula::Implies(l, r) => Formula::implies(l.instantiate(b)?, r.instantiate(b)?),
            PFormula::Just(t, body) => Formula::just(t.instantiate(b)?, body.instantiate(b)?),
        })
    }

    /// One-way matching of a ground formula against this pattern.
    pub fn matches(&self, a: &Formula, b: &mut Bindings) -> bool {
        match (self, a) {
            (PFormula::Meta(i), _) => match b.formulas.get(i) {
                Some(bound) => bound == a,
                None => {
                    b.formulas.insert(*i, a.clone());
                    true
                }
            },
            (PFormula::Atom(x), Formula::Atom(y)) => x == y,
            (PFormula::Falsum, Formula::Falsum) => true,
            (PFormula::And(pl, pr), Formula::And(l, r))
            | (PFormula::Or(pl, pr), Formula::Or(l, r))
            | (PFormula::Implies(pl, pr), Formula::Implies(l, r)) => pl.matches(l, b) && pr.matches(r, b),
            (PFormula::Just(pt, pb), Formula::Just(t, body)) => pt.matches(t, b) && pb.matches(body, b),
            _ => false,
        }
    }

    pub fn is_match(&self, a: &Formula) -> bool {
        self.matches(a, &mut Bindings::default())
    }

    fn max_formula_meta(&self) -> Option<u32> {
        match self {
            PFormula::Meta(i) => Some(*i),
            PFormula::Atom(_) | PFormula::Falsum => None,
            PFormula::Just(_, b) => b.max_formula_meta(),
            PFormula::And(l, r) | PFormula::Or(l, r) | PFormula::Implies(l, r) => {
                l.max_formula_meta().max(r.max_formula_meta())
            }
        }
    }

    fn max_term_meta(&self) -> Option<u32> {
        match self {
            PFormula::Meta(_) | PFormula::Atom(_) | PFormula::Falsum => None,
            PFormula::Just(t, b) => t.max_meta().max(b.max_term_meta()),
            PFormula::And(l, r) | PFormula::Or(l, r) | PFormula::Implies(l, r) => {
                l.max_term_meta().max(r.max_term_meta())
            }
        }
    }

    fn map_metas(&self, ff: &mut impl FnMut(u32) -> u32, tf: &mut impl FnMut(u32) -> u32) -> PFormula {
        match self {
            PFormula::Meta(i) => PFormula::Meta(ff(*i)),
            PFormula::Atom(_) | PFormula::Falsum => self.clone(),
            PFormula::And(l, r) => and(l.map_metas(ff, tf), r.map_metas(ff, tf)),
            PFormula::Or(l, r) => or(l.map_metas(ff, tf), r.map_metas(ff, tf)),
            PFormula::Implies(l, r) => imp(l.map_metas(ff, tf), r.map_metas(ff, tf)),
            PFormula::Just(t, b) => just(t.map_metas(tf), b.map_metas(ff, tf)),
        }
    }

    /// A formula metavariable index not used in `self`.
    pub fn fresh_formula_meta(&self) -> u32 {
        self.max_formula_meta().map_or(0, |m| m + 1)
    }

    /// Shifts every metavariable so that none collides with `other`.
    pub fn rename_apart(&self, other: &PFormula) -> PFormula {
        let fo = other.max_formula_meta().map_or(0, |m| m + 1);
        let to = other.max_term_meta().map_or(0, |m| m + 1);
        self.map_metas(&mut |i| i + fo, &mut |i| i + to)
    }

    /// Renumbers metavariables in order of first occurrence.
    pub fn canonical(&self) -> PFormula {
        let mut fmap: HashMap<u32, u32> = HashMap::new();
        let mut tmap: HashMap<u32, u32> = HashMap::new();
        self.map_metas(
            &mut |i| {
                let n = fmap.len() as u32;
                *fmap.entry(i).or_insert(n)
            },
            &mut |i| {
                let n = tmap.len() as u32;
                *tmap.entry(i).or_insert(n)
            },
        )
    }

    fn occurs(&self, var: u32, s: &Subst) -> bool {
        match s.walk_formula(self) {
            PFormula::Meta(i) => *i == var,
            PFormula::Atom(_) | PFormula::Falsum => false,
            PFormula::And(l, r) | PFormula::Or(l, r) | PFormula::Implies(l, r) => {
                l.occurs(var, s) || r.occurs(var, s)
            }
            PFormula::Just(_, b) => b.occurs(var, s),
        }
    }

    /// Applies a substitution all the way down.
    pub fn resolve(&self, s: &Subst) -> PFormula {
        match s.walk_formula(self) {
            PFormula::Meta(i) => PFormula::Meta(*i),
            f @ (PFormula::Atom(_) | PFormula::Falsum) => f.clone(),
            PFormula::And(l, r) => and(l.resolve(s), r.resolve(s)),
            PFormula::Or(l, r) => or(l.resolve(s), r.resolve(s)),
            PFormula::Implies(l, r) => imp(l.resolve(s), r.resolve(s)),
            PFormula::Just(t, b) => just(t.resolve(s), b.resolve(s)),
        }
    }
}

impl Subst {
    fn walk_formula<'a>(&'a self, mut f: &'a PFormula) -> &'a PFormula {
        while let PFormula::Meta(i) = f {
            match self.formulas.get(i) {
                Some(next) => f = next,
                None => break,
            }
        }
        f
    }

    fn walk_term<'a>(&'a self, mut t: &'a PTerm) -> &'a PTerm {
        while let PTerm::Meta(i) = t {
            match self.terms.get(i) {
                Some(next) => t = next,
                None => break,
            }
        }
        t
    }

    /// Extends the substitution to unify `a` and `b`. On failure the
    /// substitution may hold partial bindings and should be discarded.
    pub fn unify(&mut self, a: &PFormula, b: &PFormula) -> bool {
        let a = self.walk_formula(a).clone();
        let b = self.walk_formula(b).clone();
        match (&a, &b) {
            (PFormula::Meta(i), PFormula::Meta(j)) if i == j => true,
            (PFormula::Meta(i), other) | (other, PFormula::Meta(i)) => {
                if other.occurs(*i, self) {
                    return false;
                }
                self.formulas.insert(*i, other.clone());
                true
            }
            (PFormula::Atom(x), PFormula::Atom(y)) => x == y,
            (PFormula::Falsum, PFormula::Falsum) => true,
            (PFormula::And(al, ar), PFormula::And(bl, br))
            | (PFormula::Or(al, ar), PFormula::Or(bl, br))
            | (PFormula::Implies(al, ar), PFormula::Implies(bl, br)) => self.unify(al, bl) && self.unify(ar, br),
            (PFormula::Just(at, ab), PFormula::Just(bt, bb)) => self.unify_terms(at, bt) && self.unify(ab, bb),
            _ => false,
        }
    }

    fn unify_terms(&mut self, a: &PTerm, b: &PTerm) -> bool {
        let a = self.walk_term(a).clone();
        let b = self.walk_term(b).clone();
        match (&a, &b) {
            (PTerm::Meta(i), PTerm::Meta(j)) if i == j => true,
            (PTerm::Meta(i), other) | (other, PTerm::Meta(i)) => {
                if other.occurs(*i, self) {
                    return false;
                }
                self.terms.insert(*i, other.clone());
                true
            }
            (PTerm::Constant(x), PTerm::Constant(y)) | (PTerm::Variable(x), PTerm::Variable(y)) => x == y,
            (PTerm::App(al, ar), PTerm::App(bl, br)) | (PTerm::Sum(al, ar), PTerm::Sum(bl, br)) => {
                self.unify_terms(al, bl) && self.unify_terms(ar, br)
            }
            (PTerm::Bang(ai), PTerm::Bang(bi)) => self.unify_terms(ai, bi),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn matching_respects_repeated_metavariables() {
        let k = imp(fm(0), imp(fm(1), fm(0)));
        assert!(k.is_match(&parse_formula("p -> q -> p").unwrap()));
        assert!(!k.is_match(&parse_formula("p -> q -> q").unwrap()));
    }

    #[test]
    fn unification_builds_most_general_instance() {
        // (X -> Y) against t:(A -> B) -> (s:A -> t.s:B) with X = y:(p -> q)
        let app_schema = imp(
            just(tm(0), imp(fm(0), fm(1))),
            imp(just(tm(1), fm(0)), just(PTerm::app(tm(0), tm(1)), fm(1))),
        );
        let lhs = PFormula::ground(&parse_formula("y:(p -> q)").unwrap());
        let query = imp(lhs, fm(0)).rename_apart(&app_schema);
        let mut s = Subst::default();
        assert!(s.unify(&query, &app_schema));
        let result = match query.resolve(&s) {
            PFormula::Implies(_, r) => r.canonical(),
            _ => unreachable!(),
        };
        let expected = imp(just(tm(0), PFormula::Atom("p".into())), just(PTerm::app(PTerm::Variable("y".into()), tm(0)), PFormula::Atom("q".into())));
        assert_eq!(result, expected);
    }

    #[test]
    fn occurs_check() {
        let mut s = Subst::default();
        assert!(!s.unify(&fm(0), &imp(fm(0), fm(1))));
    }

    #[test]
    fn canonical_renumbering() {
        let a = imp(fm(7), just(tm(3), fm(2)));
        assert_eq!(a.canonical(), imp(fm(0), just(tm(0), fm(1))));
    }
}
