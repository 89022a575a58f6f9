//! Justification terms and formulas.
//!
//! Terms are built from constants and variables with application (`s.t`),
//! sum (`s+t`) and proof checker (`!s`). Formulas are atoms, falsum, the
//! binary connectives and justification assertions `t:A`.
//!
//! The concrete grammar, tightest binding first:
//!
//! ```text
//! term    := sum
//! sum     := app ("+" app)*                 # left associative
//! app     := unary ("." unary)*             # left associative
//! unary   := "!" unary | ident | "(" term ")"
//!
//! formula := disj ("->" formula)?           # right associative
//! disj    := conj ("\/" conj)*              # left associative
//! conj    := unit ("/\" unit)*              # left associative
//! unit    := atom | "_|_" | "~" unit | "(" formula ")" | term ":" unit
//! ```
//!
//! Lexical classes are disjoint: `p`, `q`, `r` and `p<digits>` are atoms,
//! `c<digits>` (plus any names declared by a constant specification) are
//! constants, and every other identifier starting with a lowercase letter is
//! a variable. `~A` is read as `A -> _|_`. The Unicode connectives `→ ∧ ∨ ⊥ ¬ ·`
//! are accepted as aliases.

mod lexer;
mod parser;
mod printer;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use parser::{parse_formula, parse_term, ParseError, Parser};
pub use printer::{print_formula, print_formula_full, print_term, print_term_full};

/// A justification term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Term {
    Constant(String),
    Variable(String),
    App(Box<Term>, Box<Term>),
    Sum(Box<Term>, Box<Term>),
    Bang(Box<Term>),
}

/// A formula of the justification language.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    Atom(String),
    Falsum,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Just(Term, Box<Formula>),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Self {
        Term::Constant(name.into())
    }

    pub fn var(name: impl Into<String>) -> Self {
        Term::Variable(name.into())
    }

    pub fn app(left: Term, right: Term) -> Self {
        Term::App(Box::new(left), Box::new(right))
    }

    pub fn sum(left: Term, right: Term) -> Self {
        Term::Sum(Box::new(left), Box::new(right))
    }

    pub fn bang(inner: Term) -> Self {
        Term::Bang(Box::new(inner))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Constant(_) | Term::Variable(_) => 1,
            Term::App(l, r) | Term::Sum(l, r) => 1 + l.size() + r.size(),
            Term::Bang(t) => 1 + t.size(),
        }
    }

    /// The least set containing `self` and closed under immediate subterms.
    pub fn subterms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        self.collect_subterms(&mut out);
        out
    }

    fn collect_subterms(&self, out: &mut BTreeSet<Term>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Term::Constant(_) | Term::Variable(_) => {}
            Term::App(l, r) | Term::Sum(l, r) => {
                l.collect_subterms(out);
                r.collect_subterms(out);
            }
            Term::Bang(t) => t.collect_subterms(out),
        }
    }
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn just(term: Term, body: Formula) -> Self {
        Formula::Just(term, Box::new(body))
    }

    /// `a -> _|_`
    pub fn not(a: Formula) -> Self {
        Formula::implies(a, Formula::Falsum)
    }

    /// Number of nodes, counting a justification `t:A` as one node over `A`.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Falsum => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.size() + r.size()
            }
            Formula::Just(_, b) => 1 + b.size(),
        }
    }

    /// The least set containing `self` and closed under immediate
    /// subformulas. The body of `t:B` is an immediate subformula.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Atom(_) | Formula::Falsum => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_subformulas(out);
                r.collect_subformulas(out);
            }
            Formula::Just(_, b) => b.collect_subformulas(out),
        }
    }

    /// All terms occurring in the formula, closed under subterms.
    pub fn terms(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for f in self.subformulas() {
            if let Formula::Just(t, _) = f {
                out.extend(t.subterms());
            }
        }
        out
    }

    /// Atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        self.subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Atom(p) => Some(p),
                _ => None,
            })
            .collect()
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }
}

/// Subformula closure of a collection of formulas.
pub fn subformula_closure<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    for f in formulas {
        f.collect_subformulas(&mut out);
    }
    out
}

/// Subterm closure of every term occurring in a collection of formulas.
pub fn term_closure<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for f in formulas {
        out.extend(f.terms());
    }
    out
}

/// True for names in the atom class: `p`, `q`, `r`, `p<digits>`.
pub fn is_atom_name(name: &str) -> bool {
    matches!(name, "p" | "q" | "r")
        || (name.len() > 1 && name.starts_with('p') && name[1..].bytes().all(|b| b.is_ascii_digit()))
}

/// True for names in the built-in constant class: `c<digits>`.
pub fn is_constant_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('c') && name[1..].bytes().all(|b| b.is_ascii_digit())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}
