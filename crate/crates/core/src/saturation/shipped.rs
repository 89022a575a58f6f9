//! Universes shipped with the crate for saturation and canonical-model
//! checks. Each entry gives seeds (the universe is their subformula
//! closure), a base set and a goal for saturation.

use std::collections::BTreeSet;

use super::FormulaUniverse;
use crate::syntax::{parse_formula, Formula};

#[derive(Clone, Copy, Debug)]
pub struct ShippedUniverse {
    pub name: &'static str,
    pub seeds: &'static [&'static str],
    pub base: &'static [&'static str],
    pub goal: &'static str,
}

pub const SHIPPED: &[ShippedUniverse] = &[
    ShippedUniverse { name: "atom", seeds: &["p"], base: &[], goal: "p" },
    ShippedUniverse { name: "disjunction", seeds: &["p \\/ q", "_|_"], base: &["p \\/ q"], goal: "_|_" },
    ShippedUniverse { name: "negation", seeds: &["p \\/ q", "p -> _|_"], base: &["p -> _|_", "p \\/ q"], goal: "_|_" },
    ShippedUniverse { name: "excluded-middle", seeds: &["p \\/ (p -> _|_)"], base: &[], goal: "p \\/ (p -> _|_)" },
    ShippedUniverse { name: "peirce", seeds: &["((p -> q) -> p) -> p"], base: &[], goal: "((p -> q) -> p) -> p" },
    ShippedUniverse { name: "factive", seeds: &["x:p", "_|_"], base: &["x:p"], goal: "_|_" },
    ShippedUniverse { name: "application", seeds: &["x:(p -> q)", "y:p", "x.y:q"], base: &["x:(p -> q)"], goal: "q" },
    ShippedUniverse { name: "sum", seeds: &["x:p", "(x + y):p", "y:q"], base: &["x:p"], goal: "y:q" },
    ShippedUniverse { name: "bang", seeds: &["x:p", "!x:x:p", "q"], base: &["x:p"], goal: "q" },
    ShippedUniverse { name: "conjunction", seeds: &["p /\\ q", "q -> r", "r \\/ p"], base: &["q -> r"], goal: "p" },
    ShippedUniverse { name: "constant", seeds: &["c13:(x:p -> p)", "x:p", "q"], base: &[], goal: "q" },
    ShippedUniverse { name: "mixed", seeds: &["x:(p \\/ q)", "(p -> r) /\\ (q -> r)", "r"], base: &["x:(p \\/ q)"], goal: "r /\\ (r -> _|_)" },
    ShippedUniverse {
        name: "larger",
        seeds: &["(p -> q) -> (q -> r) -> p -> r", "x:(p -> q) -> y:p -> x.y:q", "p /\\ q -> q /\\ p", "r \\/ (r -> _|_)"],
        base: &[],
        goal: "r \\/ (r -> _|_)",
    },
];

impl ShippedUniverse {
    pub fn universe(&self) -> FormulaUniverse {
        let seeds: Vec<Formula> = self.seeds.iter().map(|s| parse_formula(s).expect("shipped seed parses")).collect();
        FormulaUniverse::from_seeds(seeds.iter().chain(self.base_set().iter()).chain([&self.goal()]))
    }

    pub fn base_set(&self) -> BTreeSet<Formula> {
        self.base.iter().map(|s| parse_formula(s).expect("shipped base parses")).collect()
    }

    pub fn goal(&self) -> Formula {
        parse_formula(self.goal).expect("shipped goal parses")
    }
}
