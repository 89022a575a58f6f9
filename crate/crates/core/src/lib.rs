//! Tooling for the intuitionistic justification logic iJT4.
//!
//! * [`syntax`]: terms, formulas, parser and printer.
//! * [`proof`]: axiom schemas, constant specifications, Hilbert proof
//!   checking, the deduction and internalization transformers, and a bounded
//!   proof search.
//! * [`semantics`]: finite basic evaluations, evidence closure, truth,
//!   model validation and countermodel search.
//! * [`saturation`]: prime sets, the bounded prime-lemma construction and a
//!   bounded canonical model.

pub mod syntax;
pub mod pattern;
pub mod proof;
pub mod par;
pub mod semantics;
pub mod saturation;
pub mod generate;
