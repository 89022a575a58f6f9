//! Text formats for proofs and constant specifications.
//!
//! Proof files:
//!
//! ```text
//! # comment
//! hypotheses:
//!   1: x:p
//! steps:
//!   1. x:p ; hyp 1
//!   2. x:p -> p ; ax J-T
//!   3. p ; mp 2,1
//!   4. c13:(x:p -> p) ; cs c13
//! ```
//!
//! Hypotheses and steps are numbered from 1 and must appear in order.
//! `mp J,K` cites the major premise `J` (an implication) and the minor `K`.
//!
//! Constant specification files, one entry per line:
//!
//! ```text
//! standard            # c1..c14, one per schema in tag order
//! k := ax J-T         # k justifies every instance of J-T
//! e := p -> q -> p    # e justifies exactly this axiom instance
//! ```

use std::fmt::Write as _;

use super::{AxiomSchema, ConstantSpecification, Proof, ProofError, ProofStep, Rule};
use crate::syntax::{print_formula, Parser};

fn err(line: usize, message: impl Into<String>) -> ProofError {
    ProofError::Format { line, message: message.into() }
}

fn content(raw: &str) -> &str {
    match raw.find('#') {
        Some(i) => raw[..i].trim(),
        None => raw.trim(),
    }
}

pub fn parse_proof(text: &str, parser: &Parser) -> Result<Proof, ProofError> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Hyps,
        Steps,
    }
    let mut section = Section::None;
    let mut proof = Proof::default();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        match line {
            "hypotheses:" => {
                section = Section::Hyps;
                continue;
            }
            "steps:" => {
                section = Section::Steps;
                continue;
            }
            _ => {}
        }
        match section {
            Section::None => return Err(err(line_no, "expected `hypotheses:` or `steps:`")),
            Section::Hyps => {
                let (num, rest) = line.split_once(':').ok_or_else(|| err(line_no, "expected `K: formula`"))?;
                let k: usize = num.trim().parse().map_err(|_| err(line_no, "bad hypothesis number"))?;
                if k != proof.hypotheses.len() + 1 {
                    return Err(err(line_no, format!("hypothesis numbered {k}, expected {}", proof.hypotheses.len() + 1)));
                }
                let f = parser.formula(rest.trim()).map_err(|e| err(line_no, e.to_string()))?;
                proof.hypotheses.push(f);
            }
            Section::Steps => {
                let (num, rest) = line.split_once('.').ok_or_else(|| err(line_no, "expected `N. formula ; rule`"))?;
                let k: usize = num.trim().parse().map_err(|_| err(line_no, "bad step number"))?;
                if k != proof.steps.len() + 1 {
                    return Err(err(line_no, format!("step numbered {k}, expected {}", proof.steps.len() + 1)));
                }
                let (formula, rule) = rest.rsplit_once(';').ok_or_else(|| err(line_no, "missing `; rule`"))?;
                let conclusion = parser.formula(formula.trim()).map_err(|e| err(line_no, e.to_string()))?;
                let rule = parse_rule(rule.trim()).map_err(|m| err(line_no, m))?;
                proof.steps.push(ProofStep { conclusion, rule });
            }
        }
    }
    Ok(proof)
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    let (kw, arg) = s.split_once(char::is_whitespace).ok_or_else(|| format!("bad rule `{s}`"))?;
    let arg = arg.trim();
    let one_based = |x: &str| -> Result<usize, String> {
        match x.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n - 1),
            _ => Err(format!("bad index `{x}`")),
        }
    };
    match kw {
        "hyp" => Ok(Rule::Hypothesis(one_based(arg)?)),
        "ax" => arg.parse::<AxiomSchema>().map(Rule::Axiom).map_err(|e| e.to_string()),
        "mp" => {
            let (j, k) = arg.split_once(',').ok_or_else(|| "expected `mp J,K`".to_string())?;
            Ok(Rule::ModusPonens { major: one_based(j)?, minor: one_based(k)? })
        }
        "cs" => Ok(Rule::AxiomNecessitation(arg.to_string())),
        _ => Err(format!("unknown rule `{kw}`")),
    }
}

pub fn print_proof(proof: &Proof) -> String {
    let mut out = String::new();
    out.push_str("hypotheses:\n");
    for (i, h) in proof.hypotheses.iter().enumerate() {
        let _ = writeln!(out, "  {}: {}", i + 1, print_formula(h));
    }
    out.push_str("steps:\n");
    for (i, s) in proof.steps.iter().enumerate() {
        let rule = match &s.rule {
            Rule::Hypothesis(k) => format!("hyp {}", k + 1),
            Rule::Axiom(a) => format!("ax {a}"),
            Rule::ModusPonens { major, minor } => format!("mp {},{}", major + 1, minor + 1),
            Rule::AxiomNecessitation(c) => format!("cs {c}"),
        };
        let _ = writeln!(out, "  {}. {} ; {}", i + 1, print_formula(&s.conclusion), rule);
    }
    out
}

/// Parses a constant specification file. Every declared name is lexed as a
/// constant in the file's formulas.
pub fn parse_cs(text: &str) -> Result<ConstantSpecification, ProofError> {
    let mut names = Vec::new();
    for raw in text.lines() {
        if let Some((name, _)) = content(raw).split_once(":=") {
            names.push(name.trim().to_string());
        }
    }
    let parser = Parser::with_constants(names);
    let mut cs = ConstantSpecification::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        if line == "standard" {
            for (c, s) in ConstantSpecification::standard().schematic_entries() {
                cs.add_schematic(c, s);
            }
            continue;
        }
        let (name, rhs) = line.split_once(":=").ok_or_else(|| err(line_no, "expected `constant := ...`"))?;
        let name = name.trim();
        if name.is_empty() || !name.starts_with(|c: char| c.is_ascii_lowercase()) || crate::syntax::is_atom_name(name) {
            return Err(err(line_no, format!("`{name}` is not a valid constant name")));
        }
        let rhs = rhs.trim();
        if let Some(tag) = rhs.strip_prefix("ax ") {
            let schema = tag.trim().parse::<AxiomSchema>().map_err(|e| err(line_no, e.to_string()))?;
            cs.add_schematic(name, schema);
        } else {
            let f = parser.formula(rhs).map_err(|e| err(line_no, e.to_string()))?;
            cs.add_explicit(name, f).map_err(|e| err(line_no, e.to_string()))?;
        }
    }
    Ok(cs)
}

pub fn print_cs(cs: &ConstantSpecification) -> String {
    let mut out = String::new();
    for (c, s) in cs.schematic_entries() {
        let _ = writeln!(out, "{c} := ax {s}");
    }
    for (c, f) in cs.explicit_entries() {
        let _ = writeln!(out, "{c} := {}", print_formula(f));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::{check_proof, CheckReport};
    use crate::syntax::parse_formula;

    const SAMPLE: &str = "\
# factivity
hypotheses:
  1: x:p
steps:
  1. x:p ; hyp 1
  2. x:p -> p ; ax J-T
  3. p ; mp 2,1
";

    #[test]
    fn sample_parses_and_checks() {
        let pf = parse_proof(SAMPLE, &Parser::default()).unwrap();
        assert_eq!(pf.steps.len(), 3);
        assert_eq!(check_proof(&pf, &ConstantSpecification::new()), CheckReport::Accepted { theorem: parse_formula("p").unwrap() });
        assert_eq!(parse_proof(&print_proof(&pf), &Parser::default()).unwrap(), pf);
    }

    #[test]
    fn misnumbered_steps() {
        let bad = "steps:\n  2. p ; hyp 1\n";
        assert!(matches!(parse_proof(bad, &Parser::default()), Err(ProofError::Format { line: 2, .. })));
        assert!(parse_proof("steps:\n 1. p ; frob 1\n", &Parser::default()).is_err());
    }

    #[test]
    fn cs_file() {
        let cs = parse_cs("k := ax J-T\ne := k:p -> p\n").unwrap();
        assert!(cs.contains("k", &parse_formula("y:q -> q").unwrap()));
        let parser = Parser::with_constants(["k"]);
        assert!(cs.contains("e", &parser.formula("k:p -> p").unwrap()));
        assert!(parse_cs("e := p -> q").is_err());
        let std = parse_cs("standard").unwrap();
        assert_eq!(std, ConstantSpecification::standard());
        assert_eq!(parse_cs(&print_cs(&cs)).unwrap(), cs);
    }
}
