//! Text format for basic evaluations.
//!
//! ```text
//! cs: standard
//! worlds: w0 w1
//! order:
//!   w0 <= w1
//! atoms:
//!   w1: p
//! evidence:
//!   w1 | x | p ; p -> p
//! universe:
//!   x:p -> p
//! ```
//!
//! `cs:` is `standard`, `none`, or a reference resolved by the caller.
//! Order pairs are taken literally (reflexive pairs are implicit); a
//! non-transitive order is reported by validation, not repaired. The
//! universes are the subterms and subformulas of everything mentioned in
//! `evidence:` and `universe:`.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use super::BasicEvaluation;
use crate::proof::ConstantSpecification;
use crate::syntax::{print_formula, print_term, Parser};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ModelFormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ModelFormatError {
    ModelFormatError { line, message: message.into() }
}

fn content(raw: &str) -> &str {
    match raw.find('#') {
        Some(i) => raw[..i].trim(),
        None => raw.trim(),
    }
}

/// Parses a model. `load_cs` resolves `cs:` references other than
/// `standard` and `none`; a missing `cs:` line means `standard`.
pub fn parse_model(
    text: &str,
    load_cs: &mut dyn FnMut(&str) -> Result<ConstantSpecification, String>,
) -> Result<BasicEvaluation, ModelFormatError> {
    let mut cs = None;
    let mut worlds = None;
    for (n, raw) in text.lines().enumerate() {
        let line = content(raw);
        if let Some(rest) = line.strip_prefix("cs:") {
            let rest = rest.trim();
            let spec = match rest {
                "standard" => ConstantSpecification::standard(),
                "none" => ConstantSpecification::new(),
                r => load_cs(r).map_err(|m| err(n + 1, m))?,
            };
            if cs.replace(spec).is_some() {
                return Err(err(n + 1, "duplicate cs: line"));
            }
        } else if let Some(rest) = line.strip_prefix("worlds:") {
            let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if names.is_empty() {
                return Err(err(n + 1, "no worlds"));
            }
            for (i, w) in names.iter().enumerate() {
                if names[..i].contains(w) {
                    return Err(err(n + 1, format!("duplicate world `{w}`")));
                }
            }
            if worlds.replace(names).is_some() {
                return Err(err(n + 1, "duplicate worlds: line"));
            }
        }
    }
    let cs = cs.unwrap_or_else(ConstantSpecification::standard);
    let parser = Parser::with_constants(cs.constants());
    let worlds = worlds.ok_or_else(|| err(0, "missing worlds: line"))?;
    let mut m = BasicEvaluation::new(worlds, Arc::new(cs));
    let world = |m: &BasicEvaluation, line: usize, name: &str| m.world_index(name.trim()).map_err(|e| err(line, e.to_string()));

    let mut section = "";
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = content(raw);
        if line.is_empty() || line.starts_with("cs:") || line.starts_with("worlds:") {
            continue;
        }
        if let Some(s) = line.strip_suffix(':') {
            if matches!(s, "order" | "atoms" | "evidence" | "universe") {
                section = match s {
                    "order" => "order",
                    "atoms" => "atoms",
                    "evidence" => "evidence",
                    _ => "universe",
                };
                continue;
            }
        }
        match section {
            "order" => {
                let (a, b) = line.split_once("<=").ok_or_else(|| err(line_no, "expected `w <= v`"))?;
                let (a, b) = (world(&m, line_no, a)?, world(&m, line_no, b)?);
                m.set_leq(a, b);
            }
            "atoms" => {
                let (w, ps) = line.split_once(':').ok_or_else(|| err(line_no, "expected `w: p q ...`"))?;
                let w = world(&m, line_no, w)?;
                for p in ps.split_whitespace() {
                    if !crate::syntax::is_atom_name(p) {
                        return Err(err(line_no, format!("`{p}` is not an atom")));
                    }
                    m.set_atom(w, p);
                }
            }
            "evidence" => {
                let parts: Vec<&str> = line.splitn(3, '|').collect();
                if parts.len() != 3 {
                    return Err(err(line_no, "expected `w | term | A ; B ; ...`"));
                }
                let w = world(&m, line_no, parts[0])?;
                let t = parser.term(parts[1].trim()).map_err(|e| err(line_no, e.to_string()))?;
                for f in parts[2].split(';').map(str::trim).filter(|s| !s.is_empty()) {
                    let a = parser.formula(f).map_err(|e| err(line_no, e.to_string()))?;
                    m.add_evidence(w, t.clone(), a);
                }
            }
            "universe" => {
                let a = parser.formula(line).map_err(|e| err(line_no, e.to_string()))?;
                m.extend_universe([&a]);
            }
            _ => return Err(err(line_no, format!("unexpected line `{line}`"))),
        }
    }
    Ok(m)
}

/// Prints a model in the format read by [`parse_model`]; `cs_ref` is
/// written verbatim on the `cs:` line.
pub fn print_model(m: &BasicEvaluation, cs_ref: &str) -> String {
    let names = m.world_names();
    let mut out = String::new();
    writeln!(out, "cs: {cs_ref}").unwrap();
    writeln!(out, "worlds: {}", names.join(" ")).unwrap();
    writeln!(out, "order:").unwrap();
    for w in 0..m.len() {
        for v in 0..m.len() {
            if w != v && m.leq(w, v) {
                writeln!(out, "  {} <= {}", names[w], names[v]).unwrap();
            }
        }
    }
    writeln!(out, "atoms:").unwrap();
    for (w, name) in names.iter().enumerate() {
        let atoms: Vec<&str> = m.true_atoms(w).iter().map(String::as_str).collect();
        if !atoms.is_empty() {
            writeln!(out, "  {name}: {}", atoms.join(" ")).unwrap();
        }
    }
    writeln!(out, "evidence:").unwrap();
    for ((w, t), fs) in m.base_evidence() {
        let fs: Vec<String> = fs.iter().map(print_formula).collect();
        writeln!(out, "  {} | {} | {}", names[*w], print_term(t), fs.join(" ; ")).unwrap();
    }
    writeln!(out, "universe:").unwrap();
    // maximal formulas suffice: the rest are their subformulas
    let fu = m.formula_universe();
    let covered: std::collections::BTreeSet<_> = fu
        .iter()
        .flat_map(|f| f.subformulas().into_iter().filter(move |g| g != f))
        .collect();
    let mut roots: Vec<String> = fu.iter().filter(|f| !covered.contains(*f)).map(print_formula).collect();
    roots.sort();
    for f in roots {
        writeln!(out, "  {f}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::validate_model;

    const SAMPLE: &str = "\
# excluded middle fails at w0
cs: standard
worlds: w0 w1
order:
  w0 <= w1
atoms:
  w1: p
evidence:
  w1 | x | p
universe:
  p \\/ (p -> _|_)
";

    fn none(_: &str) -> Result<ConstantSpecification, String> {
        Err("no files".into())
    }

    #[test]
    fn parse_and_round_trip() {
        let m = parse_model(SAMPLE, &mut none).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.leq(0, 1));
        assert!(validate_model(&m).ok);
        let printed = print_model(&m, "standard");
        let again = parse_model(&printed, &mut none).unwrap();
        assert_eq!(again, m);
        assert_eq!(print_model(&again, "standard"), printed);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "worlds: w0\natoms:\n  w9: p\n";
        assert_eq!(parse_model(bad, &mut none).unwrap_err().line, 3);
        assert_eq!(parse_model("worlds: a\ncs: foo\n", &mut none).unwrap_err().line, 2);
        assert!(parse_model("order:\n", &mut none).is_err());
    }
}
