//! `jlogic`: command-line front end for jlogic-core.
//!
//! Exit codes: 0 success or valid, 1 semantic failure (rejected proof,
//! violated model, false formula, nothing found), 2 usage or input error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser as ClapParser, Subcommand, ValueEnum};
use jlogic_core::proof::format::{parse_cs, parse_proof, print_proof};
use jlogic_core::proof::{check_proof, deduce, internalize, CheckReport, ConstantSpecification, Proof};
use jlogic_core::saturation::{
    bounded_canonical_model, check_prime, prime_saturate, truth_lemma, FormulaUniverse, Oracle,
};
use jlogic_core::semantics::format::{parse_model, print_model};
use jlogic_core::semantics::{
    evaluate_truth, find_countermodel_sequent, validate_model, BasicEvaluation, ClosedModel, CountermodelConfig,
};
use jlogic_core::syntax::{print_formula, print_formula_full, print_term, print_term_full, Formula, Parser, Term};
use serde_json::{json, Value};

#[derive(ClapParser)]
#[command(name = "jlogic", version, about = "Proofs, models and prime sets for intuitionistic justification logic")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term or formula and print it back.
    Parse {
        #[arg(long, conflicts_with = "formula")]
        term: bool,
        #[arg(long)]
        formula: bool,
        input: String,
    },
    /// Check a proof file.
    Check {
        proof: PathBuf,
        /// Constant specification file (default: the standard one).
        cs: Option<PathBuf>,
    },
    /// Discharge a hypothesis: a proof of B from M, A becomes one of A -> B from M.
    Deduce {
        proof: PathBuf,
        hypothesis: String,
        #[arg(long)]
        cs: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Turn a proof of B from A1..An into one of t:B from x1:A1..xn:An.
    Internalize {
        proof: PathBuf,
        /// Comma-separated witness variables, one per hypothesis (default u1, u2, ...).
        #[arg(long, value_delimiter = ',')]
        witnesses: Vec<String>,
        #[arg(long)]
        cs: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Validate a model file.
    ModelValidate { model: PathBuf },
    /// Evaluate a formula at a world of a model file.
    ModelEval { model: PathBuf, world: String, formula: String },
    /// Search for a finite model where the hypotheses hold and the formula fails.
    Countermodel {
        formula: String,
        #[arg(long = "hyp")]
        hyps: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        #[arg(long, default_value_t = 1)]
        budget: usize,
        #[arg(long)]
        cs: Option<PathBuf>,
        /// Search on one thread.
        #[arg(long)]
        sequential: bool,
        /// Write the model found to this file.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Extend a base set to a prime set not deriving the goal.
    Saturate {
        /// File with one base formula per line.
        base: PathBuf,
        goal: String,
        /// Extra universe seeds; the universe is the subformula closure of
        /// the seeds, the base and the goal.
        #[arg(long = "universe")]
        universe: Vec<String>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        cs: Option<PathBuf>,
    },
    /// Build the canonical model on the prime subsets of a universe.
    Canonical {
        #[arg(long = "universe", required = true)]
        universe: Vec<String>,
        #[arg(long)]
        cs: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 12)]
        cap: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// An input or usage problem: exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

struct Ctx {
    format: Format,
}

impl Ctx {
    /// Prints the text report or the JSON value.
    fn emit(&self, text: &str, value: Value) {
        match self.format {
            Format::Text => print!("{text}"),
            Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_cs(path: Option<&Path>) -> Result<(ConstantSpecification, String), InputError> {
    match path {
        None => Ok((ConstantSpecification::standard(), "standard".into())),
        Some(p) => {
            let cs = parse_cs(&read(p)?).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
            // absolute, so that models written elsewhere still resolve it
            let abs = fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf());
            Ok((cs, abs.display().to_string()))
        }
    }
}

fn parser_for(cs: &ConstantSpecification) -> Parser {
    Parser::with_constants(cs.constants())
}

fn formula(parser: &Parser, s: &str) -> Result<Formula, InputError> {
    parser.formula(s).map_err(|e| InputError(format!("`{s}`: {e}")))
}

fn load_proof(path: &Path, parser: &Parser) -> Result<Proof, InputError> {
    parse_proof(&read(path)?, parser).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<BasicEvaluation, InputError> {
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut resolve = |r: &str| -> Result<ConstantSpecification, String> {
        let p = dir.join(r);
        let text = fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
        parse_cs(&text).map_err(|e| format!("{}: {e}", p.display()))
    };
    parse_model(&read(path)?, &mut resolve).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<String, InputError> {
    match out {
        Some(p) => {
            fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text.to_string()),
    }
}

fn model_json(m: &BasicEvaluation) -> Value {
    let names = m.world_names();
    let order: Vec<Value> = (0..m.len())
        .flat_map(|w| (0..m.len()).filter(move |&v| v != w && m.leq(w, v)).map(move |v| (w, v)))
        .map(|(w, v)| json!([names[w], names[v]]))
        .collect();
    let atoms: serde_json::Map<String, Value> =
        names.iter().enumerate().map(|(w, n)| (n.clone(), json!(m.true_atoms(w)))).collect();
    let evidence: Vec<Value> = m
        .base_evidence()
        .iter()
        .map(|((w, t), fs)| {
            json!({
                "world": names[*w],
                "term": print_term(t),
                "formulas": fs.iter().map(print_formula).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "worlds": names, "order": order, "atoms": atoms, "evidence": evidence })
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx { format: cli.format };
    match cli.command {
        Command::Parse { term, formula: _, input } => {
            let parser = Parser::default();
            if term {
                let t: Term = parser.term(&input).map_err(|e| InputError(format!("`{input}`: {e}")))?;
                let text = format!("{}\n", print_term(&t));
                ctx.emit(&text, json!({ "kind": "term", "printed": print_term(&t), "full": print_term_full(&t), "size": t.size() }));
            } else {
                let a = formula(&parser, &input)?;
                let text = format!("{}\n", print_formula(&a));
                ctx.emit(
                    &text,
                    json!({ "kind": "formula", "printed": print_formula(&a), "full": print_formula_full(&a), "size": a.size() }),
                );
            }
            Ok(true)
        }
        Command::Check { proof, cs } => {
            let (cs, _) = load_cs(cs.as_deref())?;
            let p = load_proof(&proof, &parser_for(&cs))?;
            match check_proof(&p, &cs) {
                CheckReport::Accepted { theorem } => {
                    let th = print_formula(&theorem);
                    ctx.emit(
                        &format!("accepted: {th}\n"),
                        json!({ "accepted": true, "theorem": th, "steps": p.len() }),
                    );
                    Ok(true)
                }
                CheckReport::Rejected(r) => {
                    ctx.emit(
                        &format!("rejected: {r}\n"),
                        json!({ "accepted": false, "step": r.step + 1, "reason": format!("{:?}", r.reason), "detail": r.detail }),
                    );
                    Ok(false)
                }
            }
        }
        Command::Deduce { proof, hypothesis, cs, out } => {
            let (cs, _) = load_cs(cs.as_deref())?;
            let parser = parser_for(&cs);
            let p = load_proof(&proof, &parser)?;
            let a = formula(&parser, &hypothesis)?;
            let d = deduce(&p, &a, &cs)?;
            let printed = print_proof(&d);
            let text = write_or_print(out.as_deref(), &printed)?;
            ctx.emit(
                &text,
                json!({ "theorem": d.theorem().map(print_formula), "steps": d.len(), "proof": printed }),
            );
            Ok(true)
        }
        Command::Internalize { proof, witnesses, cs, out } => {
            let (cs, _) = load_cs(cs.as_deref())?;
            let p = load_proof(&proof, &parser_for(&cs))?;
            let ws: Vec<Term> = if witnesses.is_empty() {
                (1..=p.hypotheses.len()).map(|i| Term::var(format!("u{i}"))).collect()
            } else {
                witnesses
                    .iter()
                    .map(|w| match Parser::default().term(w.trim())? {
                        t @ Term::Variable(_) => Ok(t),
                        _ => Err(InputError(format!("witness `{w}` is not a variable"))),
                    })
                    .collect::<Result<_, InputError>>()?
            };
            let (t, q) = internalize(&p, &ws, &cs)?;
            let printed = print_proof(&q);
            let text = format!("term: {}\n{}", print_term(&t), write_or_print(out.as_deref(), &printed)?);
            ctx.emit(
                &text,
                json!({ "term": print_term(&t), "theorem": q.theorem().map(print_formula), "steps": q.len(), "proof": printed }),
            );
            Ok(true)
        }
        Command::ModelValidate { model } => {
            let m = load_model(&model)?;
            let v = validate_model(&m);
            let mut text = String::new();
            if v.ok {
                text.push_str("valid\n");
            } else {
                let _ = writeln!(text, "invalid: {} violations", v.violations.len());
                for x in &v.violations {
                    let _ = writeln!(text, "  {x}");
                }
            }
            ctx.emit(&text, serde_json::to_value(&v)?);
            Ok(v.ok)
        }
        Command::ModelEval { model, world, formula: f } => {
            let m = load_model(&model)?;
            let a = formula(&parser_for(m.cs()), &f)?;
            let w = m.world_index(&world)?;
            let mut m = m;
            m.extend_universe([&a]);
            let cm = ClosedModel::close(m)?;
            let truth = evaluate_truth(&cm, w, &a)?;
            ctx.emit(&format!("{truth}\n"), json!({ "world": world, "formula": print_formula(&a), "value": truth }));
            Ok(truth)
        }
        Command::Countermodel { formula: f, hyps, max_worlds, budget, cs, sequential, out } => {
            if max_worlds == 0 || max_worlds > 6 {
                return Err(InputError("--max-worlds must be between 1 and 6".into()));
            }
            let (cs, cs_ref) = load_cs(cs.as_deref())?;
            let parser = parser_for(&cs);
            let goal = formula(&parser, &f)?;
            let hyps: Vec<Formula> = hyps.iter().map(|h| formula(&parser, h)).collect::<Result<_, _>>()?;
            let cfg = CountermodelConfig { max_worlds, evidence_budget: budget, parallel: !sequential };
            match find_countermodel_sequent(&hyps, &goal, &cfg, &Arc::new(cs)) {
                Some(c) => {
                    let m = c.model.evaluation();
                    let text = format!(
                        "countermodel: fails at {}\n{}",
                        c.world_name(),
                        write_or_print(out.as_deref(), &print_model(m, &cs_ref))?
                    );
                    ctx.emit(&text, json!({ "found": true, "world": c.world_name(), "model": model_json(m) }));
                    Ok(true)
                }
                None => {
                    ctx.emit(
                        &format!("none found (max worlds {max_worlds}, evidence budget {budget})\n"),
                        json!({ "found": false, "max_worlds": max_worlds, "budget": budget }),
                    );
                    Ok(false)
                }
            }
        }
        Command::Saturate { base, goal, universe, depth, cs } => {
            let (cs, _) = load_cs(cs.as_deref())?;
            let parser = parser_for(&cs);
            let base_text = read(&base)?;
            let mut n = std::collections::BTreeSet::new();
            for line in base_text.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if !line.is_empty() {
                    n.insert(formula(&parser, line)?);
                }
            }
            let goal = formula(&parser, &goal)?;
            let seeds: Vec<Formula> = universe.iter().map(|s| formula(&parser, s)).collect::<Result<_, _>>()?;
            let u = FormulaUniverse::from_seeds(seeds.iter().chain(&n).chain([&goal]));
            let oracle = Oracle::new(Arc::new(cs), depth);
            let mut sat = match prime_saturate(&n, &goal, &u, &oracle) {
                Ok(s) => s,
                Err(e) => {
                    ctx.emit(&format!("failed: {e}\n"), json!({ "ok": false, "error": e.to_string() }));
                    return Ok(false);
                }
            };
            let verdict = check_prime(&mut sat.theory, &u, &oracle);
            let mut text = format!("universe: {} formulas\ntrace:\n", u.len());
            for s in &sat.trace {
                let _ = writeln!(text, "  {:>3}. {} {} [{}]", s.index, if s.added { "+" } else { "-" }, s.formula, s.certificate);
            }
            let members: Vec<String> = u.formulas().iter().filter(|f| sat.theory.members.contains(*f)).map(print_formula).collect();
            text.push_str("members:\n");
            for m in &members {
                let _ = writeln!(text, "  {m}");
            }
            let _ = writeln!(text, "verdict: {verdict:?}");
            let _ = writeln!(text, "unknown certificates: {}", sat.theory.unknown_count());
            ctx.emit(
                &text,
                json!({
                    "ok": true,
                    "universe": u.len(),
                    "trace": sat.trace,
                    "members": members,
                    "verdict": verdict,
                    "unknown": sat.theory.unknown_count(),
                }),
            );
            Ok(verdict.is_prime())
        }
        Command::Canonical { universe, cs, depth, cap, out } => {
            let (cs, cs_ref) = load_cs(cs.as_deref())?;
            let parser = parser_for(&cs);
            let seeds: Vec<Formula> = universe.iter().map(|s| formula(&parser, s)).collect::<Result<_, _>>()?;
            let u = FormulaUniverse::from_seeds(&seeds);
            let oracle = Oracle::new(Arc::new(cs), depth);
            let cm = bounded_canonical_model(&u, &oracle, cap, true)?;
            let report = truth_lemma(&cm, &u)?;
            let valid = validate_model(&cm.evaluation);
            let mut head = String::new();
            let _ = writeln!(head, "# universe: {} formulas, {} prime worlds", u.len(), cm.worlds.len());
            let _ = writeln!(head, "# valid: {}", valid.ok);
            let _ = writeln!(
                head,
                "# truth lemma: {} checked, {} mismatches, {} unknown",
                report.checked,
                report.mismatches.len(),
                report.unknown.len()
            );
            for line in report.mismatches.iter().chain(&report.unknown) {
                let _ = writeln!(head, "#   {line}");
            }
            let body = format!("{head}{}", print_model(&cm.evaluation, &cs_ref));
            let text = match out.as_deref() {
                Some(p) => format!("{head}{}", write_or_print(Some(p), &body)?),
                None => body,
            };
            let worlds: Vec<Value> = cm
                .worlds
                .iter()
                .enumerate()
                .map(|(i, th)| {
                    json!({
                        "name": format!("Δ{i}"),
                        "members": u.formulas().iter().filter(|f| th.members.contains(*f)).map(print_formula).collect::<Vec<_>>(),
                    })
                })
                .collect();
            ctx.emit(
                &text,
                json!({
                    "universe": u.len(),
                    "worlds": worlds,
                    "valid": valid.ok,
                    "truth_lemma": report,
                    "model": model_json(&cm.evaluation),
                }),
            );
            Ok(valid.ok && report.holds() && report.unknown.is_empty())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
