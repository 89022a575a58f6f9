use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn jlogic<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_jlogic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn factive_proof_is_accepted() {
    let o = jlogic([Path::new("check").as_os_str(), data("factive.proof").as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "accepted: p\n");
}

#[test]
fn broken_proof_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.proof");
    std::fs::write(&p, "hypotheses:\n  1: x:p\nsteps:\n  1. x:p ; hyp 1\n  2. q ; mp 1,1\n").unwrap();
    let o = jlogic(["check".as_ref(), p.as_os_str()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("rejected: step 2"), "{}", stdout(&o));
}

#[test]
fn parse_errors_exit_two() {
    let o = jlogic(["parse", "--formula", "x:(p -> "]);
    assert_eq!(o.status.code(), Some(2));
    let o = jlogic(["check", "/nonexistent/file.proof"]);
    assert_eq!(o.status.code(), Some(2));
    let o = jlogic(["no-such-command"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_prints_canonical_form() {
    let o = jlogic(["parse", "--formula", "(x.y):((p) -> q)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x.y:(p -> q)\n");
    let o = jlogic(["parse", "--term", "!(x + c1)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "term");
}

#[test]
fn excluded_middle_countermodel_with_two_worlds() {
    let o = jlogic(["countermodel", "p \\/ (p -> _|_)", "--max-worlds", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("countermodel: fails at w0\n"));
    let o = jlogic(["countermodel", "p \\/ (p -> _|_)", "--max-worlds", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn model_eval_of_falsum_fails() {
    let model = data("excluded_middle.model");
    let o = jlogic(["model-eval".as_ref(), model.as_os_str(), "w0".as_ref(), "_|_".as_ref()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "false\n");
    let o = jlogic(["model-eval".as_ref(), model.as_os_str(), "w1".as_ref(), "p \\/ (p -> _|_)".as_ref()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn shipped_model_is_valid() {
    let o = jlogic(["model-validate".as_ref(), data("excluded_middle.model").as_os_str()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn invalid_model_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.model");
    std::fs::write(&p, "worlds: w0 w1\norder:\n  w0 <= w1\natoms:\n  w0: p\nevidence:\n  w1 | x | q\n").unwrap();
    let o = jlogic(["model-validate".as_ref(), p.as_os_str(), "--format".as_ref(), "json".as_ref()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let conds: Vec<&str> = v["violations"].as_array().unwrap().iter().map(|x| x["condition"].as_str().unwrap()).collect();
    assert!(conds.contains(&"M1"), "{conds:?}");
    assert!(conds.contains(&"Factivity"), "{conds:?}");
}

#[test]
fn emitted_proofs_recheck() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.proof");
    let o = jlogic([
        "deduce".as_ref(),
        data("factive.proof").as_os_str(),
        "x:p".as_ref(),
        "-o".as_ref(),
        d.as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = jlogic(["check".as_ref(), d.as_os_str()]);
    assert_eq!(stdout(&o), "accepted: x:p -> p\n");

    let i = dir.path().join("i.proof");
    let o = jlogic([
        "internalize".as_ref(),
        data("factive.proof").as_os_str(),
        "--witnesses".as_ref(),
        "v".as_ref(),
        "-o".as_ref(),
        i.as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("term: c13.v\n"), "{}", stdout(&o));
    let o = jlogic(["check".as_ref(), i.as_os_str()]);
    assert_eq!(stdout(&o), "accepted: c13.v:p\n");
}

#[test]
fn emitted_models_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.model");
    let o = jlogic([
        "countermodel".as_ref(),
        "q".as_ref(),
        "--hyp".as_ref(),
        "x:(p -> q)".as_ref(),
        "--budget".as_ref(),
        "2".as_ref(),
        "--cs".as_ref(),
        data("standard.cs").as_os_str(),
        "-o".as_ref(),
        c.as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = jlogic(["model-validate".as_ref(), c.as_os_str()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = jlogic(["model-eval".as_ref(), c.as_os_str(), "w0".as_ref(), "q".as_ref()]);
    assert_eq!(o.status.code(), Some(1));

    let k = dir.path().join("k.model");
    let o = jlogic(["canonical", "--universe", "x:p", "--universe", "q", "-o"].map(std::ffi::OsStr::new).into_iter().chain([k.as_os_str()]));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = jlogic(["model-validate".as_ref(), k.as_os_str()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn saturation_is_prime() {
    let o = jlogic([
        "saturate".as_ref(),
        data("mixed.base").as_os_str(),
        "r /\\ (r -> _|_)".as_ref(),
        "--universe".as_ref(),
        "(p -> r) /\\ (q -> r)".as_ref(),
        "--format".as_ref(),
        "json".as_ref(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let members: Vec<&str> = v["members"].as_array().unwrap().iter().map(|m| m.as_str().unwrap()).collect();
    assert!(members.contains(&"x:(p \\/ q)"));
    assert!(members.contains(&"r"));
    assert!(!members.contains(&"r /\\ (r -> _|_)"));
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["countermodel", "((p -> q) -> p) -> p", "--max-worlds", "3", "--format", "json"],
        vec!["countermodel", "((p -> q) -> p) -> p", "--max-worlds", "3", "--format", "json", "--sequential"],
    ];
    let a = stdout(&jlogic(&runs[0]));
    let b = stdout(&jlogic(&runs[1]));
    assert_eq!(a, b);
    assert_eq!(a, stdout(&jlogic(&runs[0])));
    let canon = ["canonical", "--universe", "p \\/ (p -> _|_)", "--universe", "x:p"];
    assert_eq!(stdout(&jlogic(canon)), stdout(&jlogic(canon)));
}
