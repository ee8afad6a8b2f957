//! End-to-end tests of the `minent` binary: output and exit codes.

use std::fs;
use std::process::{Command, Output};

fn minent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minent")).args(args).env_remove("MINENT_NODE_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn oracle_exit_codes() {
    let yes = minent(&["oracle", "a | b |-m ~a | ~b"]);
    assert_eq!((yes.status.code(), stdout(&yes).trim()), (Some(0), "true"));
    let no = minent(&["oracle", "a | b |- ~a | ~b"]);
    assert_eq!((no.status.code(), stdout(&no).trim()), (Some(1), "false"));
    assert_eq!(minent(&["oracle", "a |-m (b"]).status.code(), Some(2));
}

#[test]
fn prove_reports_statistics_and_tableau() {
    let o = minent(&["prove", "a | b |-m ~a | ~b", "--emit", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("VALID\n"), "{out}");
    assert!(out.contains("ignorable-1 2"), "{out}");
    let json: serde_json::Value = serde_json::from_str(&out[out.find('{').unwrap()..]).unwrap();
    assert_eq!(json["nodes"].as_array().unwrap().len(), 6);

    let o = minent(&["prove", "a |-m ~a", "--strategy", "deepest"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INVALID"));
    assert_eq!(minent(&["prove", "a |-m ~a", "--strategy", "random"]).status.code(), Some(2));
    // Classical sequents have no OTAB tableau.
    assert_eq!(minent(&["prove", "a |- a"]).status.code(), Some(2));
}

#[test]
fn translate_then_check_proof() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("proof.json");
    let f = file.to_str().unwrap();
    let o = minent(&["translate", "a | (a & b) |-m ~b", "--emit", f, "--stats"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("tableau nodes: 6") && out.contains("proof: "), "{out}");

    let ok = minent(&["check-proof", f]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert_eq!(stdout(&ok).trim(), "accept: a | a & b |-m ~b");

    // Corrupt the last step's rule tag.
    let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    let steps = doc["steps"].as_array_mut().unwrap();
    let last = steps.len() - 1;
    steps[last]["rule"] = "axiom".into();
    fs::write(&file, doc.to_string()).unwrap();
    let bad = minent(&["check-proof", f]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stderr(&bad).contains(&format!("step {last}")), "{}", stderr(&bad));

    fs::write(&file, "not json").unwrap();
    assert_eq!(minent(&["check-proof", f]).status.code(), Some(1));
    assert_eq!(minent(&["check-proof", dir.path().join("missing").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn translate_rejects_invalid_sequents() {
    let o = minent(&["translate", "a |-m b"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("INVALID"));
}

#[test]
fn bench_families_write_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phi");
    let o = minent(&["bench", "phi", "--max-n", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("records.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("instance,n,sequent,oracle,verdict,"), "{csv}");
    let meta: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("metadata.json")).unwrap()).unwrap();
    assert_eq!(meta["rng"], "ChaCha8Rng::seed_from_u64");

    let corpus = dir.path().join("corpus.txt");
    fs::write(&corpus, "a |-m a\na |-m ~a\n").unwrap();
    let out = dir.path().join("corpus");
    let o = minent(&["bench", "corpus", corpus.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(out.join("records.csv")).unwrap().contains("INVALID"));

    let out = dir.path().join("random");
    let o = minent(&["bench", "random", "--seed", "7", "--count", "20", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("20 instances"));
}

#[test]
fn node_budget_from_the_environment() {
    let run = |budget: &str| {
        Command::new(env!("CARGO_BIN_EXE_minent"))
            .args(["prove", "p1 | p2, p1 | ~p2, ~p1 | p2, ~p1 | ~p2 |-m"])
            .env("MINENT_NODE_BUDGET", budget)
            .output()
            .unwrap()
    };
    assert_eq!(run("1000").status.code(), Some(0));
    let o = run("5");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("budget"), "{}", stderr(&o));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(minent(&[]).status.code(), Some(2));
    assert_eq!(minent(&["bench", "phi"]).status.code(), Some(2));
    assert_eq!(minent(&["--help"]).status.code(), Some(0));
}
