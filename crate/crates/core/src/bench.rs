//! Batch runs over instance families with CSV/JSON output.
//!
//! Each instance goes through the oracle, the tableau prover, the
//! translator and the checker. `records.csv` and `records.json` hold only
//! deterministic fields, so reruns are byte-identical; wall-clock times go
//! to `timings.csv`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::{random_sequents, RNG_ALGORITHM};
use crate::parser::parse_sequent;
use crate::phi::{phi_sequent, phi_size, prove_phi_mlk, PhiError};
use crate::proof::Proof;
use crate::semantics::holds;
use crate::sequent::Sequent;
use crate::tableau::{analyze, build_tableau_with, BuildOptions, StatusCounts, TableauError};
use crate::translate::translate;

/// Atom and depth caps of the random family.
pub const RANDOM_ATOMS: usize = 4;
pub const RANDOM_DEPTH: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Phi { max_n: usize },
    Random { seed: u64, count: usize },
    /// One sequent per line; blank lines and lines starting with `#` are
    /// skipped.
    Corpus { path: PathBuf },
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Corpus { line: usize, message: String },
    #[error(transparent)]
    Phi(#[from] PhiError),
}

/// Outcome of one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Valid,
    Invalid,
    /// The tableau outgrew the node budget.
    Budget,
    /// Any other failure; the record's `error` column says which.
    Error,
}

/// One row of `records.csv`. Column order is the field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub instance: String,
    pub n: Option<usize>,
    pub sequent: String,
    pub oracle: Option<bool>,
    pub verdict: Verdict,
    pub tableau_nodes: Option<usize>,
    pub branches: Option<usize>,
    pub t_closed: Option<usize>,
    pub f_closed: Option<usize>,
    pub tf_closed: Option<usize>,
    pub ignorable1: Option<usize>,
    pub ignorable2: Option<usize>,
    pub open: Option<usize>,
    pub translated_steps: Option<usize>,
    pub translated_symbols: Option<usize>,
    /// The translated proof passed the checker after a JSON round trip.
    pub proof_checked: Option<bool>,
    pub direct_steps: Option<usize>,
    pub phi_size: Option<usize>,
    pub error: Option<String>,
}

/// One row of `timings.csv`, in milliseconds.
#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub instance: String,
    pub oracle_ms: f64,
    pub tableau_ms: f64,
    pub translate_ms: f64,
    pub check_ms: f64,
    pub direct_ms: f64,
}

#[derive(Serialize)]
struct Metadata<'a> {
    tool: &'static str,
    version: &'static str,
    family: String,
    strategy: String,
    node_budget: usize,
    rng: &'a str,
    random_atoms: usize,
    random_depth: usize,
    instances: usize,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn instances(family: &Family) -> Result<Vec<(String, Option<usize>, Sequent)>, BenchError> {
    match family {
        Family::Phi { max_n } => (1..=*max_n)
            .map(|n| Ok((format!("phi_{n}"), Some(n), phi_sequent(n)?)))
            .collect(),
        Family::Random { seed, count } => Ok(random_sequents(*seed, *count, RANDOM_ATOMS, RANDOM_DEPTH)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (format!("random_{seed}_{i}"), None, s))
            .collect()),
        Family::Corpus { path } => {
            let text = fs::read_to_string(path)?;
            let mut out = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let s = parse_sequent(line)
                    .map_err(|e| BenchError::Corpus { line: i + 1, message: e.to_string() })?;
                out.push((format!("corpus_{}", i + 1), None, s));
            }
            Ok(out)
        }
    }
}

fn family_label(family: &Family) -> String {
    match family {
        Family::Phi { max_n } => format!("phi(max_n={max_n})"),
        Family::Random { seed, count } => format!("random(seed={seed}, count={count})"),
        Family::Corpus { path } => format!("corpus({})", path.display()),
    }
}

/// Runs one instance through every phase.
pub fn run_instance(name: &str, n: Option<usize>, s: &Sequent, options: BuildOptions) -> (BenchRecord, Timing) {
    let mut rec = BenchRecord {
        instance: name.to_string(),
        n,
        sequent: s.to_string(),
        oracle: None,
        verdict: Verdict::Error,
        tableau_nodes: None,
        branches: None,
        t_closed: None,
        f_closed: None,
        tf_closed: None,
        ignorable1: None,
        ignorable2: None,
        open: None,
        translated_steps: None,
        translated_symbols: None,
        proof_checked: None,
        direct_steps: None,
        phi_size: None,
        error: None,
    };
    let mut tm = Timing {
        instance: name.to_string(),
        oracle_ms: 0.0,
        tableau_ms: 0.0,
        translate_ms: 0.0,
        check_ms: 0.0,
        direct_ms: 0.0,
    };

    if let Some(n) = n {
        let t = Instant::now();
        match prove_phi_mlk(n) {
            Ok(p) => {
                rec.direct_steps = Some(p.steps.len());
                rec.phi_size = phi_size(n).ok();
            }
            Err(e) => rec.error = Some(e.to_string()),
        }
        tm.direct_ms = ms(t);
    }

    let t = Instant::now();
    rec.oracle = holds(s).ok();
    tm.oracle_ms = ms(t);

    let t = Instant::now();
    let tableau = match build_tableau_with(s, options) {
        Ok(tab) => tab,
        Err(e) => {
            rec.verdict = if matches!(e, TableauError::BudgetExceeded(_)) { Verdict::Budget } else { Verdict::Error };
            rec.error = Some(e.to_string());
            tm.tableau_ms = ms(t);
            return (rec, tm);
        }
    };
    let infos = analyze(&tableau);
    tm.tableau_ms = ms(t);
    let counts = StatusCounts::of(&infos);
    rec.tableau_nodes = Some(tableau.nodes().len());
    rec.branches = Some(infos.len());
    rec.t_closed = Some(counts.t_closed);
    rec.f_closed = Some(counts.f_closed);
    rec.tf_closed = Some(counts.tf_closed);
    rec.ignorable1 = Some(counts.ignorable1);
    rec.ignorable2 = Some(counts.ignorable2);
    rec.open = Some(counts.open);
    let valid = infos.iter().all(|i| i.closed() || i.ignorable());
    if !valid {
        rec.verdict = Verdict::Invalid;
        return (rec, tm);
    }
    let t = Instant::now();
    let proof = translate(&tableau);
    tm.translate_ms = ms(t);
    match proof {
        Ok(p) => {
            let size = p.size();
            rec.translated_steps = Some(size.steps);
            rec.translated_symbols = Some(size.symbols);
            let t = Instant::now();
            let ok = round_trip_checks(&p, s);
            tm.check_ms = ms(t);
            rec.proof_checked = Some(ok);
            rec.verdict = Verdict::Valid;
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    (rec, tm)
}

fn round_trip_checks(p: &Proof, s: &Sequent) -> bool {
    match Proof::from_json(&p.to_json()) {
        Ok(back) => back.check().is_ok() && back.conclusion() == s,
        Err(_) => false,
    }
}

/// Runs every instance of `family` and writes `records.csv`,
/// `records.json`, `timings.csv` and `metadata.json` into `out`.
pub fn run_bench(family: &Family, out: &Path, options: BuildOptions) -> Result<Vec<BenchRecord>, BenchError> {
    let list = instances(family)?;
    let mut records = Vec::with_capacity(list.len());
    let mut timings = Vec::with_capacity(list.len());
    for (name, n, s) in &list {
        let (r, t) = run_instance(name, *n, s, options);
        records.push(r);
        timings.push(t);
    }
    fs::create_dir_all(out)?;
    let mut w = csv::Writer::from_path(out.join("records.csv"))?;
    for r in &records {
        w.serialize(r)?;
    }
    w.flush()?;
    fs::write(out.join("records.json"), serde_json::to_string_pretty(&records)? + "\n")?;
    let mut w = csv::Writer::from_path(out.join("timings.csv"))?;
    for t in &timings {
        w.serialize(t)?;
    }
    w.flush()?;
    let meta = Metadata {
        tool: "minent",
        version: env!("CARGO_PKG_VERSION"),
        family: family_label(family),
        strategy: options.strategy.to_string(),
        node_budget: options.node_budget,
        rng: RNG_ALGORITHM,
        random_atoms: RANDOM_ATOMS,
        random_depth: RANDOM_DEPTH,
        instances: records.len(),
    };
    fs::write(out.join("metadata.json"), serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(records)
}
