//! `minent`: command-line front end.
//!
//! Exit codes: 0 for true/valid/accept, 1 for false/invalid/reject, 2 for
//! usage and internal errors. `MINENT_NODE_BUDGET` overrides the tableau
//! node budget.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use minent::bench::{run_bench, Family, Verdict};
use minent::proof::Proof;
use minent::tableau::{analyze, build_tableau_with, BuildOptions, StatusCounts, DEFAULT_NODE_BUDGET};
use minent::translate::{stats, translate};
use minent::{holds, parse_sequent, Sequent, Strategy};

const BUDGET_VAR: &str = "MINENT_NODE_BUDGET";

#[derive(Parser)]
#[command(name = "minent", version, about = "Propositional minimal entailment prover and proof checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent by enumerating minimal models; prints true or false.
    Oracle { sequent: String },
    /// Build an OTAB tableau; prints VALID or INVALID with branch statistics.
    Prove {
        sequent: String,
        /// Also print the tableau as JSON.
        #[arg(long, value_enum)]
        emit: Option<EmitFormat>,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Prove, translate the tableau into an MLK proof and check it.
    Translate {
        sequent: String,
        /// Write the proof as JSON to this file.
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
        /// Print size figures of the tableau and the proof.
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Check a JSON proof; a rejection names the failing step on stderr.
    CheckProof { file: PathBuf },
    /// Run a benchmark family and write records into a directory.
    Bench {
        #[command(subcommand)]
        family: BenchFamily,
        #[command(flatten)]
        build: BuildArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitFormat {
    Json,
}

#[derive(Args)]
struct BuildArgs {
    /// Expansion strategy.
    #[arg(long, global = true, default_value_t = Strategy::default())]
    strategy: Strategy,
}

#[derive(Subcommand)]
enum BenchFamily {
    /// The separation family phi_1 .. phi_N.
    Phi {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seeded random sequents.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sequents read from a file, one per line.
    Corpus {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failures that map to exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

fn options(b: &BuildArgs) -> Result<BuildOptions, Fatal> {
    let node_budget = match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Fatal(format!("{BUDGET_VAR} is not a node count: {v:?}")))?,
        Err(_) => DEFAULT_NODE_BUDGET,
    };
    Ok(BuildOptions { strategy: b.strategy, node_budget })
}

fn print_counts(c: &StatusCounts) {
    println!(
        "branches: t-closed {} f-closed {} tf-closed {} ignorable-1 {} ignorable-2 {} open {}",
        c.t_closed, c.f_closed, c.tf_closed, c.ignorable1, c.ignorable2, c.open
    );
}

fn sequent(text: &str) -> Result<Sequent, Fatal> {
    Ok(parse_sequent(text)?)
}

fn verdict(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode, Fatal> {
    match cli.command {
        Command::Oracle { sequent: text } => {
            let ok = holds(&sequent(&text)?)?;
            println!("{ok}");
            Ok(verdict(ok))
        }
        Command::Prove { sequent: text, emit, build } => {
            let t = build_tableau_with(&sequent(&text)?, options(&build)?)?;
            let infos = analyze(&t);
            let ok = infos.iter().all(|i| i.closed() || i.ignorable());
            println!("{}", if ok { "VALID" } else { "INVALID" });
            println!("nodes: {}", t.nodes().len());
            print_counts(&StatusCounts::of(&infos));
            if emit.is_some() {
                println!("{}", t.to_json());
            }
            Ok(verdict(ok))
        }
        Command::Translate { sequent: text, emit, stats: show, build } => {
            let t = build_tableau_with(&sequent(&text)?, options(&build)?)?;
            let infos = analyze(&t);
            if !infos.iter().all(|i| i.closed() || i.ignorable()) {
                println!("INVALID");
                print_counts(&StatusCounts::of(&infos));
                return Ok(verdict(false));
            }
            let p = translate(&t)?;
            p.check().map_err(|e| Fatal(format!("translated proof fails its own check: {e}")))?;
            if p.conclusion() != &t.origin {
                return Err(Fatal("translated proof has the wrong conclusion".into()));
            }
            println!("VALID");
            let s = stats(&t, &p);
            println!("proof: {} steps, {} symbols", s.proof_steps, s.proof_symbols);
            if show {
                println!("tableau nodes: {}", s.tableau_nodes);
                println!("branch count: {}", s.branches);
                print_counts(&s.status);
            }
            if let Some(path) = emit {
                fs::write(&path, p.to_json())?;
            }
            Ok(verdict(true))
        }
        Command::CheckProof { file } => {
            let text = fs::read_to_string(&file)?;
            let p = match Proof::from_json(&text) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("reject: {e}");
                    return Ok(verdict(false));
                }
            };
            match p.check() {
                Ok(()) => {
                    println!("accept: {}", p.conclusion());
                    Ok(verdict(true))
                }
                Err(e) => {
                    eprintln!("reject: step {} ({})", e.step, e.reason);
                    Ok(verdict(false))
                }
            }
        }
        Command::Bench { family, build } => {
            let (family, out) = match family {
                BenchFamily::Phi { max_n, out } => (Family::Phi { max_n }, out),
                BenchFamily::Random { seed, count, out } => (Family::Random { seed, count }, out),
                BenchFamily::Corpus { path, out } => (Family::Corpus { path }, out),
            };
            let records = run_bench(&family, &out, options(&build)?)?;
            let count = |v: Verdict| records.iter().filter(|r| r.verdict == v).count();
            println!(
                "{} instances: {} valid, {} invalid, {} over budget, {} errors; records in {}",
                records.len(),
                count(Verdict::Valid),
                count(Verdict::Invalid),
                count(Verdict::Budget),
                count(Verdict::Error),
                out.display()
            );
            Ok(verdict(true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
