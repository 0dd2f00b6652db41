//! `sizeramsey`: constructions, arrowing checks, witnesses and reports from
//! the command line. Every run appends a JSON record to the results log.

mod commands;
mod io;

use std::fmt;
use std::fs::OpenOptions;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::*;
use crate::io::FileLog;

#[derive(Parser, Debug)]
#[command(name = "sizeramsey", version, about = "Size-Ramsey tooling for cycles and paths")]
struct Cli {
    /// Append-only JSON-lines log of runs.
    #[arg(long, global = true, env = "SIZERAMSEY_LOG", default_value = "results.jsonl")]
    log: PathBuf,
    /// Worker threads for parallel search (default: all cores).
    #[arg(long, global = true, env = "SIZERAMSEY_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, env = "SIZERAMSEY_SEED", default_value_t = 0)]
    seed: u64,
    /// Search-node budget for arrowing runs.
    #[arg(long, global = true, env = "SIZERAMSEY_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Command {
    /// Build a host graph and report its size against the target bound.
    Construct(ConstructArgs),
    /// Decide whether a graph arrows a pair of targets.
    Arrows(ArrowsArgs),
    /// Smallest complete graph arrowing a pair of targets.
    Ramsey(RamseyArgs),
    /// Produce a colouring certifying non-arrowing.
    Witness(WitnessArgs),
    /// Check a total colouring against a red and a blue target.
    Verify(VerifyArgs),
    /// Find a long blue cycle in a coloured (n,s,t)-system.
    Extract(ExtractArgs),
    /// Density, regularity and good-pair checks on two vertex sets.
    Pair(PairArgs),
    /// Tabulate construction sizes or the interval bounds over a grid.
    Bounds(BoundsArgs),
    /// Write the arrowing question as DIMACS CNF.
    EncodeSat(EncodeSatArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Construct(_) => "construct",
            Command::Arrows(_) => "arrows",
            Command::Ramsey(_) => "ramsey",
            Command::Witness(_) => "witness",
            Command::Verify(_) => "verify",
            Command::Extract(_) => "extract",
            Command::Pair(_) => "pair",
            Command::Bounds(_) => "bounds",
            Command::EncodeSat(_) => "encode-sat",
        }
    }
}

/// Bad input detected by the front end rather than the library.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// What a command produced: the payload and whether the mathematical answer
/// was negative.
pub struct Outcome {
    pub payload: Value,
    pub negative: bool,
}

pub struct Context {
    pub seed: u64,
    pub budget: Option<u64>,
    pub files: FileLog,
}

fn exit_code_of(err: &anyhow::Error) -> (u8, &'static str) {
    if let Some(e) = err.downcast_ref::<sizeramsey::Error>() {
        let code = if e.is_exhaustion() || matches!(e, sizeramsey::Error::NotFound { .. }) { 3 } else { 2 };
        return (code, e.code());
    }
    if err.downcast_ref::<Usage>().is_some() {
        return (2, "usage");
    }
    (2, "io")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error[usage]: {e}");
            return ExitCode::from(2);
        }
    }
    let mut ctx = Context { seed: cli.seed, budget: cli.budget, files: FileLog::default() };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Construct(a) => construct(&mut ctx, a),
        Command::Arrows(a) => arrows(&mut ctx, a),
        Command::Ramsey(a) => ramsey(&mut ctx, a),
        Command::Witness(a) => witness(&mut ctx, a),
        Command::Verify(a) => verify(&mut ctx, a),
        Command::Extract(a) => extract(&mut ctx, a),
        Command::Pair(a) => pair(&mut ctx, a),
        Command::Bounds(a) => bounds(&mut ctx, a),
        Command::EncodeSat(a) => encode_sat(&mut ctx, a),
    };
    let wall = start.elapsed().as_secs_f64();
    let (exit, payload, error) = match result {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.payload);
            (u8::from(out.negative), out.payload, Value::Null)
        }
        Err(err) => {
            let (exit, code) = exit_code_of(&err);
            eprintln!("error[{code}]: {err:#}");
            (exit, Value::Null, json!({ "code": code, "message": format!("{err:#}") }))
        }
    };
    let mut record = json!({
        "command": cli.command.name(),
        "params": &cli.command,
        "version": env!("CARGO_PKG_VERSION"),
        "seed": cli.seed,
        "threads": cli.threads,
        "budget": cli.budget,
        "wall_time_s": wall,
        "exit_code": exit,
        "result": payload,
        "inputs": ctx.files.inputs,
        "outputs": ctx.files.outputs,
    });
    if !error.is_null() {
        record["error"] = error;
    }
    let appended =
        OpenOptions::new().create(true).append(true).open(&cli.log).and_then(|mut f| writeln!(f, "{record}"));
    if let Err(e) = appended {
        eprintln!("error[io]: cannot append to {}: {e}", cli.log.display());
        return ExitCode::from(2);
    }
    ExitCode::from(exit)
}
