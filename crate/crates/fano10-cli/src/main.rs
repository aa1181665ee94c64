//! Command-line front end for the verification claims.
//!
//! `fano10 verify <ids|all>` runs the selected claims and prints one line per
//! claim; `fano10 list` describes the registry. Exit code 0 means every
//! selected claim passed (a skip is not a pass), 1 reports failures or skips,
//! and 2 reports usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fano10::claims::{self, FieldSpec, RunConfig, Status};

#[derive(Parser)]
#[command(
    name = "fano10",
    version,
    about = "Exact-arithmetic verification of skew-pencil fourfold and threefold geometry"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification claims.
    Verify(VerifyArgs),
    /// List the claims with their dependencies and field support.
    List,
}

#[derive(Args)]
struct VerifyArgs {
    /// Claim ids (C01..C21), or `all`.
    #[arg(required = true)]
    claims: Vec<String>,

    /// Working field: rational, fp:<p>, or fp2:<p>.
    #[arg(long, default_value = "fp:97")]
    field: String,

    /// Master seed; every claim derives its own stream from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Sampling budget hint for the randomized claims.
    #[arg(long, default_value_t = 200)]
    samples: usize,

    /// Write the JSON payload to this path.
    #[arg(long)]
    json: Option<PathBuf>,

    /// Worker threads (0 or 1 = serial).
    #[arg(long, default_value_t = 0)]
    jobs: usize,

    /// Record wall-clock times (payloads then vary between runs).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => verify(args),
        Command::List => list(),
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let field = match FieldSpec::parse(&args.field) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let config = RunConfig {
        field,
        seed: args.seed,
        samples: args.samples,
        timings: args.timings,
        jobs: args.jobs,
    };
    let payload = match claims::run(&args.claims, &config) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let infos = claims::list_claims();
    let title = |id: &str| {
        infos
            .iter()
            .find(|i| i.id == id)
            .map(|i| i.title)
            .unwrap_or("")
    };
    let mut passed = 0usize;
    let mut failed = 0usize;
    let mut skipped = 0usize;
    for rep in &payload.reports {
        let status = match rep.status {
            Status::Pass => {
                passed += 1;
                "pass"
            }
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Skipped => {
                skipped += 1;
                "skip"
            }
        };
        let clock = if args.timings { format!("  [{} ms]", rep.millis) } else { String::new() };
        println!("{}  {}  {}{}", rep.id, status, title(rep.id), clock);
        match rep.status {
            Status::Pass => println!("      {}", rep.computed),
            Status::Fail => {
                println!("      computed: {}", rep.computed);
                println!("      expected: {}", rep.expected);
                if let Some(w) = &rep.witness {
                    println!("      witness:  {w}");
                }
            }
            Status::Skipped => {
                if let Some(w) = &rep.witness {
                    println!("      reason: {w}");
                }
            }
        }
    }
    println!(
        "{} selected over {}: {passed} passed, {failed} failed, {skipped} skipped",
        payload.reports.len(),
        payload.config.field,
    );

    let mut io_failed = false;
    if let Some(path) = &args.json {
        if let Err(e) = std::fs::write(path, payload.to_json()) {
            eprintln!("error: could not write {}: {e}", path.display());
            io_failed = true;
        }
    }
    if payload.all_passed() && !io_failed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn list() -> ExitCode {
    for info in claims::list_claims() {
        println!("{}  {}", info.id, info.title);
        println!(
            "      modules: {} | provenance: {} | fields: {}",
            info.dependencies.join(", "),
            info.provenance,
            info.fields
        );
    }
    ExitCode::SUCCESS
}
