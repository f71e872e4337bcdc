//! `krasner`: validate tables, list hyperideals, classify, build products
//! and localizations, and sweep the theorem harness.
//!
//! Exit codes: 0 valid / holds / no violations, 1 refuted / violations
//! found, 2 input or precondition error (including an exhausted budget).

mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "krasner", version, about = "Workbench for finite Krasner (m,n)-hyperrings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
pub struct Output {
    /// Print the machine report instead of the summary.
    #[arg(long)]
    json: bool,
    /// Also write the machine report to this file.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms and print a witness for each failure.
    Validate {
        #[arg(long, value_name = "FILE")]
        structure: String,
        #[command(flatten)]
        out: Output,
    },
    /// List the hyperideals with their radicals.
    Ideals {
        #[arg(long, value_name = "FILE")]
        structure: String,
        #[command(flatten)]
        out: Output,
    },
    /// Radical of one hyperideal, computed from primes and from powers.
    Radical {
        #[arg(long, value_name = "FILE")]
        structure: String,
        #[arg(long, value_name = "NAMES")]
        ideal: String,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether a hyperideal is φ-δ-S-primary.
    Classify(commands::ClassifyArgs),
    /// Direct product of two structures.
    Product {
        /// Given twice: the two factors.
        #[arg(long, value_name = "FILE", num_args = 1, required = true)]
        structure: Vec<String>,
        /// Write the product as a structure document.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Fractions at a multiplicative set.
    Localize {
        #[arg(long, value_name = "FILE")]
        structure: String,
        #[arg(long, value_name = "NAMES")]
        mulset: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep theorems over the built-in corpus or the given structures.
    Theorems(commands::TheoremArgs),
}

/// A command that could not run; exit code 2.
#[derive(Debug)]
pub struct Failure(pub String);

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure(msg.into())
    }
}

/// Result of a command that ran: 0 for holds, 1 for refuted.
pub enum Verdict {
    Holds,
    Refuted,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { structure, out } => commands::validate(&structure, &out),
        Command::Ideals { structure, out } => commands::ideals(&structure, &out),
        Command::Radical { structure, ideal, out } => commands::radical(&structure, &ideal, &out),
        Command::Classify(args) => commands::classify(&args),
        Command::Product { structure, out, output } => commands::product(&structure, out.as_deref(), &output),
        Command::Localize { structure, mulset, out, output } => {
            commands::localize(&structure, &mulset, out.as_deref(), &output)
        }
        Command::Theorems(args) => commands::theorems(&args),
    };
    match result {
        Ok(Verdict::Holds) => ExitCode::SUCCESS,
        Ok(Verdict::Refuted) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
