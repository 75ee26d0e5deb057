//! Command-line entry point: exact Dirac linear algebra, polynomial
//! bracket calculus, quantum-torus orbit decisions, surface invariants
//! and finite-group Picard computations behind one deterministic binary.

// Indexed loops over parallel tensor components are the local idiom.
#![allow(clippy::needless_range_loop)]

mod commands;
mod config;
mod selftest;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Config, Format};

/// Exit classes: 1 for malformed input, 2 for well-formed input rejected
/// on mathematical grounds.
#[derive(Debug)]
pub enum AppError {
    Malformed { code: &'static str, message: String },
    Domain { code: &'static str, message: String },
}

impl AppError {
    pub fn malformed(code: &'static str, message: impl Into<String>) -> Self {
        AppError::Malformed {
            code,
            message: message.into(),
        }
    }

    pub fn domain(code: &'static str, message: impl Into<String>) -> Self {
        AppError::Domain {
            code,
            message: message.into(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "dirackit",
    version,
    about = "Poisson/Dirac geometry and Morita invariant toolkit"
)]
struct Cli {
    /// Configuration file (JSON); defaults to $DIRACKIT_CONFIG when set.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for the deterministic self-test batteries.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance overrides, NAME=VALUE; repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VAL")]
    tolerances: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Vector Dirac structures: graphs, pairs, images, gauge, fibers.
    Dirac {
        #[command(subcommand)]
        op: commands::DiracOp,
    },
    /// Polynomial Poisson calculus: brackets and integrability.
    Poisson {
        #[command(subcommand)]
        op: commands::PoissonOp,
    },
    /// Twisted convolution algebra and parameter orbits.
    Torus {
        #[command(subcommand)]
        op: commands::TorusOp,
    },
    /// Surface structures on the flat torus: graphs and comparisons.
    Tss {
        #[command(subcommand)]
        op: commands::TssOp,
    },
    /// Finite groups: Picard groups through bispaces.
    Finite {
        #[command(subcommand)]
        op: commands::FiniteOp,
    },
    /// Run the deterministic invariant battery of every module.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config =
        match Config::assemble(cli.config.as_deref(), cli.format, cli.seed, &cli.tolerances) {
            Ok(c) => c,
            Err(e) => return report(e),
        };
    let outcome = match cli.command {
        Command::Dirac { op } => commands::run_dirac(op, &config),
        Command::Poisson { op } => commands::run_poisson(op, &config),
        Command::Torus { op } => commands::run_torus(op, &config),
        Command::Tss { op } => commands::run_tss(op, &config),
        Command::Finite { op } => commands::run_finite(op, &config),
        Command::Selftest => selftest::run(&config),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(e),
    }
}

fn report(e: AppError) -> ExitCode {
    let (code, message, exit) = match &e {
        AppError::Malformed { code, message } => (*code, message, 1u8),
        AppError::Domain { code, message } => (*code, message, 2u8),
    };
    eprintln!(
        "{}",
        serde_json::json!({"error": {"code": code, "message": message}})
    );
    eprintln!("error[{code}]: {message}");
    ExitCode::from(exit)
}
