//! Command-line front end for the qdist toolkit.

mod commands;
mod config;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qdist",
    about = "Distance computation and search-complexity tooling for quantum stabilizer LDPC codes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a code file: commutativity, rank, k, and sparsity.
    Validate(commands::ValidateArgs),
    /// Run one or more distance engines on a code.
    Distance(commands::DistanceArgs),
    /// Census the linked clusters of a code's connectivity graph and fit
    /// the growth base.
    Clusters(commands::ClustersArgs),
    /// Emit complexity-exponent curves at the GV bound.
    Exponents(commands::ExponentsArgs),
    /// Generate code files.
    Gen(commands::GenArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Validate(args) => commands::cmd_validate(&args),
        Command::Distance(args) => commands::cmd_distance(&args),
        Command::Clusters(args) => commands::cmd_clusters(&args),
        Command::Exponents(args) => commands::cmd_exponents(&args),
        Command::Gen(args) => commands::cmd_gen(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
