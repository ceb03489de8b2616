use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod input;
mod report;

use report::Format;

/// Exact Hermitian and quadratic lattice computations.
#[derive(Debug, Parser)]
#[command(name = "hermlat", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrality, evenness, signature, determinant and discriminant group.
    Analyze { file: PathBuf },
    /// Print the trace form of a Hermitian lattice as a quadratic lattice file.
    TraceForm { file: PathBuf },
    /// Vectors of a given norm in a definite lattice (roots by default).
    Roots {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        norm: Option<i64>,
        /// Allow enumeration above the rank guard.
        #[arg(long)]
        allow_large_rank: bool,
    },
    /// ADE decomposition of the root system of a definite lattice.
    Identify { file: PathBuf },
    /// Orthogonal complement of a sublattice given by basis rows.
    Complement { ambient: PathBuf, sub_basis: PathBuf },
    /// Isometry test for two definite lattices.
    Isometric { file1: PathBuf, file2: PathBuf },
    /// Age of a finite-order map given by eigenvalue exponents.
    Age {
        #[arg(long)]
        order: u64,
        #[arg(long, value_delimiter = ',')]
        exponents: Vec<u64>,
    },
    /// Minimal ages of non-quasi-reflections in each dimension of a range.
    RstScan {
        #[arg(long)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
    },
    /// Check c^w > 1 for all orders with phi(r) > 2 up to a bound.
    Seisu {
        #[arg(long)]
        max: u64,
    },
    /// Check the hypotheses of the general-type criterion for one embedding.
    GeneralType {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        case: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Treat the star hypothesis as established.
        #[arg(long)]
        assume_star: bool,
    },
    /// List the built-in embeddings, optionally running every check.
    Catalog {
        #[arg(long)]
        verify: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.format) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(if outcome.verified { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
