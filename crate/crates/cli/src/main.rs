//! `mdtk`: construct, store and check modular data from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! and input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "mdtk", version, about = "Exact modular data toolkit")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Pointed,
    Ising,
    Fibonacci,
    So5level9,
    DoubleAbelian,
}

/// A datum is a JSON file path or `builtin:<name>`.
#[derive(Subcommand)]
enum Command {
    /// Build a standard family and write it as JSON.
    Construct {
        family: Family,
        /// Cyclic group order (pointed).
        #[arg(long)]
        n: Option<u64>,
        /// Twist or root exponent (pointed, ising, fibonacci, so5level9).
        #[arg(long, allow_hyphen_values = true)]
        j: Option<i64>,
        /// Sign of the S entry of the X row (ising).
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        eps: i64,
        /// Comma-separated cyclic orders (double-abelian).
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u64>,
        /// Metric group JSON {cyclic_orders, q} (pointed).
        #[arg(long, conflicts_with = "n")]
        metric: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every modularity check.
    Verify { datum: String },
    /// Dimensions, FSexp, n_t, anomaly, Gauss sums, pseudounitarity.
    Report { datum: String },
    /// The Verlinde fusion table.
    Fusion { datum: String },
    /// Galois orbits, t-orbits and the Galois identities.
    Orbits { datum: String },
    /// Galois conjugate by ζ ↦ ζ^k.
    Conjugate {
        datum: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Deligne product of two data.
    Product {
        a: String,
        b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// FSexp against the Ndim bound with the extremal classification.
    BoundCheck { datum: String },
    /// The builtin catalog.
    Catalog {
        /// Check every builtin and every prime-power product of two.
        #[arg(long, conflicts_with_all = ["list", "export"])]
        all: bool,
        #[arg(long, conflicts_with = "export")]
        list: bool,
        /// Write every builtin into this directory.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, cli.json) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<commands::InputError>() { 2 } else { 1 })
        }
    }
}
