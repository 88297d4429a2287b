//! `kvn`: orbits, enumerations, Walsh functions and figure data from the
//! command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error, 4 iteration cap
//! exceeded, 1 I/O failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kvn_core::Error;

#[derive(Parser, Debug)]
#[command(name = "kvn", version, about = "Exact Kakutani-von Neumann maps on unit simplexes")]
pub struct Cli {
    /// Dimension of the simplex.
    #[arg(long, global = true, default_value_t = 2)]
    pub dim: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    K,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumKind {
    Dyadic,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Dyadic,
    Rational,
    /// The K-orbit of `--point`.
    Orbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump the structural matrices as JSON.
    Matrices,
    /// Iterate K or E from a point.
    Orbit {
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long)]
        point: String,
        #[arg(long)]
        count: usize,
    },
    /// Enumerate dyadic points (K-orbit of v0) or rationals (E-orbit of v0).
    Enum {
        #[arg(long, value_enum)]
        kind: EnumKind,
        #[arg(long)]
        count: usize,
    },
    /// Evaluate a T-Walsh function, print a level table or an inner product.
    Walsh {
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, conflicts_with_all = ["table", "inner"], requires = "m")]
        point: Option<String>,
        #[arg(long, conflicts_with = "inner")]
        table: Option<usize>,
        /// Two indices `M,L`.
        #[arg(long)]
        inner: Option<String>,
    },
    /// Weyl sum (1/k) Σ u_m(K^i p).
    Weyl {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        point: String,
        #[arg(long)]
        k: usize,
    },
    /// Cell discrepancy of a point sample.
    Discrepancy {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 8192)]
        count: usize,
        /// Start of the orbit for `--source orbit`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Minkowski function (rational to dyadic) or its inverse.
    Minkowski {
        #[arg(long, value_enum)]
        dir: Direction,
        #[arg(long)]
        point: String,
    },
    /// Scatter plot of the E-orbit of v0 (dimension 2).
    Figure4 {
        #[arg(long, default_value_t = 6000)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = EnumKind::Rational)]
        kind: EnumKind,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        e if e.is_cap() => 4,
        Error::Parse { .. } => 2,
        Error::Io { .. } => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
