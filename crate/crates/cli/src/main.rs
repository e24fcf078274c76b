use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use symex_core::{Family, RootSet};

mod commands;

/// Exact elementary symmetric polynomials by binomial-product extraction.
#[derive(Debug, Parser)]
#[command(name = "symex", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Dp,
    Extraction,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Equivalence,
    Convolution,
    Vandermonde,
    Gf,
    Layers,
    Multiplicity,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Pascal,
    Stirling1,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Pascal => Family::Pascal,
            FamilyArg::Stirling1 => Family::Stirling1,
        }
    }
}

fn parse_roots(s: &str) -> Result<RootSet, String> {
    s.parse().map_err(|e: symex_core::Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute e_i of a root set.
    Compute {
        #[arg(long, value_parser = parse_roots)]
        roots: RootSet,
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Extraction)]
        method: MethodArg,
        /// Print the sieve term by term (extraction only).
        #[arg(long)]
        explain: bool,
        #[arg(long)]
        json: bool,
        /// Keep per-subset bracket lines only for n up to this size.
        #[arg(long, default_value_t = 12)]
        explain_limit: usize,
    },
    /// Tabulate the sieve weights by recurrence and closed form.
    Coeffs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long, default_value_t = 6)]
        h_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run identity verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Truncation order for the generating-function suite.
        #[arg(long, default_value_t = 30)]
        truncation: usize,
        #[arg(long)]
        json: bool,
    },
    /// Time the methods against each other on a grid of (n, i).
    Bench {
        /// Single root-set size; defaults to the grid 6,10,14,18.
        #[arg(long)]
        n: Option<usize>,
        /// Single order; defaults to the grid 2,3,4.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, value_delimiter = ',', default_value = "dp,extraction")]
        methods: Vec<symex_core::Method>,
        /// Fixed root set instead of seeded random ones.
        #[arg(long, value_parser = parse_roots)]
        roots: Option<RootSet>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Repetitions per timing (at least 3; the median is reported).
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the triangle of a specialised root-set family.
    Specialize {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Output plus exit status of one command.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute {
            roots,
            i,
            method,
            explain,
            json,
            explain_limit,
        } => commands::compute(&roots, i, method, explain, json, explain_limit),
        Command::Coeffs { n, i, h_max, json } => commands::coeffs(n, i, h_max, json),
        Command::Verify {
            suite,
            seed,
            truncation,
            json,
        } => commands::verify(suite, seed, truncation, json),
        Command::Bench {
            n,
            i,
            methods,
            roots,
            seed,
            reps,
            json,
        } => commands::bench(commands::BenchArgs {
            n,
            i,
            methods,
            roots,
            seed,
            reps,
            json,
        }),
        Command::Specialize { family, rows, json } => {
            commands::specialize(family.into(), rows, json)
        }
    };
    // a closed pipe is not worth a panic
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
