use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use persym::census::{Budget, DEFAULT_BUDGET_LOG2};
use persym::Error;

mod commands;
mod suites;

#[derive(Parser)]
#[command(name = "persym", version, about = "Rank statistics of persymmetric matrices over GF(2)")]
struct Cli {
    /// Largest exhaustive sweep allowed, as log2 of the number of items visited.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET_LOG2)]
    budget: u32,

    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact rank distribution of a family, e.g. `double:s=3,m=2,k=4`.
    Census {
        shape: String,
        /// Joint ranks over the family's nested chain of truncations.
        #[arg(long)]
        joint: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Number of rank-`i` members of a family.
    Gamma {
        shape: String,
        rank: usize,
        #[arg(long, value_enum, default_value_t = GammaPath::Closed)]
        path: GammaPath,
    },
    /// Run a named identity suite; exits 4 if any instance fails.
    Verify {
        #[arg(value_enum)]
        suite: suites::Suite,
        #[arg(long)]
        max_s: Option<usize>,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
        /// Bound on every argument of the reduction identities.
        #[arg(long)]
        max: Option<usize>,
        /// Print every instance, not just failures.
        #[arg(long)]
        all: bool,
    },
    /// Number of solutions of a bilinear system, e.g. `double k=4 s=3 m=2`.
    Count {
        #[arg(required = true, num_args = 1..)]
        system: Vec<String>,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = CountPath::All)]
        path: CountPath,
    },
    /// Exponential sum of a family's shape at given points, e.g. `--point 10110`.
    Expsum {
        shape: String,
        /// One bit string per companion factor, leading coefficient first.
        #[arg(long = "point", required = true)]
        points: Vec<String>,
        /// Use exact-degree variables (single: both, rows with n=1: the row).
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GammaPath {
    Closed,
    Recur,
    Census,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountPath {
    Brute,
    Integral,
    Moment,
    Closed,
    All,
}

/// Failure of a command, carrying its exit status.
pub enum Failure {
    Lib(Error),
    /// The computation ran but some check disagreed; the report is still
    /// printed.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Lib(Error::Domain(format!("cannot write {}: {e}", path.display())))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Lib(Error::Domain(format!("thread pool: {e}"))))?;
    }
    let budget = Budget::new(cli.budget);
    let (text, verdict) = match cli.command {
        Command::Census { shape, joint, csv } => (commands::census(&shape, joint, csv, budget)?, None),
        Command::Gamma { shape, rank, path } => commands::gamma(&shape, rank, path, budget)?,
        Command::Verify {
            suite,
            max_s,
            max_m,
            max_k,
            max,
            all,
        } => {
            let bounds = suites::Bounds { max_s, max_m, max_k, max };
            let report = suites::run(suite, &bounds, budget)?;
            let verdict = (report.failed() > 0).then(|| format!("{} of {} instances failed", report.failed(), report.len()));
            (report.to_json(all), verdict)
        }
        Command::Count { system, q, path } => commands::count(&system.join(" "), q, path, budget)?,
        Command::Expsum { shape, points, exact } => commands::expsum(&shape, &points, exact, budget)?,
    };
    emit(&cli.out, &text)?;
    match verdict {
        Some(msg) => Err(Failure::Verification(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_status(&e))
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(4)
        }
    }
}
