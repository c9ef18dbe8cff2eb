//! `tensym`: check, dualize and compare congruences of tense m-symmetric
//! algebras and tms-spaces stored as `.mdl` files.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tensym::{Error, Guards};

/// Exit status when every check passed.
const EXIT_PASS: u8 = 0;
/// Exit status when some check failed.
const EXIT_FAIL: u8 = 1;
/// Exit status for unreadable or malformed input.
const EXIT_INPUT: u8 = 2;
/// Exit status when an input exceeds a size guard.
const EXIT_GUARD: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "tensym",
    version,
    about = "Finite tense m-symmetric algebras and their dual spaces"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text, global = true)]
    report: ReportFormat,

    /// Largest algebra accepted by the exhaustive congruence search.
    /// Overrides TENSYM_GUARD.
    #[arg(long, value_name = "K", global = true)]
    guard_size: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Dual,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the axioms of an algebra or space; classify algebras.
    Check { file: PathBuf },
    /// Print the dual space of an algebra.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the complex algebra of a space.
    Complex {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that the unit (algebras) or counit (spaces) is an isomorphism.
    Roundtrip { file: PathBuf },
    /// List the congruences of an algebra.
    Congruences {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Check that tms-subsets and congruences correspond order-reversingly.
    VerifyT2 { file: PathBuf },
    /// Enumerate all spaces on small posets with their complex algebras.
    Enumerate {
        #[arg(long, value_name = "N")]
        max_size: usize,
        /// Comma-separated degrees.
        #[arg(long, value_name = "M", value_delimiter = ',', default_value = "1")]
        m: Vec<u32>,
        /// Directory for one `.mdl` file per space and algebra.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render an algebra or space as a Graphviz digraph.
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Failure of a command, mapped onto the exit codes.
#[derive(Debug)]
pub enum Failure {
    /// A check failed; the report has been printed already.
    Check,
    /// The input is not a valid algebra or space for the command.
    Rejected(String),
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeGuard { .. } | Error::TooLarge(_) => Failure::Guard(e.to_string()),
            Error::InvalidAlgebra(report) => {
                Failure::Rejected(format!("not a tense m-symmetric algebra\n{report}"))
            }
            Error::InvalidSpace(report) => Failure::Rejected(format!("not a tms-space\n{report}")),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn guards(flag: Option<usize>) -> Result<Guards, Failure> {
    let mut guards = Guards::from_env()?;
    if let Some(k) = flag {
        guards.algebra = k;
    }
    Ok(guards)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let guards = guards(cli.guard_size)?;
    let ctx = commands::Context {
        format: cli.report,
        guards,
    };
    match cli.command {
        Command::Check { file } => ctx.check(&file),
        Command::Dual { file, output } => ctx.dual(&file, output.as_deref()),
        Command::Complex { file, output } => ctx.complex(&file, output.as_deref()),
        Command::Roundtrip { file } => ctx.roundtrip(&file),
        Command::Congruences { file, method } => ctx.congruences(&file, method),
        Command::VerifyT2 { file } => ctx.verify_t2(&file),
        Command::Enumerate { max_size, m, out } => ctx.enumerate(max_size, &m, out.as_deref()),
        Command::Dot { file, output } => ctx.dot(&file, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_PASS),
        Err(Failure::Check) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_GUARD)
        }
    }
}
