//! `takeuchi`: command-line access to the sequence, verification, asymptotic,
//! ansatz and extrapolation tools of `takeuchi-core`.
//!
//! Exit status is 0 on success, 1 on a domain or I/O failure and 2 on a usage
//! error. Failures are reported on stderr as a single JSON object.

mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub const CACHE_ENV: &str = "TAKEUCHI_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "takeuchi", version, about = "Takeuchi numbers, Bell numbers and their asymptotics")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write the result here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; `seq` is the plain sequence file format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory for cached sequence tables.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Working precision for floating-point results.
    #[arg(long, global = true)]
    pub precision_bits: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Seq,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact sequence tables.
    Seq {
        #[arg(long, value_enum)]
        name: SeqName,
        #[arg(long)]
        n_max: usize,
        /// Family parameter, `a/b` or `a/b+c/d*i`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Else-branch counts of Takeuchi's function, by direct evaluation.
    Oracle {
        #[arg(long)]
        n_max: usize,
        /// Maximum number of memo entries.
        #[arg(long, default_value_t = takeuchi_core::tak_oracle::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Coefficientwise checks of functional equations and identities.
    Verify {
        #[arg(long, value_enum)]
        what: VerifyWhat,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
    },
    /// Asymptotic formulas and figure data.
    Asym {
        #[arg(long, value_enum)]
        what: AsymWhat,
        /// Comma-separated list of n.
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// `start:end[:step]`, inclusive.
        #[arg(long)]
        n_range: Option<String>,
        /// Expansion order for `bell`.
        #[arg(long, default_value_t = 2)]
        order: u32,
        /// Constant used by `conj1` and `hatT`.
        #[arg(long)]
        c_t: Option<String>,
        /// Cut-off for `bellsum`; defaults to a value satisfying the tail bound.
        #[arg(long)]
        m_max: Option<u64>,
        /// `h1,h2` for `hatT`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        h: Vec<String>,
    },
    /// The polynomial ansatz pipeline.
    Ansatz {
        #[arg(long, value_enum)]
        spec: AnsatzSpec,
        #[arg(long)]
        l_max: usize,
        /// Family parameter (rational).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Family coefficients as exact polynomials in λ.
        #[arg(long)]
        formal_lambda: bool,
        #[arg(long, default_value_t = takeuchi_core::ansatz::DEFAULT_SURPLUS)]
        surplus: usize,
    },
    /// Limits `C_T` and `d(λ)` by sequence acceleration.
    Extrapolate {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeqName {
    Takeuchi,
    Bell,
    Catalan,
    CatalanSums,
    Family,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyWhat {
    Ident,
    Takfunc,
    Family,
    BellEgf,
    Special,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AsymWhat {
    Bell,
    Conj1,
    Gap,
    Fig1,
    Fig2,
    Bounds,
    Bellsum,
    #[value(name = "hatT", alias = "hat-t")]
    HatT,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnsatzSpec {
    Takeuchi,
    Family,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Ct,
    Dlambda,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(std::io::Error),
}

impl From<takeuchi_core::Error> for CliError {
    fn from(e: takeuchi_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
            CliError::Io(_) => "io",
        }
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m.clone(),
            CliError::Io(e) => e.to_string(),
        }
    }
}

fn report(err: &CliError) -> ExitCode {
    eprintln!(
        "{}",
        json!({"error": {"kind": err.kind(), "message": err.message()}})
    );
    ExitCode::from(err.code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            return report(&CliError::Usage(e.render().to_string()));
        }
    };
    match commands::dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}
