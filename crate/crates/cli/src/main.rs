//! Command-line front end: parsing, classification, ALBA, ALC, rule
//! synthesis, proof search, semantic checks and table regeneration.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

/// Exit status for malformed invocations and unreadable input.
const EX_USAGE: u8 = 64;
/// Exit status for violated internal invariants.
const EX_SOFTWARE: u8 = 70;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn usage(e: impl ToString) -> CliError {
        CliError::Usage(e.to_string())
    }

    pub fn internal(e: impl ToString) -> CliError {
        CliError::Internal(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "strictimp",
    version,
    about = "Workbench for strict implication logics and their Lambek-calculus correspondents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and print a formula, sequent, structure or quasi-inequality.
    Parse {
        text: String,
        #[arg(long, value_enum, default_value_t = ParseKind::Sequent)]
        kind: ParseKind,
    },
    /// Search for an inductive certificate.
    Classify {
        sequent: String,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
    /// Reduce a strict implication sequent to pure quasi-inequalities.
    Alba {
        sequent: String,
        /// Replace variables of a single polarity by top or bot first.
        #[arg(long)]
        eliminate: bool,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Compute a product-language correspondent.
    Alc {
        sequent: String,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
    /// Turn a product-language sequent, or a correspondent name such as `tr`,
    /// into a structural rule.
    Synthesize {
        source: String,
        /// Rule name; defaults to the correspondent name or `sigma`.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
    },
    /// Search for a cut-free derivation.
    Prove(ProveArgs),
    /// Semantic checks on finite algebras and frames.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Regenerate a reference table and compare it with the bundled golden file.
    Repro {
        /// One of table1-alba, table3-alc, binary-correspondents,
        /// ternary-correspondents, appendix-a, or all.
        target: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled frames per axiom beyond the exhaustive sizes.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
}

#[derive(Args, Debug)]
struct ProveArgs {
    /// A consecution `X |- phi`; structures use `o` and `^`.
    sequent: String,
    /// A named system or a JSON file of synthesized rules.
    #[arg(long, default_value = "bdfnl")]
    system: String,
    #[arg(long, default_value_t = 40)]
    depth: usize,
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long, value_enum, default_value_t = ProofEmit::Tree)]
    emit: ProofEmit,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Compare a characteristic sequent with its product correspondent on frames.
    Equiv {
        /// Correspondent name (`tr`) or axiom tag (`Tr`).
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 2)]
        size: usize,
        #[arg(long, value_enum, default_value_t = Semantics::Binary)]
        semantics: Semantics,
        /// Frames drawn when the size is too large to enumerate.
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a sequent or quasi-inequality on an algebra given as JSON tables.
    Validate {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        sequent: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ParseKind {
    Formula,
    Sequent,
    Structure,
    Consecution,
    Quasi,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Emit {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ProofEmit {
    Tree,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Semantics {
    Binary,
    Ternary,
    Catalog,
}

/// Deadline from `WORKBENCH_BUDGET_MS`, when set.
fn budget() -> Result<Option<Instant>, CliError> {
    match std::env::var("WORKBENCH_BUDGET_MS") {
        Err(_) => Ok(None),
        Ok(ms) => {
            let ms: u64 = ms.trim().parse().map_err(|_| {
                CliError::Usage(format!(
                    "WORKBENCH_BUDGET_MS must be a number of milliseconds, got `{ms}`"
                ))
            })?;
            Ok(Some(Instant::now() + Duration::from_millis(ms)))
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Parse { text, kind } => commands::parse(&text, kind),
        Command::Classify { sequent, emit } => commands::classify(&sequent, emit),
        Command::Alba {
            sequent,
            eliminate,
            emit,
        } => commands::alba(&sequent, eliminate, emit),
        Command::Alc { sequent, emit } => commands::alc(&sequent, emit),
        Command::Synthesize { source, name, emit } => {
            commands::synthesize(&source, name.as_deref(), emit)
        }
        Command::Prove(args) => commands::prove(&args, budget()?),
        Command::Oracle { command } => match command {
            OracleCommand::Equiv {
                pair,
                size,
                semantics,
                samples,
                seed,
            } => commands::equiv(&pair, size, semantics, samples, seed),
            OracleCommand::Validate { algebra, sequent } => {
                commands::validate_file(&algebra, &sequent)
            }
        },
        Command::Repro {
            target,
            seed,
            samples,
        } => commands::repro(&target, seed, samples, budget()?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EX_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("strictimp: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => EX_USAGE,
                CliError::Internal(_) => EX_SOFTWARE,
            })
        }
    }
}
