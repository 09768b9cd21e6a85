//! `fibcat`: command-line access to the fibration checkers, compositions,
//! replacements and homology. Reports go to stdout as canonical JSON.
//!
//! Exit status: 0 on success, 1 when a spot check or the suite finds a
//! violation, 2 for unreadable or malformed input, 3 for input that parses
//! but violates the axioms, 4 for a refused precondition (including
//! exceeded caps), 5 for an internal invariant failure.

mod commands;
mod examples;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use fibcat_core::error::exit;
use fibcat_core::io::{to_canonical_json, ReportDocument};

use commands::{DocKind, Outcome};

#[derive(Parser)]
#[command(
    name = "fibcat",
    version,
    about = "Finite-category fibration workbench"
)]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Include wall-clock time in the report (breaks byte-for-byte
    /// reproducibility).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every fibration class of a functor, with witnesses.
    Classify {
        #[arg(long)]
        functor: PathBuf,
        /// Also demand acyclic factorization and comma categories up to
        /// this homology degree.
        #[arg(long)]
        certify_dim: Option<usize>,
    },
    /// Compose two correspondences or profunctors and cross-check the other
    /// composition routes.
    Compose {
        #[arg(long, value_enum)]
        mode: ComposeMode,
        first: PathBuf,
        second: PathBuf,
        /// Write the composite document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All six conversions between correspondences, profunctors and
    /// two-sided discrete fibrations, starting from a correspondence.
    Roundtrip { correspondence: PathBuf },
    /// Whether a functor is final.
    Final {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        certify_dim: Option<usize>,
    },
    /// Whether a functor is initial.
    Initial {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        certify_dim: Option<usize>,
    },
    /// The free (co)Cartesian fibration or left/right fibration on a functor.
    Replace {
        #[arg(long, value_enum)]
        kind: ReplaceKind,
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The pushforward of `ζ: Z → E` along an exponentiable `π: E → K`.
    Pushforward {
        /// The functor `π`.
        #[arg(long)]
        fibration: PathBuf,
        /// The functor `ζ`.
        #[arg(long)]
        over: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral homology of the nerve of a category.
    Homology {
        category: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
    },
    /// Run the randomized property suite.
    Suite {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        size: usize,
        /// Directory for failure artifacts.
        #[arg(long, default_value = "fibcat-artifacts")]
        artifacts: PathBuf,
    },
    /// Parse and validate a document.
    Validate {
        #[arg(long, value_enum)]
        kind: ValidateKind,
        document: PathBuf,
    },
    /// Print a bundled example document.
    Example {
        /// Example name; omit to list all.
        name: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ComposeMode {
    Corr,
    Prof,
    Bifib,
}

impl ComposeMode {
    pub fn name(self) -> &'static str {
        match self {
            ComposeMode::Corr => "corr",
            ComposeMode::Prof => "prof",
            ComposeMode::Bifib => "bifib",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ReplaceKind {
    Cocart,
    Cart,
    Lfib,
    Rfib,
}

impl ReplaceKind {
    pub fn name(self) -> &'static str {
        match self {
            ReplaceKind::Cocart => "cocart",
            ReplaceKind::Cart => "cart",
            ReplaceKind::Lfib => "lfib",
            ReplaceKind::Rfib => "rfib",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ValidateKind {
    Category,
    Functor,
    Profunctor,
    Correspondence,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        CliError {
            code: exit::PARSE,
            message,
        }
    }

    pub fn internal(message: String) -> Self {
        CliError {
            code: exit::INTERNAL,
            message,
        }
    }
}

fn run(cli: Cli) -> Result<Option<Outcome>, CliError> {
    let outcome = match cli.command {
        Command::Classify {
            functor,
            certify_dim,
        } => commands::classify_cmd(&functor, certify_dim)?,
        Command::Compose {
            mode,
            first,
            second,
            ..
        } => commands::compose_cmd(mode, &first, &second)?,
        Command::Roundtrip { correspondence } => commands::roundtrip_cmd(&correspondence)?,
        Command::Final {
            functor,
            certify_dim,
        } => commands::finality_cmd(&functor, certify_dim, false)?,
        Command::Initial {
            functor,
            certify_dim,
        } => commands::finality_cmd(&functor, certify_dim, true)?,
        Command::Replace { kind, functor, .. } => commands::replace_cmd(kind, &functor)?,
        Command::Pushforward {
            fibration, over, ..
        } => commands::pushforward_cmd(&fibration, &over)?,
        Command::Homology { category, max_dim } => commands::homology_cmd(&category, max_dim)?,
        Command::Suite {
            seed,
            size,
            artifacts,
        } => commands::suite_cmd(seed, size, &artifacts)?,
        Command::Validate { kind, document } => {
            let kind = match kind {
                ValidateKind::Category => DocKind::Category,
                ValidateKind::Functor => DocKind::Functor,
                ValidateKind::Profunctor => DocKind::Profunctor,
                ValidateKind::Correspondence => DocKind::Correspondence,
            };
            commands::validate_cmd(kind, &document)?
        }
        Command::Example { name: None } => {
            for n in examples::NAMES {
                println!("{n}");
            }
            return Ok(None);
        }
        Command::Example { name: Some(name) } => {
            let doc = examples::document(&name)
                .ok_or_else(|| CliError::parse(format!("no example named `{name}`")))?;
            print!("{doc}");
            return Ok(None);
        }
    };
    Ok(Some(outcome))
}

fn certify_dim(command: &Command) -> Option<usize> {
    match command {
        Command::Classify { certify_dim, .. }
        | Command::Final { certify_dim, .. }
        | Command::Initial { certify_dim, .. } => *certify_dim,
        Command::Homology { max_dim, .. } => Some(*max_dim),
        _ => None,
    }
}

fn out_path(command: &Command) -> Option<PathBuf> {
    match command {
        Command::Compose { out, .. }
        | Command::Replace { out, .. }
        | Command::Pushforward { out, .. } => out.clone(),
        _ => None,
    }
}

/// The command line minus `--threads`, which cannot change a report.
fn echo(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if std::mem::take(&mut skip) || a.starts_with("--threads=") {
            continue;
        }
        if a == "--threads" {
            skip = true;
            continue;
        }
        out.push(a);
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("fibcat: error: {e}");
            return ExitCode::from(exit::INTERNAL as u8);
        }
    }
    let command = echo(std::env::args().skip(1));
    let timing = cli.timing;
    let dim = certify_dim(&cli.command);
    let out = out_path(&cli.command);
    let start = Instant::now();
    let outcome = match run(cli) {
        Ok(Some(o)) => o,
        Ok(None) => return ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fibcat: error: {}", e.message);
            return ExitCode::from(e.code as u8);
        }
    };
    let mut report = ReportDocument::new(command, dim, outcome.report);
    if timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    if let (Some(path), Some(doc)) = (out, &outcome.document) {
        if let Err(e) = std::fs::write(&path, to_canonical_json(doc)) {
            eprintln!("fibcat: error: {}: {e}", path.display());
            return ExitCode::from(exit::INTERNAL as u8);
        }
    }
    print!("{}", to_canonical_json(&report));
    match outcome.failed {
        Some(msg) => {
            eprintln!("fibcat: {msg}");
            ExitCode::FAILURE
        }
        None => ExitCode::SUCCESS,
    }
}
