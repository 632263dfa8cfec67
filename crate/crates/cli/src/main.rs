//! `toriclat`: command-line front end for the toriclat library.

mod commands;
mod tables;
mod verify;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toriclat::interleaver::ErrorModel;
use toriclat::{QRange, TorusLattice};

#[derive(Debug, Parser)]
#[command(name = "toriclat", version, about = "Toric quantum codes on odd q x q lattices")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Output format; each subcommand accepts a subset.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// RNG seed for `simulate`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Lattice size (odd, >= 5).
    #[arg(long, global = true)]
    pub q: Option<u32>,

    /// Range of lattice sizes, `start:stop[:step]`.
    #[arg(long = "q-range", global = true)]
    pub q_range: Option<QRange>,

    /// Decimal places for rates and gains.
    #[arg(long, global = true, default_value_t = 5)]
    pub precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Svg,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the codewords k·(1,g) and classify the code.
    Codewords,
    /// List every generating vector of the code.
    Gens,
    /// Minimum Mannheim distance.
    Distance {
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Tile the lattice with a polyomino fundamental region.
    Tessellate {
        /// `canonical`, `lee` or `file:<path>` (one "x y" pair per line).
        #[arg(long, default_value = "canonical")]
        shape: String,
    },
    /// Code parameters, rate and gain for one lattice size.
    Params,
    /// Rate and gain of the interleaved code against the baselines.
    Compare,
    /// Emit the interleaver permutation.
    Interleave,
    /// Seeded burst-channel simulation.
    Simulate {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value = "one-per-cell", value_parser = parse_model)]
        model: ErrorModel,
    },
    /// Regenerate a table: T1..T8 or all.
    Tables {
        #[arg(default_value = "all", value_parser = tables::TableId::parse)]
        which: tables::TableId,
    },
    /// Run the invariant sweeps.
    Verify {
        #[arg(long, value_enum, default_value_t = verify::Scope::All)]
        scope: verify::Scope,
        #[arg(long = "q-max", default_value_t = 101)]
        q_max: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Closed,
    Both,
}

fn parse_model(s: &str) -> Result<ErrorModel, String> {
    s.parse()
}

/// Failure classes and their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// A checked property did not hold (exit 1).
    Violation(String),
    /// Bad arguments (exit 2).
    Usage(String),
    /// Reading or writing failed (exit 3).
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Violation(m) => write!(f, "property violation: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<toriclat::Error> for CliError {
    fn from(e: toriclat::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

impl GlobalArgs {
    pub fn lattice(&self) -> CliResult<TorusLattice> {
        let q = self.q.ok_or_else(|| CliError::Usage("--q is required".into()))?;
        Ok(TorusLattice::new(q)?)
    }

    pub fn require_format(&self, allowed: &[Format]) -> CliResult<Format> {
        if allowed.contains(&self.format) {
            Ok(self.format)
        } else {
            let names: Vec<String> = allowed.iter().map(|f| f.to_string()).collect();
            Err(CliError::Usage(format!(
                "--format {} is not supported here (use one of: {})",
                self.format,
                names.join(", ")
            )))
        }
    }

    pub fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
            None => io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string())),
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let g = &cli.global;
    match cli.command {
        Command::Codewords => commands::codewords(g),
        Command::Gens => commands::gens(g),
        Command::Distance { method } => commands::distance(g, method),
        Command::Tessellate { shape } => commands::tessellate(g, &shape),
        Command::Params => commands::params(g),
        Command::Compare => commands::compare(g),
        Command::Interleave => commands::interleave(g),
        Command::Simulate { trials, model } => commands::simulate(g, trials, model),
        Command::Tables { which } => tables::cmd_tables(g, which),
        Command::Verify { scope, q_max } => verify::cmd_verify(g, scope, q_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("toriclat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
