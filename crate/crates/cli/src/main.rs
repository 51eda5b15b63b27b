//! `baire`: runs workbench experiments from flags or a TOML config.

mod commands;
mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Opts;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] baire_core::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "baire",
    version,
    about = "Finite extension strategies, games and diagonalizers"
)]
struct Cli {
    /// TOML file with experiment parameters; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a characteristic prefix.
    Chi(Opts),
    /// Apply a strategy to a prefix and meter it.
    Strategy(Opts),
    /// Meets/avoids verdict of a strategy on a language.
    Check(Opts),
    /// Play a game and emit the transcript as JSONL.
    Game(Opts),
    /// Build a diagonal language and check that it meets the family.
    Diag(Opts),
    /// Per-bit consistent-set sizes of the circuit diagonalizer, as CSV.
    CircuitDiag(Opts),
    /// Capital trace of a martingale along a language, as CSV.
    Martingale(Opts),
    /// Run an invariant suite.
    Verify(Opts),
    /// List configuration problems without running anything.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Subcommand to validate for; defaults to the config's `command`.
    #[arg(long = "for")]
    target: Option<String>,
    #[command(flatten)]
    opts: Opts,
}

fn write_to(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let file = match &cli.config {
        Some(path) => config::load(path).map_err(CliError::Config)?,
        None => Opts::default(),
    };
    let (name, flags, validate_only) = match cli.command {
        None => (None, Opts::default(), false),
        Some(Command::Validate(v)) => (v.target, v.opts, true),
        Some(c) => {
            let (name, opts) = match c {
                Command::Chi(o) => ("chi", o),
                Command::Strategy(o) => ("strategy", o),
                Command::Check(o) => ("check", o),
                Command::Game(o) => ("game", o),
                Command::Diag(o) => ("diag", o),
                Command::CircuitDiag(o) => ("circuit-diag", o),
                Command::Martingale(o) => ("martingale", o),
                Command::Verify(o) => ("verify", o),
                Command::Validate(_) => unreachable!("handled above"),
            };
            (Some(name.to_string()), opts, false)
        }
    };
    let opts = flags.over(file);
    let Some(command) = name.or_else(|| opts.command.clone()) else {
        return Err(CliError::Config(
            "command: no subcommand given on the command line or in the config".into(),
        ));
    };
    let diagnostics = config::validate(&command, &opts);
    if validate_only {
        for d in &diagnostics {
            println!("{d}");
        }
        if diagnostics.is_empty() {
            println!("ok");
            return Ok(true);
        }
        return Err(CliError::Config(format!(
            "{} problem(s)",
            diagnostics.len()
        )));
    }
    if !diagnostics.is_empty() {
        return Err(CliError::Config(diagnostics.join("; ")));
    }
    let outcome = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Config(format!("threads: {e}")))?
            .install(|| commands::run(&command, &opts))?,
        None => commands::run(&command, &opts)?,
    };
    match &opts.output {
        Some(path) => write_to(path, &outcome.output)?,
        None => print!("{}", outcome.output),
    }
    if let Some(prefix) = &outcome.result_prefix {
        match &opts.result_out {
            Some(path) => write_to(path, &format!("{prefix}\n"))?,
            None => eprintln!("result_prefix={prefix}"),
        }
    }
    eprint!("{}", outcome.notes);
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(true) => 0,
        Ok(false) => {
            eprintln!("property check failed");
            1
        }
        Err(e) => {
            eprintln!("baire: {e}");
            e.exit_code()
        }
    };
    std::io::stdout().flush().ok();
    ExitCode::from(code)
}
