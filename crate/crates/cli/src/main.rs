mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fibercheck::scenario::Scenario;
use fibercheck::Budget;

#[derive(Parser, Debug)]
#[command(name = "fibercheck", version, about = "Exact checks for finite-group bundles on curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario file (TOML).
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,

    /// Worker threads for partitioned enumerations. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Work limit for enumerations; overrides the scenario's `[budget]`.
    #[arg(long, global = true)]
    budget: Option<u128>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write `<command>.<ext>` and `metadata.json` here instead of printing to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// H²(W, T) with a basis of factor sets.
    H2,
    /// Every extension class with a carrier group.
    Extensions,
    /// Hom(π, W) counted by enumeration and by the character formula.
    Homs,
    /// Schreier data of the selected cover.
    Cover,
    /// Invariant bundles on the cover and the coset of each class.
    Invariants,
    /// Brute-force check of the fiber over the selected cover.
    Fiber,
    /// Deck-group orbits against fibers of the bundle map.
    Orbit,
    /// The dihedral suite.
    Dihedral,
    /// The Weyl suite.
    Weyl,
    /// The full acceptance matrix.
    VerifyAll,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::H2 => "h2",
            Command::Extensions => "extensions",
            Command::Homs => "homs",
            Command::Cover => "cover",
            Command::Invariants => "invariants",
            Command::Fiber => "fiber",
            Command::Orbit => "orbit",
            Command::Dihedral => "dihedral",
            Command::Weyl => "weyl",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug)]
pub enum CliError {
    Core(fibercheck::Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<fibercheck::Error> for CliError {
    fn from(e: fibercheck::Error) -> CliError {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(fibercheck::Error::Budget { .. }) => 3,
            _ => 2,
        }
    }
}

/// Run settings shared by every subcommand.
pub struct Settings {
    pub workers: usize,
    pub budget: Budget,
}

fn load_scenario(path: Option<&PathBuf>) -> Result<Option<Scenario>, CliError> {
    let Some(path) = path else { return Ok(None) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(Some(Scenario::from_toml_str(&text)?))
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let start = Instant::now();
    let scenario = load_scenario(cli.scenario.as_ref())?;
    let budget = match (cli.budget, scenario.as_ref().and_then(|s| s.budget)) {
        (Some(b), _) => Budget::new(b),
        (None, Some(b)) => b,
        (None, None) => Budget::default(),
    };
    let settings = Settings {
        workers: cli.workers.max(1),
        budget,
    };
    let need = || {
        scenario
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("`{}` needs --scenario", cli.command.name())))
    };
    let report = match cli.command {
        Command::H2 => commands::h2(need()?, &settings)?,
        Command::Extensions => commands::extensions(need()?, &settings)?,
        Command::Homs => commands::homs(need()?, &settings)?,
        Command::Cover => commands::cover(need()?, &settings)?,
        Command::Invariants => commands::invariants(need()?, &settings)?,
        Command::Fiber => commands::fiber(need()?, &settings)?,
        Command::Orbit => commands::orbit(need()?, &settings)?,
        Command::Dihedral => commands::dihedral(need()?, &settings)?,
        Command::Weyl => commands::weyl(need()?, &settings)?,
        Command::VerifyAll => commands::verify_all(&settings)?,
    };
    let body = output::render(&report, cli.format)?;
    match &cli.out {
        None => print!("{body}"),
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let file = dir.join(format!("{}.{}", cli.command.name(), output::extension(cli.format)));
            std::fs::write(file, body)?;
            let meta = output::metadata(
                cli.command.name(),
                cli.scenario.as_deref(),
                &settings,
                report.verdict,
                start.elapsed(),
            );
            std::fs::write(dir.join("metadata.json"), meta)?;
        }
    }
    Ok(report.verdict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("fibercheck: {}: verdict failed", cli.command.name());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("fibercheck: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
