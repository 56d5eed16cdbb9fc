mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relaycover::scenario::ScenarioFile;
use relaycover::{CoverError, PlacementMode, Scheme};

/// Relay placement and mobile base station coverage planning.
#[derive(Debug, Parser)]
#[command(name = "relaycover", version, about)]
struct Cli {
    /// Scenario file (JSON). Omitted fields take the LTE defaults.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,

    /// Resource division scheme; overrides the scenario.
    #[arg(long, global = true, value_enum)]
    scheme: Option<SchemeArg>,

    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Td,
    Fd,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Td => Scheme::TimeDivision,
            SchemeArg::Fd => Scheme::FrequencyDivision,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PlacementArg {
    Anywhere,
    Exterior,
}

impl From<PlacementArg> for PlacementMode {
    fn from(p: PlacementArg) -> Self {
        match p {
            PlacementArg::Anywhere => PlacementMode::Anywhere,
            PlacementArg::Exterior => PlacementMode::ExteriorOrBoundary,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal hop lengths for a relay count, or a sweep over relay counts.
    Relays(RelaysArgs),
    /// Base-station position and covering radius for the polygon.
    Cover(CoverArgs),
    /// Base-station position plus a relay chain per destination.
    Plan(PlanArgs),
    /// Monte Carlo outage estimate for a relay chain.
    Simulate(SimulateArgs),
}

#[derive(Debug, Default, Args)]
struct RelaysArgs {
    /// Solve for exactly this many relays.
    #[arg(long, conflicts_with = "sweep")]
    relays: Option<usize>,
    /// One row per admissible relay count (the default).
    #[arg(long)]
    sweep: bool,
    /// Base-station power sweep `lo:hi:step` in dBm; relay and destination
    /// powers keep their offsets from the base station.
    #[arg(long, value_name = "LO:HI:STEP")]
    power_sweep: Option<String>,
}

#[derive(Debug, Args)]
struct CoverArgs {
    #[arg(long, value_enum)]
    placement: Option<PlacementArg>,
}

#[derive(Debug, Args)]
struct PlanArgs {
    #[arg(long, value_enum)]
    placement: Option<PlacementArg>,
    /// Also write the full plan document (JSON) here.
    #[arg(long)]
    plan_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 1_000_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Simulate the optimal chain with this many relays.
    #[arg(long, default_value_t = 1, conflicts_with = "distances")]
    relays: usize,
    /// Explicit hop lengths in meters, comma separated.
    #[arg(long, value_delimiter = ',')]
    distances: Option<Vec<f64>>,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Infeasible(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Output(_) => 1,
            Failure::Input(_) => 2,
            Failure::Infeasible(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Infeasible(m) | Failure::Output(m) => m,
        }
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        if e.is_infeasible() {
            Failure::Infeasible(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn load_scenario(cli: &Cli) -> Result<ScenarioFile, Failure> {
    let mut file = match &cli.scenario {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            ScenarioFile::from_json(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        None => ScenarioFile::default(),
    };
    if let Some(s) = cli.scheme {
        file.scheme = s.into();
    }
    Ok(file)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut file = load_scenario(&cli)?;
    let out = cli.out.as_deref();
    match cli
        .command
        .unwrap_or(Command::Relays(RelaysArgs::default()))
    {
        Command::Relays(a) => commands::relays(&file, a.relays, a.power_sweep.as_deref(), out),
        Command::Cover(a) => {
            if let Some(p) = a.placement {
                file.placement_mode = p.into();
            }
            commands::cover(&file, out)
        }
        Command::Plan(a) => {
            if let Some(p) = a.placement {
                file.placement_mode = p.into();
            }
            commands::plan(
                &file,
                matches!(a.format, Format::Json),
                a.plan_out.as_deref(),
                out,
            )
        }
        Command::Simulate(a) => {
            commands::simulate(&file, a.trials, a.seed, a.relays, a.distances, out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
