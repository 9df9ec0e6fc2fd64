use std::path::PathBuf;
use std::process::ExitCode;

use arrival_cli::config::parse_pairs;
use arrival_cli::{run, CliError, ExperimentKind, RunConfig};
use clap::{Args, Parser, Subcommand};

/// Arrival-time experiments on a 1-D lattice.
///
/// Values are resolved in order: built-in defaults for the experiment, the
/// config file, then flags. The exit status is 0 when every check in the
/// summary passes, 1 when one fails, and 2 on errors.
#[derive(Debug, Parser)]
#[command(name = "arrival", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Odd packet against a screen at the origin.
    Odd,
    /// Even packet against the same screen.
    Symmetric,
    /// State with pseudotime certainly in [theta1, theta2].
    ThetaStep,
    /// Time-shift laws of the pseudotime density.
    Covariance,
    /// Plain absorbing evolution of a packet.
    Evolve,
    /// Pseudotime and POVM densities of a packet.
    Arrival,
}

impl Command {
    fn kind(&self) -> ExperimentKind {
        match self {
            Command::Odd => ExperimentKind::Odd,
            Command::Symmetric => ExperimentKind::Symmetric,
            Command::ThetaStep => ExperimentKind::ThetaStep,
            Command::Covariance => ExperimentKind::Covariance,
            Command::Evolve => ExperimentKind::Evolve,
            Command::Arrival => ExperimentKind::Arrival,
        }
    }
}

#[derive(Debug, Args)]
struct Flags {
    /// Flat `key = value` file; keys match the long flag names.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    experiment: Option<String>,
    #[arg(long, global = true)]
    n: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x_min: Option<String>,
    #[arg(long, global = true)]
    dx: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta_min: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta_max: Option<String>,
    #[arg(long, global = true)]
    theta_samples: Option<String>,
    #[arg(long, global = true)]
    v0: Option<String>,
    #[arg(long, global = true)]
    half_width: Option<String>,
    #[arg(long, global = true)]
    dt: Option<String>,
    #[arg(long, global = true)]
    t_total: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Any other key, as KEY=VALUE; may be repeated.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE", allow_hyphen_values = true)]
    set: Vec<String>,
}

fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let f = cli.flags;
    let mut pairs = match &f.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            parse_pairs(&text)?
        }
        None => Vec::new(),
    };
    if let Some(cmd) = &cli.command {
        if let Some(named) = &f.experiment {
            if named != cmd.kind().name() {
                return Err(CliError::field(
                    "experiment",
                    format!("`--experiment {named}` contradicts subcommand `{}`", cmd.kind()),
                ));
            }
        }
        pairs.push(("experiment".into(), cmd.kind().name().into()));
    }
    let named = [
        ("experiment", f.experiment),
        ("out", f.out.map(|p| p.display().to_string())),
        ("n", f.n),
        ("x-min", f.x_min),
        ("dx", f.dx),
        ("theta-min", f.theta_min),
        ("theta-max", f.theta_max),
        ("theta-samples", f.theta_samples),
        ("v0", f.v0),
        ("half-width", f.half_width),
        ("dt", f.dt),
        ("t-total", f.t_total),
        ("seed", f.seed),
    ];
    for (key, value) in named {
        if let Some(v) = value {
            pairs.push((key.to_string(), v));
        }
    }
    for item in f.set {
        let (k, v) = item.split_once('=').ok_or_else(|| CliError::Syntax {
            line: 0,
            text: item.clone(),
        })?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    RunConfig::from_pairs(&pairs)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = resolve(cli).and_then(|c| run(&c));
    match outcome {
        Ok(outcome) => {
            print!("{}", outcome.report.summary());
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
