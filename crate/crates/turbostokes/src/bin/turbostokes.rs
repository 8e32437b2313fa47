//! Thin command-line front end: every subcommand loads a TOML experiment
//! spec, applies flag overrides, and dispatches to the library harness.
//!
//! Exit codes: 0 pass/complete, 2 validation error, 3 harness failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use turbostokes::error::Error;
use turbostokes::experiment::{parse_spec, run_experiment, validate_spec, Preset};

#[derive(Parser)]
#[command(name = "turbostokes", version, about = "Stochastic Navier-Stokes lab on the torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Path to the TOML experiment spec.
    spec: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    paths: Option<usize>,
    /// Output directory for manifest, series and reports.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Accept parameter tuples outside the admissible window.
    #[arg(long)]
    allow_inadmissible: bool,
    /// Store a field snapshot every N steps.
    #[arg(long)]
    snapshot_every: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate an ensemble of trajectories.
    Simulate(RunArgs),
    /// A-priori energy bound and energy-identity ledger.
    EnergyCheck(RunArgs),
    /// Coupled scaling-invariance run.
    ScalingCheck(RunArgs),
    /// Empirical stochastic maximal regularity ratios.
    SmrEstimate(RunArgs),
    /// Serrin blow-up consistency over an ensemble.
    SerrinMonitor(RunArgs),
    /// Small-data survival ladder.
    SmallData(RunArgs),
    /// Exponent and criticality arithmetic only.
    Exponents(RunArgs),
    /// Synthesize a noise family and emit its manifest.
    NoiseInfo(RunArgs),
}

impl Command {
    fn preset(&self) -> Preset {
        match self {
            Command::Simulate(_) => Preset::Simulate,
            Command::EnergyCheck(_) => Preset::EnergyCheck,
            Command::ScalingCheck(_) => Preset::ScalingCheck,
            Command::SmrEstimate(_) => Preset::SmrEstimate,
            Command::SerrinMonitor(_) => Preset::SerrinMonitor,
            Command::SmallData(_) => Preset::SmallData,
            Command::Exponents(_) => Preset::Exponents,
            Command::NoiseInfo(_) => Preset::NoiseInfo,
        }
    }

    fn args(&self) -> &RunArgs {
        match self {
            Command::Simulate(a)
            | Command::EnergyCheck(a)
            | Command::ScalingCheck(a)
            | Command::SmrEstimate(a)
            | Command::SerrinMonitor(a)
            | Command::SmallData(a)
            | Command::Exponents(a)
            | Command::NoiseInfo(a) => a,
        }
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    let args = cli.command.args();
    let mut spec = parse_spec(&args.spec)?;
    spec.preset = cli.command.preset();
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(paths) = args.paths {
        spec.paths = paths;
    }
    if let Some(out) = &args.out {
        spec.out = Some(out.clone());
    }
    if args.allow_inadmissible {
        spec.allow_inadmissible = true;
    }
    if let Some(every) = args.snapshot_every {
        spec.solver.snapshot_every = every;
    }
    validate_spec(&spec)?;
    let outcome = run_experiment(&spec)?;
    println!("{}", serde_json::to_string_pretty(&outcome.summary).expect("json"));
    if !outcome.pass {
        eprintln!("harness reported failure");
    }
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e @ (Error::Config(_) | Error::Parse { .. } | Error::UnsupportedMode(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
