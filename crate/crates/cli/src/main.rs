//! `hiddenq`: batch front-end for the controllability, calibration,
//! tomography and quantum-volume analyses.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::InputError;

#[derive(Debug, Parser)]
#[command(name = "hiddenq", version, about = "Control/hidden qubit analysis toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every random stream of the run.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Universality and reachability claim battery, or the Lie closure of a
    /// user-supplied generator set.
    Controllability(RunArgs),
    /// Measurement reachability through the control qubit.
    Reachability(RunArgs),
    /// Calibrate the iSWAP and cPHASE gates on a simulated device.
    Tuneup(RunArgs),
    /// Tune up, then run first-round and self-consistent process tomography.
    Qpt(RunArgs),
    /// Quantum volume over grids and error models.
    QvMap(RunArgs),
    /// Route one random layer of pairs and emit the operation plan.
    RouteDemo(RunArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Controllability(a) => commands::controllability(a),
        Command::Reachability(a) => commands::reachability(a),
        Command::Tuneup(a) => commands::tuneup(a),
        Command::Qpt(a) => commands::qpt(a),
        Command::QvMap(a) => commands::qv_map(a),
        Command::RouteDemo(a) => commands::route_demo(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<InputError>() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
