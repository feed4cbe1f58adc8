//! `adsorb` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or I/O
//! error, 3 a resource guard (lattice budget or oracle window) refused the
//! request.

pub mod commands;
pub mod record;
pub mod settings;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};

use adsorb_core::TimePoint;
use clap::{Args, Parser, Subcommand};

use crate::record::{write_records, OutputRecord};
use crate::settings::{CommonArgs, Level, Settings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guard(String),
    #[error("verification failed: {}", .0.join(", "))]
    VerifyFailed(Vec<String>),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Guard(_) => 3,
            _ => 2,
        }
    }
}

impl From<adsorb_core::Error> for CliError {
    fn from(e: adsorb_core::Error) -> Self {
        match e {
            adsorb_core::Error::ResourceGuard { .. } | adsorb_core::Error::WindowTooLarge(_) => {
                CliError::Guard(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "adsorb", version, about = "Random sequential adsorption with nearest-neighbour exclusion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Occupied-site density rho(t)
    Density(CommonArgs),
    /// Pair correlation C_s(t) for s = 0..=s-max
    Correlation(CommonArgs),
    /// gamma_s(t) = P(sites -1, 0 vacant, site s occupied) for even s
    Gamma(CommonArgs),
    /// Oracle window values beside the exact ones
    Oracle(CommonArgs),
    /// Run the identity suite and print a pass/fail table
    Verify(VerifyArgs),
    /// Density, correlations and gamma over a time grid, for plotting
    Sweep(CommonArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub level: Option<Level>,
    /// Shift the reference value of the named check (falsifiability test)
    #[arg(long, hide = true)]
    pub corrupt: Option<String>,
}

fn emit(st: &Settings, records: &[OutputRecord]) -> Result<(), CliError> {
    match &st.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
            write_records(BufWriter::new(file), st.format, records)
        }
        None => write_records(io::stdout().lock(), st.format, records),
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let one = [TimePoint::ONE];
    let (args, produce): (&CommonArgs, fn(&Settings) -> Result<Vec<OutputRecord>, CliError>) = match &cli.command {
        Command::Density(a) => (a, commands::density),
        Command::Correlation(a) => (a, commands::correlation),
        Command::Gamma(a) => (a, commands::gamma),
        Command::Oracle(a) => (a, commands::oracle),
        Command::Sweep(a) => (a, commands::sweep),
        Command::Verify(v) => return run_verify(v),
    };
    let grid;
    let default_t: &[TimePoint] = if matches!(cli.command, Command::Sweep(_)) {
        grid = adsorb_core::uniform_grid(20);
        &grid
    } else {
        &one
    };
    let st = Settings::resolve(args, None, default_t)?;
    emit(&st, &produce(&st)?)
}

fn run_verify(v: &VerifyArgs) -> Result<(), CliError> {
    let grid: Vec<TimePoint> = [0.25, 0.5, 0.75, 1.0].iter().map(|&t| TimePoint::new(t).unwrap()).collect();
    let st = Settings::resolve(&v.common, v.level, &grid)?;
    let checks = verify::run(&st, v.corrupt.as_deref())?;
    let mut stdout = io::stdout().lock();
    write!(stdout, "{}", verify::table(&checks))?;
    if st.out.is_some() {
        emit(&st, &verify::records(&checks))?;
    }
    let failed: Vec<String> = checks.iter().filter(|c| !c.pass()).map(|c| c.name.to_string()).collect();
    writeln!(stdout, "{} of {} checks passed", checks.len() - failed.len(), checks.len())?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(failed))
    }
}
