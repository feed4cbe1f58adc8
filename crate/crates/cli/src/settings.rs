//! Flag / config-file merging. A JSON config may set any flag; a flag given
//! on the command line (or through its environment variable) wins.

use std::path::{Path, PathBuf};

use adsorb_core::{Boundary, TimePoint};
use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::record::{Format, Source};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Times: a comma list (`0.1,0.5,1`) or an inclusive range `start:stop:step`
    #[arg(long)]
    pub t: Option<String>,
    #[arg(long, value_enum)]
    pub source: Option<Source>,
    /// Lattice sites per Monte Carlo replica
    #[arg(long)]
    pub sites: Option<usize>,
    #[arg(long)]
    pub replicas: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Oracle window radius
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub s_max: Option<u32>,
    /// Truncation tolerance for the correlation series
    #[arg(long)]
    pub tol: Option<f64>,
    /// Monte Carlo boundary: ring or free
    #[arg(long)]
    pub boundary: Option<Boundary>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write records here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest allowed sites * replicas
    #[arg(long)]
    pub budget: Option<u128>,
    #[arg(long, env = "ADSORB_THREADS")]
    pub threads: Option<usize>,
    /// JSON file with defaults for any of these flags
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum GridSpec {
    Text(String),
    Values(Vec<f64>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigFile {
    t: Option<GridSpec>,
    source: Option<Source>,
    sites: Option<usize>,
    replicas: Option<usize>,
    seed: Option<u64>,
    radius: Option<usize>,
    #[serde(alias = "s_max")]
    s_max: Option<u32>,
    tol: Option<f64>,
    boundary: Option<Boundary>,
    format: Option<Format>,
    out: Option<PathBuf>,
    budget: Option<u128>,
    threads: Option<usize>,
    level: Option<Level>,
}

/// Fully resolved settings.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub t: Vec<TimePoint>,
    pub source: Source,
    pub sites: usize,
    pub replicas: usize,
    pub seed: u64,
    pub radius: usize,
    pub s_max: u32,
    pub tol: f64,
    pub boundary: Boundary,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub budget: u128,
    pub threads: Option<usize>,
    pub level: Level,
}

impl Default for Settings {
    fn default() -> Self {
        let mc = adsorb_core::SimConfig::default();
        Settings {
            t: vec![TimePoint::ONE],
            source: Source::Exact,
            sites: mc.sites,
            replicas: mc.replicas,
            seed: mc.seed,
            radius: 4,
            s_max: 4,
            tol: 1e-15,
            boundary: mc.boundary,
            format: Format::Csv,
            out: None,
            budget: mc.budget,
            threads: None,
            level: Level::Quick,
        }
    }
}

impl Settings {
    /// `default_t` applies when neither the flags nor the config set a grid.
    pub fn resolve(args: &CommonArgs, level: Option<Level>, default_t: &[TimePoint]) -> Result<Settings, CliError> {
        let file = match &args.config {
            Some(path) => read_config(path)?,
            None => ConfigFile::default(),
        };
        let d = Settings::default();
        let t = match (&args.t, file.t) {
            (Some(text), _) => parse_grid(text)?,
            (None, Some(GridSpec::Text(text))) => parse_grid(&text)?,
            (None, Some(GridSpec::Values(values))) => to_times(values)?,
            (None, None) => default_t.to_vec(),
        };
        let settings = Settings {
            t,
            source: args.source.or(file.source).unwrap_or(d.source),
            sites: args.sites.or(file.sites).unwrap_or(d.sites),
            replicas: args.replicas.or(file.replicas).unwrap_or(d.replicas),
            seed: args.seed.or(file.seed).unwrap_or(d.seed),
            radius: args.radius.or(file.radius).unwrap_or(d.radius),
            s_max: args.s_max.or(file.s_max).unwrap_or(d.s_max),
            tol: args.tol.or(file.tol).unwrap_or(d.tol),
            boundary: args.boundary.or(file.boundary).unwrap_or(d.boundary),
            format: args.format.or(file.format).unwrap_or(d.format),
            out: args.out.clone().or(file.out),
            budget: args.budget.or(file.budget).unwrap_or(d.budget),
            threads: args.threads.or(file.threads),
            level: level.or(file.level).unwrap_or(d.level),
        };
        if !(settings.tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", settings.tol)));
        }
        if settings.radius == 0 {
            return Err(CliError::Usage("--radius must be positive".into()));
        }
        Ok(settings)
    }

    pub fn sim_config(&self) -> adsorb_core::SimConfig {
        adsorb_core::SimConfig {
            sites: self.sites,
            replicas: self.replicas,
            seed: self.seed,
            t_grid: self.t.clone(),
            s_max: self.s_max as usize,
            boundary: self.boundary,
            threads: self.threads,
            budget: self.budget,
        }
    }
}

fn read_config(path: &Path) -> Result<ConfigFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

fn to_times(values: Vec<f64>) -> Result<Vec<TimePoint>, CliError> {
    if values.is_empty() {
        return Err(CliError::Usage("empty time grid".into()));
    }
    values
        .into_iter()
        .map(|v| TimePoint::new(v).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

/// Parses `a,b,c` or `start:stop:step` (stop included when it lies on the
/// grid up to rounding).
pub fn parse_grid(text: &str) -> Result<Vec<TimePoint>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("bad time grid '{text}': {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [list] => list.split(',').map(num).collect::<Result<Vec<_>, _>>()?,
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || stop < start {
                return Err(bad("need step > 0 and stop >= start"));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            if n > 1_000_000 {
                return Err(bad("more than 10^6 points"));
            }
            (0..=n).map(|i| (start + i as f64 * step).min(stop)).collect()
        }
        _ => return Err(bad("expected a comma list or start:stop:step")),
    };
    to_times(values)
}
