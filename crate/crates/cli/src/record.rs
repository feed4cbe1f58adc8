//! Output records and their CSV / JSON encodings.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Density,
    Correlation,
    Gamma,
    PPair,
    Identity,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Density => "density",
            Quantity::Correlation => "correlation",
            Quantity::Gamma => "gamma",
            Quantity::PPair => "p_pair",
            Quantity::Identity => "identity",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Exact,
    Mc,
    Oracle,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Exact => "exact",
            Source::Mc => "mc",
            Source::Oracle => "oracle",
        }
    }
}

/// One row of output. `stderr` is set exactly when `source` is `mc`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub quantity: Quantity,
    pub s: Option<u32>,
    pub t: f64,
    pub value: f64,
    pub stderr: Option<f64>,
    pub source: Source,
}

impl OutputRecord {
    pub fn exact(quantity: Quantity, s: Option<u32>, t: f64, value: f64) -> Self {
        OutputRecord {
            quantity,
            s,
            t,
            value,
            stderr: None,
            source: Source::Exact,
        }
    }

    pub fn oracle(quantity: Quantity, s: Option<u32>, t: f64, value: f64) -> Self {
        OutputRecord {
            source: Source::Oracle,
            ..Self::exact(quantity, s, t, value)
        }
    }

    pub fn mc(quantity: Quantity, s: Option<u32>, t: f64, estimate: adsorb_core::Estimate) -> Self {
        OutputRecord {
            quantity,
            s,
            t,
            value: estimate.mean,
            stderr: Some(estimate.stderr),
            source: Source::Mc,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

pub const CSV_HEADER: [&str; 6] = ["quantity", "s", "t", "value", "stderr", "source"];

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_csv<W: Write>(out: W, records: &[OutputRecord]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.quantity.as_str().to_string(),
            r.s.map(|s| s.to_string()).unwrap_or_default(),
            fmt_float(r.t),
            fmt_float(r.value),
            r.stderr.map(fmt_float).unwrap_or_default(),
            r.source.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(mut out: W, records: &[OutputRecord]) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, records)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_records<W: Write>(out: W, format: Format, records: &[OutputRecord]) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(out, records),
        Format::Json => write_json(out, records),
    }
}
