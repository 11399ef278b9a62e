//! Command-line front end for `lrdent-core`: sweeps, single-spec
//! computations, simulation and convergence reports as CSV or JSON.

pub mod args;
pub mod commands;
pub mod grammar;
pub mod table;

use std::fs::File;
use std::io::{BufWriter, Write};

use serde_json::{json, Value};

pub use args::Cli;
use table::Table;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] grammar::SpecError),
    #[error(transparent)]
    Core(#[from] lrdent_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed table: {0}")]
    Format(String),
    #[error("{failures} result cells failed; see the `failed:` markers in the output")]
    Partial { failures: usize },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Spec(_) => "invalid_spec",
            CliError::Core(lrdent_core::Error::Quadrature { .. }) => "quadrature",
            CliError::Core(_) => "computation",
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Csv(_) | CliError::Json(_) | CliError::Format(_) => "format",
            CliError::Partial { .. } => "partial_failure",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Spec(_) | CliError::Usage(_) => 2,
            CliError::Partial { .. } => 3,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

/// The echoed configuration: parsed arguments plus resolved tolerances.
fn config_echo(cli: &Cli, extra: Value) -> Result<Value, CliError> {
    let q = cli.common.quadrature()?;
    let mut echo = serde_json::to_value(cli)?;
    let obj = echo.as_object_mut().expect("Cli serializes to an object");
    obj.insert(
        "quadrature".into(),
        json!({
            "abs_tol": q.abs_tol,
            "rel_tol": q.rel_tol,
            "max_subdivisions": q.max_subdivisions,
            "origin_excision": q.origin_excision,
        }),
    );
    if !extra.is_null() {
        obj.insert("metadata".into(), extra);
    }
    Ok(echo)
}

/// Runs one command and writes its table. Failed cells are written first
/// and then reported as [`CliError::Partial`].
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.common.quadrature()?;
    let (table, metadata): (Table, Value) = commands::execute(&cli.command, &cfg)?;
    let config = config_echo(cli, metadata)?;
    let mut buf = Vec::new();
    table::write(&mut buf, cli.common.format, &config, &table)?;
    match &cli.common.output {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            f.write_all(&buf)?;
            f.flush()?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&buf)?;
            out.flush()?;
        }
    }
    match table.failures() {
        0 => Ok(()),
        failures => Err(CliError::Partial { failures }),
    }
}
