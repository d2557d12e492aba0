//! File formats, reference tables and the command-line front end for
//! `tropwitt-core`.

pub mod commands;
pub mod config;
pub mod expfrac;
pub mod expr;
pub mod fixtures;
pub mod output;

pub use config::RunConfig;
pub use output::{render, Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Runs the configured subcommand and renders its report.
pub fn run(cfg: &RunConfig) -> Result<(String, bool), CliError> {
    let report = commands::execute(&cfg.command, cfg.seed)?;
    Ok((render(&report, cfg.format)?, report.passed))
}
