//! Batch front end for the `qcongruence` engine: plans (entry, instance)
//! jobs from flags or a TOML config, runs them on a worker pool and emits a
//! deterministically ordered report.

pub mod cache;
pub mod config;
pub mod report;
pub mod run;

pub use config::{Format, RunBlock, RunConfig};
pub use report::{Report, Row, RowParams, Summary};
pub use run::{conjectures_only, plan, run, Job};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// The acceptance ranges, as shipped in `configs/desk.toml`.
pub const DESK_CONFIG: &str = include_str!("../configs/desk.toml");
