//! Verification harness for the `nullcone` library: parameter grids, seeded
//! property suites with JSON reports, and the dimension table.

pub mod dims;
pub mod params;
pub mod report;
pub mod suites;

use thiserror::Error;

pub use params::{Kind, Params};
pub use report::{Failure, SuiteReport};
pub use suites::{run_suite, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error in {source_name}: {message}")]
    Parse { source_name: String, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] nullcone::Error),
}

impl CliError {
    /// 2 for usage and parse errors, 1 for anything raised by the library.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io(_) => 2,
            CliError::Core(nullcone::Error::Parse { .. }) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parses JSON text, reporting the line and column of the first error.
pub fn parse_json<T: serde::de::DeserializeOwned>(source_name: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        source_name: source_name.to_string(),
        message: e.to_string(),
    })
}
