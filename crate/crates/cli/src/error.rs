use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unparsable or invalid configuration, unknown figure id.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numerical(_) => 2,
            _ => 1,
        }
    }
}

impl From<an_wiretap::Error> for CliError {
    fn from(e: an_wiretap::Error) -> Self {
        match e {
            an_wiretap::Error::InvalidConfig(m) => CliError::Config(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
