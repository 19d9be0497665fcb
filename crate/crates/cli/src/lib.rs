//! Command-line front end: experiment files in, CSV tables out.

pub mod config;
pub mod error;
pub mod figures;
pub mod output;
pub mod runner;

pub use config::ExperimentConfig;
pub use error::{CliError, Result};
pub use figures::{Figure, FigureContext, FigureRegistry, Scale};
pub use output::Table;
