//! Configuration files, parameter sweeps and output formats for
//! `casimir-core`, plus the `casimir` command line.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{parse_config, Run, RunConfig};
pub use error::CliError;
