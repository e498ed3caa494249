//! Configuration, commands and output formatting behind the `hcpair` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use commands::{execute, CommandKind, Report};
pub use config::{OutputFormat, Overrides, RunConfig};
pub use error::CliError;
pub use table::{render, Metadata, ResultTable};

/// Environment variable capping the number of worker threads.
pub const WORKERS_ENV: &str = "HCPAIR_WORKERS";
