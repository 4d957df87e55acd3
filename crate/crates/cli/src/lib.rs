//! Command-line front end for `affprox`: JSON instance files, reports, a
//! seeded instance generator and an independent grid oracle.

pub mod commands;
pub mod error;
pub mod format;
pub mod generate;
pub mod oracle;
pub mod report;

pub use commands::{run, Cli, Command};
pub use error::CliError;
