//! Command-line workbench for `padic-opalg`.
//!
//! Every subcommand produces a [`Report`]: a JSON value, a text rendering
//! and a pass flag. The binary exits with 0 when the report passes, 1 when
//! a checked relation fails and 2 on input errors.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod output;

pub use args::Cli;
pub use config::{Format, RunConfig};
pub use error::{CliError, Result};
pub use output::Report;

pub fn run(cli: &Cli) -> Result<Report> {
    commands::dispatch(cli)
}
