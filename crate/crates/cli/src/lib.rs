//! Command-line driver for `ddhilbert`: single solves, convergence studies
//! and spectral scans written as CSV/JSON, plus a quick self-test.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod selftest;

pub use config::{Example, Format, Solver, StudyConfig};
pub use error::{CliError, CliResult};
