//! File formats, run configuration, verification suites and the command implementations
//! behind the `rsc` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod grid;
pub mod matrix;
pub mod random;
pub mod suites;

pub use commands::{run, Outcome};
pub use error::{exit, CliError};
