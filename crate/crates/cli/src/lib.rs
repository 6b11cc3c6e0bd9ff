//! Workspace files and the `qlogic` command line.
//!
//! A workspace is one JSON file holding named lattices, subspaces, observables, graphs,
//! words and filters that reference each other. [`workspace::load`] parses and validates
//! it; [`commands::run`] executes a command line against it.

pub mod commands;
pub mod error;
pub mod schema;
pub mod workspace;

pub use commands::{run, run_with_env};
pub use error::{CliError, CliResult};
