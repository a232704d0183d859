//! Command-line workbench around `powcov-core`: descriptor parsing,
//! catalogs, a lattice cache, verification suites and catalog sweeps.

pub mod analysis;
pub mod cache;
pub mod catalog;
pub mod commands;
pub mod descriptor;
pub mod error;
pub mod sweep;
pub mod verify;

pub use descriptor::{parse_descriptor, ParseError};
pub use error::{CliError, Result};
