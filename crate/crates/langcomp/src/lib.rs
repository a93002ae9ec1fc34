//! Command-line front end, parameter files, CSV/JSON output and parallel
//! drivers for [`langcomp_core`].

pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod parallel;
pub mod report;
pub mod reproduce;

pub use error::{CliError, Result};
