//! Batch front end for `clonot-core`: relation checks, optimal-fidelity
//! reproduction, equivalence checks, parameter sweeps and conservation
//! ledgers, reported as CSV or JSON rows.

pub mod config;
pub mod report;
pub mod runner;

pub use config::{Cli, CliCommand, Command, Format, IndexRange, RunConfig, UsageError};
pub use report::{Report, Row};
pub use runner::run;
