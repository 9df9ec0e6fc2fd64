//! Configuration and output plumbing for the `arrival` command.

// `!(x > 0.0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod run;

pub use config::{ExperimentKind, RunConfig};
pub use error::CliError;
pub use run::{build_report, csv_text, random_packets, run, RunOutcome};
