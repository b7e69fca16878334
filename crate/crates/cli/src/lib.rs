//! Batch front end: parse a versioned JSON run configuration, execute one
//! pipeline stage (or the whole suite) and emit per-check verdicts.
//!
//! Exit codes: `0` all checks pass, `1` some check failed, `2` the
//! configuration could not be parsed or validated, `3` an internal identity
//! failed (for example an inconsistent mirror verdict).

pub mod config;
pub mod error;
pub mod float;
pub mod records;
pub mod run;

pub use config::{Command, RunConfig};
pub use error::CliError;
pub use records::{Format, Record};
pub use run::{execute, run_text, Overrides};

/// Process exit status for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitStatus {
    Pass = 0,
    CheckFailed = 1,
    InvalidInput = 2,
    Internal = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}
