//! Report records: one per check, `{check, anchor, verdict, witness?}`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::ExitStatus;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Records,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub check: String,
    pub anchor: &'static str,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip)]
    pub pass: bool,
}

impl Record {
    pub fn pass(check: impl Into<String>, anchor: &'static str) -> Self {
        Self { check: check.into(), anchor, verdict: "PASS".into(), witness: None, pass: true }
    }

    pub fn fail(check: impl Into<String>, anchor: &'static str, witness: impl Into<String>) -> Self {
        Self { check: check.into(), anchor, verdict: "FAIL".into(), witness: Some(witness.into()), pass: false }
    }

    /// Pass when `failure` is `None`.
    pub fn from_failure(check: impl Into<String>, anchor: &'static str, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(check, anchor),
            Some(w) => Self::fail(check, anchor, w),
        }
    }

    /// A passing record with a named verdict other than `PASS`.
    pub fn verdict(check: impl Into<String>, anchor: &'static str, verdict: &str) -> Self {
        Self { check: check.into(), anchor, verdict: verdict.into(), witness: None, pass: true }
    }
}

/// Sort by check name; this is the only ordering ever emitted.
pub fn sort(records: &mut [Record]) {
    records.sort_by(|a, b| a.check.cmp(&b.check));
}

pub fn status(records: &[Record]) -> ExitStatus {
    if records.iter().all(|r| r.pass) {
        ExitStatus::Pass
    } else {
        ExitStatus::CheckFailed
    }
}

pub fn render(records: &[Record], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Records => {
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
        }
        Format::Human => {
            let width = records.iter().map(|r| r.check.len()).max().unwrap_or(0);
            for r in records {
                let _ = write!(out, "{:<15} {:<width$}  [{}]", r.verdict, r.check, r.anchor);
                if let Some(w) = &r.witness {
                    let _ = write!(out, "\n    witness: {w}");
                }
                out.push('\n');
            }
            let passed = records.iter().filter(|r| r.pass).count();
            let _ = writeln!(out, "{passed}/{} checks passed", records.len());
        }
    }
    out
}
