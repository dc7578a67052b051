use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Envelope written for every subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub timing: Timing,
    /// No floating point touched `results`.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_seconds: f64,
    pub threads: usize,
}

impl Timing {
    pub fn new(elapsed: Duration, threads: usize) -> Self {
        Self { wall_seconds: elapsed.as_secs_f64(), threads }
    }
}

/// Whether the command verified what it was asked to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }
}

#[derive(Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub verdict: Verdict,
    /// Tabular side output (CSV) that goes to `--out` or stdout.
    pub table: Option<String>,
}
