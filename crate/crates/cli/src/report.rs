//! Serializable report types shared by the subcommands.

use searchtime::{RuntimeEstimate, TrialStats};
use serde::{Deserialize, Serialize};

/// A (lower, mean, upper) analytical estimate; point estimates have all three
/// equal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triple {
    pub lower: f64,
    pub mean: f64,
    pub upper: f64,
}

impl From<RuntimeEstimate> for Triple {
    fn from(e: RuntimeEstimate) -> Self {
        Self { lower: e.lower, mean: e.mean, upper: e.upper }
    }
}

/// One table entry: analytical estimate, empirical Monte Carlo average, and
/// the relative error in percent. Blank cells (goal existence too unlikely
/// for conditioned statistics) carry no values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    /// Row parameter: goal level for sgl/bg tables, the Gaussian peak for mgl.
    pub row: u32,
    /// Column parameter: goal probability, or the Gaussian spread.
    pub col: f64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytical: Option<Triple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_pct: Option<f64>,
    pub blank: bool,
}

impl TableCell {
    pub fn error_pct(analytical: f64, empirical: f64) -> Option<f64> {
        (analytical > 0.0).then(|| 100.0 * (empirical - analytical).abs() / analytical)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    pub trials: u64,
    pub version: String,
}

impl Meta {
    pub fn new(seed: u64, trials: u64) -> Self {
        Self { seed, trials, version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub params: TableParams,
    pub cells: Vec<TableCell>,
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableParams {
    pub which: String,
    pub depth: u32,
    pub branching: u64,
    /// Column headers for the row/col fields of the cells.
    pub row_param: String,
    pub col_param: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStatsReport {
    pub trials_total: u64,
    pub trials_kept: u64,
    pub mean: f64,
    pub stderr: f64,
    pub discarded_no_goal: u64,
}

impl From<TrialStats> for TrialStatsReport {
    fn from(s: TrialStats) -> Self {
        Self {
            trials_total: s.trials_total,
            trials_kept: s.trials_kept,
            mean: s.mean,
            stderr: s.stderr,
            discarded_no_goal: s.discarded_no_goal,
        }
    }
}

/// Float formatting for CSV: plain decimal, enough digits to round-trip the
/// reference values, no trailing-zero noise beyond 6 decimals.
pub fn fmt_f64(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{x:.1}")
    } else {
        let s = format!("{x:.6}");
        // Values smaller than 1e-6 would print as zero; fall back to exp form.
        if s.trim_start_matches(['-', '0', '.']).is_empty() && x != 0.0 {
            format!("{x:e}")
        } else {
            s
        }
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}
