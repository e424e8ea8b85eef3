//! Deterministic experiment reports: fixed-order JSON and CSV artifacts.
//! Identical configuration and seed reproduce the files byte for byte, so
//! wall-clock data stays out of the canonical payload (timings are printed
//! to the console only).

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::Result;

/// One verification row: a stable check id, the measured value, the bound it
/// is compared against, and the direction of the comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub detail: String,
    pub measured: f64,
    pub bound: f64,
    /// "<=", ">=", or "logged" (no assertion, value recorded).
    pub relation: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub all_passed: bool,
}

impl ExperimentReport {
    pub fn new(experiment: &str, seed: u64) -> Self {
        Self {
            schema_version: 1,
            experiment: experiment.into(),
            seed,
            checks: Vec::new(),
            all_passed: true,
        }
    }

    pub fn push_le(&mut self, id: &str, detail: &str, measured: f64, bound: f64) -> bool {
        let pass = measured <= bound && measured.is_finite();
        self.push(CheckRecord {
            id: id.into(),
            detail: detail.into(),
            measured,
            bound,
            relation: "<=".into(),
            pass,
        });
        pass
    }

    pub fn push_ge(&mut self, id: &str, detail: &str, measured: f64, bound: f64) -> bool {
        let pass = measured >= bound && measured.is_finite();
        self.push(CheckRecord {
            id: id.into(),
            detail: detail.into(),
            measured,
            bound,
            relation: ">=".into(),
            pass,
        });
        pass
    }

    pub fn push_flag(&mut self, id: &str, detail: &str, pass: bool) {
        self.push(CheckRecord {
            id: id.into(),
            detail: detail.into(),
            measured: if pass { 1.0 } else { 0.0 },
            bound: 1.0,
            relation: "flag".into(),
            pass,
        });
    }

    /// Record a measured constant without asserting a bound.
    pub fn log_value(&mut self, id: &str, detail: &str, measured: f64) {
        self.push(CheckRecord {
            id: id.into(),
            detail: detail.into(),
            measured,
            bound: f64::NAN,
            relation: "logged".into(),
            pass: measured.is_finite(),
        });
    }

    fn push(&mut self, rec: CheckRecord) {
        self.all_passed &= rec.pass;
        self.checks.push(rec);
    }

    pub fn merge(&mut self, other: ExperimentReport) {
        for c in other.checks {
            self.all_passed &= c.pass;
            self.checks.push(c);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// `check_id,detail,measured,bound,relation,pass` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,detail,measured,bound,relation,pass\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                c.id,
                csv_quote(&c.detail),
                c.measured,
                c.bound,
                c.relation,
                c.pass
            );
        }
        out
    }

    pub fn print_console(&self) {
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            if c.relation == "logged" {
                println!("[{status}] {:<42} measured {:>12.6e}  ({})", c.id, c.measured, c.detail);
            } else {
                println!(
                    "[{status}] {:<42} measured {:>12.6e} {} {:>12.6e}  ({})",
                    c.id, c.measured, c.relation, c.bound, c.detail
                );
            }
        }
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Time-series CSV `t,name,value`.
#[derive(Debug, Clone, Default)]
pub struct SeriesWriter {
    rows: Vec<(f64, String, f64)>,
}

impl SeriesWriter {
    pub fn push(&mut self, t: f64, name: &str, value: f64) {
        self.rows.push((t, name.into(), value));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,name,value\n");
        for (t, name, v) in &self.rows {
            let _ = writeln!(out, "{t},{name},{v}");
        }
        out
    }
}

/// Block-norm CSV `t,j,block_norm`.
#[derive(Debug, Clone, Default)]
pub struct BlockNormWriter {
    rows: Vec<(f64, i32, f64)>,
}

impl BlockNormWriter {
    pub fn push(&mut self, t: f64, j: i32, value: f64) {
        self.rows.push((t, j, value));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,j,block_norm\n");
        for (t, j, v) in &self.rows {
            let _ = writeln!(out, "{t},{j},{v}");
        }
        out
    }
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, text)?;
    Ok(())
}
