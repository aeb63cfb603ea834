//! Executes the checks of a scenario and assembles the JSON report.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use super::checks::lookup;
use super::{Scenario, Tolerances, REPORT_SCHEMA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub detail: Value,
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub scenario: String,
    pub seed: u64,
    pub n: usize,
    pub r: usize,
    pub p: usize,
    pub tolerances: Tolerances,
    pub passed: bool,
    pub counts: Counts,
    pub checks: Vec<CheckReport>,
}

impl Report {
    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with every `elapsed_ms` removed.
    pub fn without_timings(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(checks) = v.get_mut("checks").and_then(Value::as_array_mut) {
            for c in checks {
                if let Some(o) = c.as_object_mut() {
                    o.remove("elapsed_ms");
                }
            }
        }
        v
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "scenario {:?} (seed {}): {} of {} checks passed\n",
            self.scenario, self.seed, self.counts.passed, self.counts.total
        );
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Error => "ERROR",
            };
            out.push_str(&format!("  {status:<5} {:<20} {:>9.1} ms", c.name, c.elapsed_ms));
            if let Some(e) = &c.error {
                out.push_str(&format!("  {e}"));
            }
            out.push('\n');
        }
        out
    }
}

fn run_one(s: &Scenario, name: &str, params: &Value) -> CheckReport {
    let start = Instant::now();
    let empty = Map::new();
    let params = params.as_object().unwrap_or(&empty);
    let result = match lookup(name) {
        Some(def) => (def.run)(s, params),
        None => Err(crate::Error::UnknownName(name.to_string())),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (status, error, detail) = match result {
        Ok(o) if o.passed => (CheckStatus::Pass, None, o.detail),
        Ok(o) => (CheckStatus::Fail, None, o.detail),
        Err(e) => (CheckStatus::Error, Some(e.to_string()), Value::Null),
    };
    CheckReport {
        name: name.to_string(),
        status,
        error,
        detail,
        elapsed_ms,
    }
}

/// Runs every requested check concurrently; the report lists them sorted
/// by name (request order breaks ties), so it is deterministic per seed.
pub fn run(s: &Scenario) -> Report {
    let mut checks: Vec<(usize, CheckReport)> = s
        .checks
        .par_iter()
        .enumerate()
        .map(|(k, c)| (k, run_one(s, &c.name, &c.params)))
        .collect();
    checks.sort_by(|a, b| a.1.name.cmp(&b.1.name).then(a.0.cmp(&b.0)));
    let checks: Vec<CheckReport> = checks.into_iter().map(|(_, c)| c).collect();
    let count = |st: CheckStatus| checks.iter().filter(|c| c.status == st).count();
    let counts = Counts {
        total: checks.len(),
        passed: count(CheckStatus::Pass),
        failed: count(CheckStatus::Fail),
        errors: count(CheckStatus::Error),
    };
    Report {
        schema: REPORT_SCHEMA,
        scenario: s.name.clone(),
        seed: s.seed,
        n: s.spec.n(),
        r: s.spec.poles.r(),
        p: s.spec.p(),
        tolerances: s.tolerances.clone(),
        passed: counts.passed == counts.total,
        counts,
        checks,
    }
}
