//! Suite reports and their serialized forms.
//!
//! Reports are deterministic: checks are sorted by id, rationals are
//! rendered as `num/den` strings, and wall times are excluded from the
//! byte-for-byte comparison surface (the JSON emitter can omit them).

use serde::Serialize;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    /// Exact identity verified.
    Pass,
    /// Truncated-homology evidence agrees with the claimed equivalence;
    /// degrees beyond the truncation are unchecked by design.
    Consistent,
    /// The check expected a non-equivalence and found one.
    Refuted,
    /// Data emitted without a pass/fail judgement (conjecture scans).
    Reported,
    /// Budget overrun; the check was skipped, not failed.
    SkippedBudget,
    Fail,
}

impl CheckStatus {
    pub fn is_failure(self) -> bool {
        matches!(self, CheckStatus::Fail)
    }

    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Consistent => "consistent",
            CheckStatus::Refuted => "refuted",
            CheckStatus::Reported => "reported",
            CheckStatus::SkippedBudget => "skipped-budget",
            CheckStatus::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    /// The verified statement, in the tool's own statement-catalog wording.
    pub statement: String,
    pub status: CheckStatus,
    pub data: serde_json::Value,
    pub millis: u128,
}

impl CheckResult {
    pub fn new(
        id: impl Into<String>,
        statement: impl Into<String>,
        status: CheckStatus,
        data: serde_json::Value,
    ) -> Self {
        CheckResult {
            id: id.into(),
            statement: statement.into(),
            status,
            data,
            millis: 0,
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn any_failure(&self) -> bool {
        self.checks.iter().any(|c| c.status.is_failure())
    }

    pub fn counts(&self) -> Vec<(&'static str, usize)> {
        let mut out = Vec::new();
        for status in [
            CheckStatus::Pass,
            CheckStatus::Consistent,
            CheckStatus::Refuted,
            CheckStatus::Reported,
            CheckStatus::SkippedBudget,
            CheckStatus::Fail,
        ] {
            let n = self.checks.iter().filter(|c| c.status == status).count();
            if n > 0 {
                out.push((status.label(), n));
            }
        }
        out
    }

    pub fn to_json(&self, include_timing: bool) -> serde_json::Value {
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = serde_json::json!({
                    "id": c.id,
                    "statement": c.statement,
                    "status": c.status.label(),
                    "data": c.data,
                });
                if include_timing {
                    v["millis"] = serde_json::json!(c.millis);
                }
                v
            })
            .collect();
        serde_json::json!({
            "version": REPORT_SCHEMA_VERSION,
            "checks": checks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{:<14}] {:<44} {}\n",
                c.status.label(),
                c.id,
                c.statement
            ));
        }
        out.push_str("--\n");
        for (label, n) in self.counts() {
            out.push_str(&format!("{label}: {n}\n"));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,status,statement\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{}\n",
                c.id,
                c.status.label(),
                c.statement.replace(',', ";")
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Json,
    Text,
    Csv,
}

impl EmitFormat {
    pub fn parse(s: &str) -> Option<EmitFormat> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Some(EmitFormat::Json),
            "text" | "text-table" => Some(EmitFormat::Text),
            "csv" => Some(EmitFormat::Csv),
            _ => None,
        }
    }
}

pub fn emit(report: &SuiteReport, format: EmitFormat, include_timing: bool) -> String {
    match format {
        EmitFormat::Json => {
            serde_json::to_string_pretty(&report.to_json(include_timing)).expect("report is valid JSON")
        }
        EmitFormat::Text => report.to_text(),
        EmitFormat::Csv => report.to_csv(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json() {
        let report = SuiteReport::default();
        let json = report.to_json(false);
        assert_eq!(json["version"], 1);
        assert_eq!(json["checks"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn sorted_and_stable() {
        let mut report = SuiteReport::default();
        report.checks.push(CheckResult::new("b", "second", CheckStatus::Pass, serde_json::json!({})));
        report.checks.push(CheckResult::new("a", "first", CheckStatus::Fail, serde_json::json!({})));
        report.sort();
        assert_eq!(report.checks[0].id, "a");
        assert!(report.any_failure());
        let text = report.to_text();
        assert!(text.contains("fail: 1"));
        let csv = report.to_csv();
        assert!(csv.starts_with("id,status,statement\n"));
    }
}
