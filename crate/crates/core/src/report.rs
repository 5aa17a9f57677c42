//! Structured verification reports: one line per checked identity with
//! its name, maximum deviation and status, renderable as aligned text or
//! machine-readable JSON.

use serde::Serialize;
use std::fmt::Write as _;

/// Global tolerance for identity checks.
pub const TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Reported for context; never affects the overall verdict.
    Info,
    /// Not applicable to this graph; never affects the overall verdict.
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn check(&mut self, name: &str, max_deviation: f64) -> &mut Self {
        let status = if max_deviation <= TOLERANCE {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        self.checks.push(CheckResult {
            name: name.to_string(),
            max_deviation: Some(max_deviation),
            status,
            note: None,
        });
        self
    }

    pub fn check_with_note(&mut self, name: &str, max_deviation: f64, note: String) -> &mut Self {
        self.check(name, max_deviation);
        self.checks.last_mut().expect("just pushed").note = Some(note);
        self
    }

    pub fn info(&mut self, name: &str, max_deviation: f64, note: String) -> &mut Self {
        self.checks.push(CheckResult {
            name: name.to_string(),
            max_deviation: Some(max_deviation),
            status: CheckStatus::Info,
            note: Some(note),
        });
        self
    }

    pub fn skip(&mut self, name: &str, reason: String) -> &mut Self {
        self.checks.push(CheckResult {
            name: name.to_string(),
            max_deviation: None,
            status: CheckStatus::Skip,
            note: Some(reason),
        });
        self
    }

    pub fn extend(&mut self, other: Report) -> &mut Self {
        self.checks.extend(other.checks);
        self
    }

    /// True when no check failed (info and skip lines do not count).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// One aligned line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for check in &self.checks {
            let status = match check.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Info => "INFO",
                CheckStatus::Skip => "SKIP",
            };
            let deviation = match check.max_deviation {
                Some(dev) => format!("{dev:.16e}"),
                None => "-".to_string(),
            };
            let _ = write!(out, "{:<36} max_dev={:>24} {}", check.name, deviation, status);
            if let Some(note) = &check.note {
                let _ = write!(out, "  ({note})");
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_fail_threshold_is_the_global_tolerance() {
        let mut report = Report::default();
        report.check("tight", 5e-11).check("loose", 2e-10);
        assert_eq!(report.checks[0].status, CheckStatus::Pass);
        assert_eq!(report.checks[1].status, CheckStatus::Fail);
        assert!(!report.passed());
    }

    #[test]
    fn info_and_skip_do_not_fail_the_report() {
        let mut report = Report::default();
        report.info("context", 1.0, "expected to differ".into());
        report.skip("inapplicable", "no inputs".into());
        assert!(report.passed());
        let text = report.render_text();
        assert!(text.contains("INFO"));
        assert!(text.contains("SKIP"));
    }

    #[test]
    fn json_is_machine_readable() {
        let mut report = Report::default();
        report.check("identity", 0.0);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"status\":\"pass\""));
    }
}
