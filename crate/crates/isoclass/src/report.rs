//! Structured results for command-line runs: named pass/fail checks with
//! expected and actual values, rendered as an aligned text table or as one
//! JSON document.
//!
//! Stdout must be byte-identical across runs with equal arguments, so wall
//! time is carried on the report but never serialized or rendered; set
//! `ISOCLASS_TIMINGS=1` to have the front end print it to stderr instead.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
        })
    }
}

/// One named comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub expected: String,
    pub actual: String,
}

impl Check {
    /// Builds a check that passes exactly when the two values are equal.
    pub fn compare<T: fmt::Debug + PartialEq>(
        name: impl Into<String>,
        expected: &T,
        actual: &T,
    ) -> Check {
        Check {
            name: name.into(),
            status: if expected == actual { CheckStatus::Pass } else { CheckStatus::Fail },
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        }
    }

    /// Builds a check from a precomputed condition, with a free-form actual
    /// value.
    pub fn expect(
        name: impl Into<String>,
        passed: bool,
        expected: impl Into<String>,
        actual: impl Into<String>,
    ) -> Check {
        Check {
            name: name.into(),
            status: if passed { CheckStatus::Pass } else { CheckStatus::Fail },
            expected: expected.into(),
            actual: actual.into(),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// The outcome of one command: what ran, with which parameters, and every
/// check it performed.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Command-specific payload (tables, certificates, indexes).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    /// Captured for stderr timing output only; never part of stdout.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            data: None,
            elapsed: None,
        }
    }

    pub fn set_parameter(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.parameters.insert(key.into(), value.into());
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    /// One JSON document, pretty-printed with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }

    /// Aligned plain-text table (no color, stable widths).
    pub fn render(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (key, value) in &self.parameters {
            out.push_str(&format!("  {key}: {value}\n"));
        }
        let name_w = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let exp_w = self.checks.iter().map(|c| c.expected.len()).max().unwrap_or(8).max(8);
        out.push_str(&format!(
            "{:<name_w$}  {:<6}  {:<exp_w$}  {}\n",
            "check", "status", "expected", "actual"
        ));
        for check in &self.checks {
            out.push_str(&format!(
                "{:<name_w$}  {:<6}  {:<exp_w$}  {}\n",
                check.name, check.status, check.expected, check.actual
            ));
        }
        let passed = self.checks.iter().filter(|c| c.status == CheckStatus::Pass).count();
        out.push_str(&format!(
            "result: {} ({passed}/{} checks)\n",
            if self.passed() { "pass" } else { "FAIL" },
            self.checks.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut report = Report::new("verify");
        report.set_parameter("e", "3");
        report.set_parameter("suite", "lemma21");
        report.push(Check::compare("Z(G) size", &4, &4));
        report.push(Check::expect("exponent", false, "8", "16"));
        report
    }

    #[test]
    fn pass_requires_every_check() {
        let mut report = sample();
        assert!(!report.passed());
        report.checks.pop();
        assert!(report.passed());
        report.checks.clear();
        assert!(report.passed());
    }

    #[test]
    fn json_has_stable_shape_and_no_timing() {
        let mut report = sample();
        report.elapsed = Some(Duration::from_millis(123));
        let text = report.to_json();
        assert_eq!(text, report.to_json());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["command"], "verify");
        assert_eq!(value["parameters"]["e"], "3");
        assert_eq!(value["checks"][0]["status"], "pass");
        assert_eq!(value["checks"][1]["status"], "fail");
        assert!(value.get("elapsed").is_none());
        assert!(value.get("data").is_none());
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn rendering_is_aligned_and_colour_free() {
        let report = sample();
        let text = report.render();
        assert!(text.starts_with("command: verify\n"));
        assert!(text.contains("  e: 3\n"));
        assert!(text.contains("Z(G) size"));
        assert!(text.ends_with("result: FAIL (1/2 checks)\n"));
        assert!(!text.contains('\u{1b}'), "no escape sequences");
        let header_col = text.lines().nth(3).unwrap().find("status").unwrap();
        let row_col = text.lines().nth(4).unwrap().find("pass").unwrap();
        assert_eq!(header_col, row_col);
    }

    #[test]
    fn data_payload_round_trips() {
        let mut report = Report::new("maps");
        report.data = Some(serde_json::json!({ "classes": [ { "genus": 1 } ] }));
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(value["data"]["classes"][0]["genus"], 1);
    }
}
