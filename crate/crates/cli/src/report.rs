//! Machine-readable verification reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// An asserted equality held.
    Pass,
    /// An asserted equality failed.
    Fail,
    /// A one-sided check found no witness; not a disproof.
    Unknown,
    /// A value logged without assertion.
    Recorded,
}

impl Status {
    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
            Status::Recorded => "RECORDED",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    pub recorded: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: Value,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    /// Sorts cases by name so the report does not depend on execution order.
    pub fn new(suite: impl Into<String>, config: Value, mut cases: Vec<Case>) -> Self {
        cases.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Unknown => summary.unknown += 1,
                Status::Recorded => summary.recorded += 1,
            }
        }
        Report {
            suite: suite.into(),
            config,
            cases,
            summary,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per non-passing case, then the counts.
    pub fn text_summary(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            if c.status != Status::Pass {
                let _ = writeln!(out, "{:8} {}", c.status.label(), c.name);
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed, {} unknown, {} recorded",
            self.suite, s.pass, s.fail, s.unknown, s.recorded
        );
        out
    }
}

/// Collects cases for one suite run.
#[derive(Debug, Default)]
pub struct Cases {
    prefix: String,
    pub cases: Vec<Case>,
}

impl Cases {
    pub fn new(prefix: impl Into<String>) -> Self {
        Cases {
            prefix: prefix.into(),
            cases: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl AsRef<str>, status: Status, details: Value) {
        let name = if self.prefix.is_empty() {
            name.as_ref().to_string()
        } else {
            format!("{}/{}", self.prefix, name.as_ref())
        };
        self.cases.push(Case { name, status, details });
    }

    pub fn check(&mut self, name: impl AsRef<str>, ok: bool, details: Value) {
        self.push(name, Status::from_check(ok), details);
    }

    pub fn record(&mut self, name: impl AsRef<str>, details: Value) {
        self.push(name, Status::Recorded, details);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_sort_and_count() {
        let mut c = Cases::new("s");
        c.check("b", false, json_null());
        c.check("a", true, json_null());
        c.record("c", json_null());
        c.push("d", Status::Unknown, json_null());
        let r = Report::new("s", json_null(), c.cases);
        let names: Vec<&str> = r.cases.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["s/a", "s/b", "s/c", "s/d"]);
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, unknown: 1, recorded: 1 });
        assert!(r.has_failures());
        assert!(r.to_json().contains("\"status\": \"UNKNOWN\""));
        assert!(r.text_summary().contains("FAIL     s/b"));
    }

    fn json_null() -> Value {
        Value::Null
    }
}
