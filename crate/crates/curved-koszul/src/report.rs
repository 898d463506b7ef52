//! Check reports: a deterministic list of pass/fail/skip records with a
//! human-readable table and a machine-readable JSON form. Timing is shown on
//! stdout only, never serialized, so report files are byte-identical across
//! runs for the same input and parameters.

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub document: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub all_pass: bool,
}

impl Report {
    pub fn new(command: &str, document: &str) -> Self {
        Report {
            command: command.into(),
            document: document.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            all_pass: true,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn push(&mut self, id: impl Into<String>, pass: bool, detail: impl Into<String>) {
        let status = if pass { Status::Pass } else { Status::Fail };
        if !pass {
            self.all_pass = false;
        }
        self.checks.push(CheckRecord { id: id.into(), status, detail: detail.into() });
    }

    pub fn skip(&mut self, id: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckRecord { id: id.into(), status: Status::Skipped, detail: detail.into() });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain text table; wall time is passed in by the caller and not stored.
    pub fn render_table(&self, wall: Option<std::time::Duration>) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}  document: {}\n", self.command, self.document));
        if !self.parameters.is_empty() {
            let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("parameters: {}\n", params.join(" ")));
        }
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(8).max(8);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            if c.detail.is_empty() {
                out.push_str(&format!("  {:width$}  {}\n", c.id, status, width = width));
            } else {
                out.push_str(&format!("  {:width$}  {}  {}\n", c.id, status, c.detail, width = width));
            }
        }
        out.push_str(&format!(
            "result: {}",
            if self.all_pass { "all checks pass" } else { "FAILURES present" }
        ));
        if let Some(w) = wall {
            out.push_str(&format!("  ({} ms)", w.as_millis()));
        }
        out.push('\n');
        out
    }
}
