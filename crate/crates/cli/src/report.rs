//! Command reports and their text and JSON renderings.

use ainf_core::bar::ComplexWindow;
use ainf_core::verify::{Check, Status, VerifyReport, WindowInfo};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub name: String,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    pub status: Status,
}

impl Row {
    pub fn value(name: impl Into<String>, value: impl ToString) -> Self {
        Row {
            name: name.into(),
            value: value.to_string(),
            expected: None,
            status: Status::Pass,
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }
}

impl From<Check> for Row {
    fn from(c: Check) -> Self {
        Row {
            name: c.name,
            value: c.observed,
            expected: Some(c.expected),
            status: c.status,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub label: String,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub window: WindowInfo,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub summary: Vec<String>,
    pub results: Vec<Row>,
    pub evidence: Vec<Evidence>,
    pub status: Status,
}

impl Report {
    pub fn new(command: impl Into<String>, window: ComplexWindow) -> Self {
        Report {
            command: command.into(),
            window: window.into(),
            summary: Vec::new(),
            results: Vec::new(),
            evidence: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn row(&mut self, r: Row) {
        self.status = self.status.combine(r.status);
        self.results.push(r);
    }

    pub fn summary(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    pub fn evidence(&mut self, label: impl Into<String>, data: impl Serialize) {
        let data = serde_json::to_value(data).expect("evidence serializes");
        self.evidence.push(Evidence {
            label: label.into(),
            data,
        });
    }

    pub fn absorb(&mut self, v: VerifyReport) {
        self.summary(v.claim);
        for c in v.checks {
            self.row(c.into());
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let w = &self.window;
        let mut out = format!(
            "{}  (max weight {}, max degree {}, reliable through n = {})\n",
            self.command, w.max_weight, w.max_degree, w.reliable_bound
        );
        for line in &self.summary {
            out.push_str(line);
            out.push('\n');
        }
        let width = self
            .results
            .iter()
            .map(|r| r.name.chars().count())
            .max()
            .unwrap_or(0);
        let col = |f: fn(&Row) -> Option<&String>| {
            self.results
                .iter()
                .filter_map(f)
                .map(|v| v.chars().count())
                .max()
        };
        let ew = col(|r| r.expected.as_ref()).unwrap_or(0);
        let ow = col(|r| r.expected.as_ref().map(|_| &r.value)).unwrap_or(0);
        for r in &self.results {
            let pad = " ".repeat(width - r.name.chars().count());
            match &r.expected {
                Some(e) => out.push_str(&format!(
                    "  {}{pad}  expected {e:<ew$}  observed {:<ow$}  {}\n",
                    r.name,
                    r.value,
                    status_word(r.status)
                )),
                None if r.status == Status::Pass => {
                    out.push_str(&format!("  {}{pad} = {}\n", r.name, r.value))
                }
                None => out.push_str(&format!(
                    "  {}{pad} = {}  {}\n",
                    r.name,
                    r.value,
                    status_word(r.status)
                )),
            }
        }
        for e in &self.evidence {
            out.push_str(&format!("  {}: {}\n", e.label, compact(&e.data)));
        }
        out.push_str(&format!("status: {}\n", status_word(self.status)));
        out
    }
}

pub fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Inconclusive => "INCONCLUSIVE",
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(Value::is_string) => items
            .iter()
            .filter_map(Value::as_str)
            .collect::<Vec<_>>()
            .join("; "),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_drives_exit_code() {
        let w = ComplexWindow::new(6, 4).unwrap();
        let mut r = Report::new("t", w);
        r.row(Row::value("a", 1));
        assert_eq!(r.exit_code(), 0);
        r.row(Row::value("b", "not stabilized").with_status(Status::Inconclusive));
        assert_eq!(r.exit_code(), 2);
        r.row(Row::value("c", 0).with_status(Status::Fail));
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_text().ends_with("status: FAIL\n"));
    }
}
