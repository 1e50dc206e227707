//! The versioned report written by every subcommand.
//!
//! A report is a single JSON object with a fixed field order.  Checks carry a
//! status: `asserted` checks decide the exit code, `probe` checks are
//! exploratory evidence and never do.  Nothing time- or host-dependent is
//! recorded, so identical configurations give byte-identical reports.

use serde::Serialize;
use serde_json::Value;

/// Schema identifier; bump on any incompatible change.
pub const SCHEMA: &str = "ecl-report/1";

/// Whether a check decides the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Asserted,
    Probe,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Asserted => "asserted",
            CheckStatus::Probe => "probe",
        }
    }
}

/// One checked identity or property.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub passed: bool,
    pub details: Value,
}

impl Check {
    pub fn asserted(name: impl Into<String>, passed: bool, details: Value) -> Check {
        Check {
            name: name.into(),
            status: CheckStatus::Asserted,
            passed,
            details,
        }
    }

    pub fn probe(name: impl Into<String>, passed: bool, details: Value) -> Check {
        Check {
            name: name.into(),
            status: CheckStatus::Probe,
            passed,
            details,
        }
    }
}

/// A plain table used for CSV output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// The report of one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub subcommand: String,
    /// The statement being checked.
    pub anchor: String,
    /// The parsed configuration, echoed verbatim.
    pub config: Value,
    /// Truncation orders, tolerances and similar metadata.
    pub truncation: Value,
    pub checks: Vec<Check>,
    /// Every asserted check passed.
    pub passed: bool,
    pub data: Value,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(subcommand: &str, anchor: &str, config: Value) -> Report {
        Report {
            schema: SCHEMA,
            subcommand: subcommand.into(),
            anchor: anchor.into(),
            config,
            truncation: Value::Object(Default::default()),
            checks: Vec::new(),
            passed: true,
            data: Value::Object(Default::default()),
            tables: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Sets the verdict from the asserted checks.
    pub fn finish(mut self) -> Report {
        self.passed = self.checks.iter().all(|c| c.status == CheckStatus::Probe || c.passed);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per check, then the verdict.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} — {}\n", self.subcommand, self.anchor);
        for c in &self.checks {
            let mark = match (c.status, c.passed) {
                (CheckStatus::Asserted, true) => "PASS ",
                (CheckStatus::Asserted, false) => "FAIL ",
                (CheckStatus::Probe, true) => "probe",
                (CheckStatus::Probe, false) => "probe!",
            };
            s.push_str(&format!("{mark:6} {}\n", c.name));
        }
        s.push_str(if self.passed {
            "verdict: pass\n"
        } else {
            "verdict: FAIL\n"
        });
        s
    }

    /// The check table followed by any subcommand-specific tables.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let checks = Table {
            title: "checks".into(),
            header: vec!["name".into(), "status".into(), "passed".into()],
            rows: self
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), c.status.label().into(), c.passed.to_string()])
                .collect(),
        };
        for (i, t) in self.tables.iter().chain(std::iter::once(&checks)).enumerate() {
            if i > 0 {
                s.push('\n');
            }
            s.push_str(&format!("# {}\n", t.title));
            s.push_str(&csv_row(&t.header));
            for r in &t.rows {
                s.push_str(&csv_row(r));
            }
        }
        s
    }
}

fn csv_field(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

fn csv_row(fields: &[String]) -> String {
    let mut s = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn probes_do_not_decide_the_verdict() {
        let mut r = Report::new("x", "y", json!({}));
        r.push(Check::asserted("a", true, Value::Null));
        r.push(Check::probe("b", false, Value::Null));
        assert!(r.finish().passed);
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(csv_row(&["a,b".into(), "c".into()]), "\"a,b\",c\n");
    }
}
