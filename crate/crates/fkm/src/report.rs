//! Check reports shared by the pipeline commands and the command line.
//! JSON output is byte-stable for a fixed seed: field order is fixed by the
//! struct definitions and wall-clock timing never enters the serialized
//! form, only the text rendering.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        pass: bool,
    ) -> Self {
        CheckResult {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
            pass,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, config: RunConfig) -> Self {
        Report { command: command.into(), config, checks: Vec::new(), pass: true }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        pass: bool,
    ) {
        self.push(CheckResult::new(name, expected, computed, pass));
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// All fields quoted, quotes doubled; one row per check.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("\"name\",\"expected\",\"computed\",\"pass\"\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_quote(&c.name),
                csv_quote(&c.expected),
                csv_quote(&c.computed),
                csv_quote(if c.pass { "true" } else { "false" }),
            ));
        }
        out
    }

    pub fn to_text(&self, elapsed: Option<std::time::Duration>) -> String {
        let mut out = format!("{}\n", self.command);
        let name_w = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(4)
            .max(4);
        for c in &self.checks {
            out.push_str(&format!(
                "  {:<5} {:<name_w$}  expected {}  got {}\n",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.expected,
                c.computed,
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&format!(
            "{}: {} checks, {} failed",
            if self.pass { "pass" } else { "FAIL" },
            self.checks.len(),
            failed,
        ));
        if let Some(d) = elapsed {
            out.push_str(&format!(" ({:.2?})", d));
        }
        out.push('\n');
        out
    }
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

/// Fixed-precision rendering for floats that appear in reports; keeps JSON
/// output identical across runs with the same seed.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.9e}")
}
