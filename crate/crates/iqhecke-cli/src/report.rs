//! Report envelope shared by every subcommand: versioned schema, config
//! echo, per-item results with their tolerances, and a summary. Reports
//! are deterministic for a given (config, seed); wall time goes to stderr
//! so two identical runs emit identical bytes.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

pub const SCHEMA_JSON: &str = "iqhecke-report/1";
pub const SCHEMA_CSV: &str = "iqhecke-csv/1";

#[derive(Debug, Serialize)]
pub struct ReportItem {
    pub name: String,
    /// Headline numeric: the measured error for checks, the quantity
    /// itself for informational rows.
    pub value: f64,
    /// Acceptance threshold for `value`; informational rows carry none.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub pass: bool,
}

impl ReportItem {
    /// A checked quantity: passes when `value <= tolerance`.
    pub fn check(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        ReportItem {
            name: name.into(),
            value,
            tolerance: Some(tolerance),
            detail: None,
            pass: value <= tolerance,
        }
    }

    /// An informational quantity with no gate.
    pub fn info(name: impl Into<String>, value: f64) -> Self {
        ReportItem {
            name: name.into(),
            value,
            tolerance: None,
            detail: None,
            pass: true,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn failed(mut self) -> Self {
        self.pass = false;
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    /// Largest checked value, i.e. the worst error among gated items.
    pub max_checked_value: f64,
}

#[derive(Debug, Serialize)]
pub struct ReportEnvelope {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub subcommand: &'static str,
    pub config: BTreeMap<String, String>,
    pub seed: u64,
    pub items: Vec<ReportItem>,
    pub summary: Summary,
}

impl ReportEnvelope {
    pub fn new(
        subcommand: &'static str,
        mut config: BTreeMap<String, String>,
        seed: u64,
        items: Vec<ReportItem>,
    ) -> Self {
        config.remove("seed");
        let passed = items.iter().filter(|i| i.pass).count();
        let failed = items.len() - passed;
        let max_checked_value = items
            .iter()
            .filter(|i| i.tolerance.is_some())
            .map(|i| i.value)
            .fold(0.0f64, f64::max);
        ReportEnvelope {
            schema: SCHEMA_JSON,
            tool_version: env!("CARGO_PKG_VERSION"),
            subcommand,
            config,
            seed,
            items,
            summary: Summary {
                passed,
                failed,
                max_checked_value,
            },
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The same envelope as CSV: schema comment, config comment, item
    /// rows, summary footer.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} {}\n", SCHEMA_CSV, self.subcommand));
        let cfg = self
            .config
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("# config {cfg} seed={}\n", self.seed));
        out.push_str("name,value,tolerance,pass,detail\n");
        for item in &self.items {
            out.push_str(&format!(
                "{},{:.17e},{},{},{}\n",
                item.name,
                item.value,
                item.tolerance
                    .map(|t| format!("{t:.3e}"))
                    .unwrap_or_default(),
                item.pass,
                item.detail.as_deref().unwrap_or(""),
            ));
        }
        out.push_str(&format!(
            "# summary passed={} failed={} max_checked_value={:.17e}\n",
            self.summary.passed, self.summary.failed, self.summary.max_checked_value
        ));
        out
    }
}

/// Write to the path, or stdout when no path is given.
pub fn write_output(out: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content)
                .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}
