//! Check results and report rendering shared by the suite and the CLI.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified fact: a stable id, the expected and computed normal forms,
/// and a human-readable provenance label describing which body of results
/// the check reproduces.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl CheckResult {
    pub fn compare<T: PartialEq + std::fmt::Display>(
        id: impl Into<String>,
        provenance: impl Into<String>,
        expected: &T,
        computed: &T,
    ) -> CheckResult {
        CheckResult {
            id: id.into(),
            status: if expected == computed {
                Status::Pass
            } else {
                Status::Fail
            },
            expected: expected.to_string(),
            computed: computed.to_string(),
            provenance: provenance.into(),
            duration_ms: None,
        }
    }

    pub fn assertion(
        id: impl Into<String>,
        provenance: impl Into<String>,
        expected: impl Into<String>,
        outcome: Result<String, String>,
    ) -> CheckResult {
        let (status, computed) = match outcome {
            Ok(c) => (Status::Pass, c),
            Err(e) => (Status::Fail, e),
        };
        CheckResult {
            id: id.into(),
            status,
            expected: expected.into(),
            computed,
            provenance: provenance.into(),
            duration_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Render checks as a JSON array (stable field order, no timestamps).
pub fn render_json(checks: &[CheckResult]) -> String {
    serde_json::to_string_pretty(checks).expect("serializable") + "\n"
}

/// Render checks as a Markdown table.
pub fn render_markdown(checks: &[CheckResult]) -> String {
    let mut out = String::from("| id | status | expected | computed | provenance |\n");
    out.push_str("|---|---|---|---|---|\n");
    for c in checks {
        let esc = |s: &str| s.replace('|', "\\|");
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |\n",
            esc(&c.id),
            match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            },
            esc(&c.expected),
            esc(&c.computed),
            esc(&c.provenance),
        ));
    }
    out
}
