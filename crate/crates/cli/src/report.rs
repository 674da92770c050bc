use serde::Serialize;

use schwarzian_core::check::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: String,
    pub check: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub paper_anchor: String,
}

impl CheckReport {
    pub fn from_check(suite: &str, c: Check) -> Self {
        let status = match (c.compared, c.passed) {
            (false, _) => Status::Skip,
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
        };
        CheckReport {
            suite: suite.to_string(),
            check: c.name,
            status,
            expected: c.expected,
            actual: c.actual,
            paper_anchor: c.anchor,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

/// Render reports; json is a single array, text one aligned line per check.
pub fn emit_report(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let suite_w = reports.iter().map(|r| r.suite.chars().count()).max().unwrap_or(0);
            let check_w = reports.iter().map(|r| r.check.chars().count()).max().unwrap_or(0);
            let mut out = String::new();
            for r in reports {
                let mut line = format!(
                    "{}  {:<sw$}  {:<cw$}  [{}]",
                    r.status.label(),
                    r.suite,
                    r.check,
                    r.paper_anchor,
                    sw = suite_w,
                    cw = check_w
                );
                match r.status {
                    Status::Pass => line.push_str(&format!("  {}", r.actual)),
                    Status::Skip => line.push_str(&format!("  {} ({})", r.actual, r.expected)),
                    Status::Fail => line.push_str(&format!("  expected: {}  actual: {}", r.expected, r.actual)),
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
            out
        }
    }
}
