//! Case records and their text and JSON renderings.

use std::fmt::Display;

use serde::Serialize;

use crate::config::SuiteConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    /// Short description of the identity being checked.
    pub anchor: String,
}

impl Case {
    pub fn new(id: impl Into<String>, anchor: &str, ok: bool, expected: impl Display, actual: impl Display) -> Self {
        Case {
            id: id.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
            anchor: anchor.to_string(),
        }
    }

    /// Pass when the renderings agree.
    pub fn compare(id: impl Into<String>, anchor: &str, expected: impl Display, actual: impl Display) -> Self {
        let (e, a) = (expected.to_string(), actual.to_string());
        Case::new(id, anchor, e == a, e, a)
    }

    pub fn skip(id: impl Into<String>, anchor: &str, reason: &str) -> Self {
        Case {
            id: id.into(),
            status: Status::Skip,
            expected: String::new(),
            actual: reason.to_string(),
            anchor: anchor.to_string(),
        }
    }

    /// A failed case carrying an error message.
    pub fn error(id: impl Into<String>, anchor: &str, err: impl Display) -> Self {
        Case::new(id, anchor, false, "no error", format!("error: {}", err))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: SuiteConfig,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub wall_ms: u64,
}

impl Report {
    /// Sorts the cases by id and tallies them.
    pub fn new(suite: &str, config: SuiteConfig, mut cases: Vec<Case>, wall_ms: u64) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skip += 1,
            }
        }
        Report { suite: suite.to_string(), config, cases, summary, wall_ms }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            out.push_str(&format!("{} {}  [{}]", tag, c.id, c.anchor));
            if c.status != Status::Pass {
                out.push_str(&format!("  expected: {}  actual: {}", c.expected, c.actual));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed, {} skipped in {} ms\n",
            self.suite, self.summary.pass, self.summary.fail, self.summary.skip, self.wall_ms
        ));
        out
    }
}
