//! Reports: per-task status, payloads and certificates.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::scenario::Scenario;

pub const TOOL: &str = "ctperiod";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Ordered from best to worst.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    NotApplicable,
    Inconclusive,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Verified | Status::NotApplicable => 0,
            Status::Failed => 1,
            Status::Inconclusive => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::NotApplicable => "not-applicable",
            Status::Inconclusive => "inconclusive",
            Status::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TaskReport {
    pub task: String,
    pub status: Status,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Map<String, Value>>,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub scenario: Option<String>,
    pub scenario_hash: String,
    pub seed: u64,
    pub p: u32,
    pub status: Status,
    pub tasks: Vec<TaskReport>,
}

impl Report {
    pub fn new(s: &Scenario, seed: u64, tasks: Vec<TaskReport>) -> Report {
        let status = tasks.iter().map(|t| t.status).max().unwrap_or(Status::Verified);
        let mut hashed = s.clone();
        hashed.seed = seed;
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            scenario: s.name.clone(),
            scenario_hash: hashed.hash(),
            seed,
            p: s.field.p,
            status,
            tasks,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.scenario {
            out.push_str(&format!("scenario {n} (p = {}, seed {})\n", self.p, self.seed));
        }
        for t in &self.tasks {
            out.push_str(&format!("  {:<16} {:<15} {}\n", t.task, t.status.to_string(), t.summary));
        }
        out.push_str(&format!("overall: {}\n", self.status));
        out
    }
}
