//! Scenario runner: declarative scenario files in, verified JSON reports out.

pub mod report;
pub mod run;
pub mod scenario;
pub mod verify;

use thiserror::Error;

pub use report::{Report, Status, TaskReport};
pub use run::run_scenario;
pub use scenario::{Scenario, TaskKind, TaskSpec};
pub use verify::{verify_report, Check};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// A copy of `s` that runs only `kind`.
pub fn single_task(s: &Scenario, kind: TaskKind) -> Scenario {
    let mut out = s.clone();
    out.tasks = vec![TaskSpec { kind, expect: None }];
    out
}
