//! Declarative scenario files.

use std::path::Path;

use ctperiod::algebra::QuiverPresentation;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: Option<String>,
    pub field: FieldSpec,
    pub backend: BackendSpec,
    #[serde(default)]
    pub tilting: Option<TiltingSpec>,
    #[serde(default = "default_d")]
    pub d: usize,
    pub tasks: Vec<TaskSpec>,
    #[serde(default)]
    pub seed: u64,
}

fn default_d() -> usize {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BackendSpec {
    QuiverAlgebra { presentation: QuiverPresentation },
    PlaneCurve { factors: Vec<String> },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum TiltingKeyword {
    Bikr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TiltingSpec {
    Keyword(TiltingKeyword),
    List(Vec<SummandSpec>),
}

/// One summand of T.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SummandSpec {
    /// The regular module A.
    Regular,
    /// e_v A.
    Projective(usize),
    Simple(usize),
    /// e_v A / rad^loewy(e_v A).
    Truncated { vertex: usize, loewy: usize },
    Explicit { dim: usize, action: Vec<Vec<Vec<i64>>> },
    /// The factorization (g, f/g) with g the product of the listed factors.
    Mf(Vec<usize>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TaskSpec {
    #[serde(flatten)]
    pub kind: TaskKind,
    /// Payload keys that must match exactly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Map<String, Value>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum TaskKind {
    Bikr,
    StableEnd,
    Quiver,
    SelfInjective,
    Rigid,
    Lemma21,
    Twist,
    DetectPeriod {
        #[serde(default)]
        nmax: Option<usize>,
    },
    Tor {
        #[serde(default = "default_imax")]
        imax: usize,
    },
    Cy {
        #[serde(default = "default_s")]
        s: i64,
    },
    TwistedSyzygy,
    Resolve {
        x: String,
    },
    #[serde(rename = "resolution-2-10")]
    Resolution210 {
        #[serde(default)]
        summand: Option<usize>,
    },
    AlgebraIso {
        presentation: QuiverPresentation,
    },
}

fn default_imax() -> usize {
    6
}

fn default_s() -> i64 {
    -1
}

impl TaskKind {
    pub fn name(&self) -> String {
        match serde_json::to_value(self) {
            Ok(Value::Object(m)) => m.get("task").and_then(|v| v.as_str()).unwrap_or("?").to_string(),
            _ => "?".into(),
        }
    }
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, CliError> {
        let s: Scenario = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("scenario schema: line {} column {}: {e}", e.line(), e.column())))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !ctperiod::kernel::is_prime(self.field.p) {
            return Err(CliError::Input(format!("field.p: {} is not prime", self.field.p)));
        }
        if self.d == 0 {
            return Err(CliError::Input("d: must be at least 1".into()));
        }
        if self.tasks.is_empty() {
            return Err(CliError::Input("tasks: empty task list".into()));
        }
        match (&self.backend, &self.tilting) {
            (BackendSpec::QuiverAlgebra { .. }, Some(TiltingSpec::Keyword(TiltingKeyword::Bikr))) => {
                Err(CliError::Input("tilting: \"bikr\" needs a plane-curve backend".into()))
            }
            (BackendSpec::PlaneCurve { .. }, None) => Err(CliError::Input("tilting: required for a plane-curve backend".into())),
            (BackendSpec::PlaneCurve { .. }, Some(TiltingSpec::List(l))) => {
                match l.iter().position(|s| !matches!(s, SummandSpec::Mf(_))) {
                    Some(i) => Err(CliError::Input(format!("tilting[{i}]: plane-curve summands must be \"mf\""))),
                    None => Ok(()),
                }
            }
            (BackendSpec::QuiverAlgebra { .. }, Some(TiltingSpec::List(l))) => {
                match l.iter().position(|s| matches!(s, SummandSpec::Mf(_))) {
                    Some(i) => Err(CliError::Input(format!("tilting[{i}]: \"mf\" needs a plane-curve backend"))),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }

    /// SHA-256 of the canonical JSON form (sorted keys, seed included).
    pub fn hash(&self) -> String {
        let v = serde_json::to_value(self).expect("scenario serializes");
        let canon = serde_json::to_string(&v).expect("value serializes");
        hex::encode(Sha256::digest(canon.as_bytes()))
    }
}
