//! Run reports and their JSON rendering.

use serde_json::{json, Value};

use orbitope::exactmath::{Matrix, Rational};
use orbitope::perm::{PermGroup, Permutation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(#[from] clap::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid environment: {0}")]
    Env(String),
    #[error(transparent)]
    Library(#[from] orbitope::Error),
}

impl CliError {
    /// 2 for unreadable input, 3 for failed preconditions, 4 for resource
    /// caps, 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        use orbitope::Error as E;
        match self {
            CliError::Usage(e) => e.exit_code(),
            CliError::Io { .. } | CliError::Parse(_) | CliError::Env(_) => 2,
            CliError::Library(e) => match e {
                E::Parse(_) => 2,
                E::ResourceCap(_) | E::DimensionTooLarge { .. } | E::OrderExceeded(_) => 4,
                E::Internal(_) | E::BoundViolated(_) => 1,
                _ => 3,
            },
        }
    }
}

/// How a result was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    /// Sampled points; `certified` when every generator also passed an
    /// exact symbolic check.
    MonteCarlo { seed: u64, samples: usize, certified: bool },
}

impl Mode {
    pub fn to_json(&self) -> Value {
        match self {
            Mode::Exact => json!({ "kind": "exact" }),
            Mode::MonteCarlo { seed, samples, certified } => json!({
                "kind": if *certified { "exact" } else { "probabilistic" },
                "method": "monte-carlo",
                "seed": seed,
                "samples": samples,
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: String,
    pub mode: Mode,
    pub result: Value,
    pub elapsed_ms: u128,
}

impl RunReport {
    /// Everything except the timing field; identical for identical inputs.
    pub fn payload(&self) -> Value {
        json!({
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "input_digest": self.input_digest,
            "mode": self.mode.to_json(),
            "result": self.result,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.payload();
        v["elapsed_ms"] = json!(self.elapsed_ms as u64);
        v
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize")
    }
}

pub fn rationals(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix(m: &Matrix<Rational>) -> Value {
    Value::Array((0..m.rows()).map(|i| rationals(m.row(i))).collect())
}

pub fn permutation(p: &Permutation) -> Value {
    json!(p.images())
}

/// Exact verification status of one generator.
pub fn status(verified: Option<bool>) -> Value {
    Value::String(
        match verified {
            Some(true) => "exact",
            Some(false) => "failed",
            None => "unverified",
        }
        .into(),
    )
}

/// Order, generators and per-generator verification status.
pub fn group(g: &PermGroup, verify: impl Fn(&Permutation) -> Option<bool>) -> Value {
    json!({
        "degree": g.degree(),
        "order": g.order().to_string(),
        "generators": g.generators().iter().map(permutation).collect::<Vec<_>>(),
        "verification": g.generators().iter().map(|p| status(verify(p))).collect::<Vec<_>>(),
    })
}
