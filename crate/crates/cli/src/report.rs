use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// How a run ended; the process exit code follows from it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Success,
    /// A negative answer that was computed and checked.
    Negative,
    /// A size guard or the time budget stopped the run.
    Limit,
    InputError,
    InternalError,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::InternalError => 1,
            Outcome::Negative => 2,
            Outcome::Limit => 3,
            Outcome::InputError => 4,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub verb: String,
    /// sha256 of the input file bytes.
    pub input_digest: Option<String>,
    pub parameters: BTreeMap<String, Value>,
    pub outcome: Outcome,
    pub summary: String,
    pub result: Value,
    pub wall_time_ms: u128,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
