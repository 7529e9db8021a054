use std::collections::BTreeSet;

use backdoors::{Assignment, Var};
use serde::Serialize;
use serde_json::Value;

/// The JSON document printed by every subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    /// The arguments after the program name.
    pub command: Vec<String>,
    /// `sha256:<hex>` of the input bytes.
    pub input_digest: Option<String>,
    pub result: Value,
    pub algorithm: Option<String>,
    pub wall_time_ms: u64,
    pub seed: Option<u64>,
}

/// Everything a run writes, and its exit code.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

pub(crate) fn var_ids(vars: &BTreeSet<Var>) -> Vec<u32> {
    vars.iter().map(|v| v.id()).collect()
}

/// An assignment as the list of its true literals.
pub(crate) fn lits(tau: &Assignment) -> Vec<i64> {
    tau.iter().map(|(v, b)| v.lit(b).to_dimacs()).collect()
}
