//! JSON report documents. Field order is fixed by the struct definitions and
//! every map is ordered, so identical runs serialize byte-identically.

use std::collections::BTreeMap;

use serde::Serialize;

use coordctl_core::coordination::{ConditionCheck, HypothesisVerdict, Pipeline};
use coordctl_core::Witness;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Versions {
    pub schema: u32,
    pub tool: &'static str,
}

pub fn versions() -> Versions {
    Versions {
        schema: SCHEMA_VERSION,
        tool: env!("CARGO_PKG_VERSION"),
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    pub property: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Per-component clauses of a conditional property.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ConditionCheck>,
    /// Named sub-conditions of a bundled check (supervisor existence).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<HypothesisVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub versions: Versions,
}

#[derive(Serialize)]
pub struct SynthReport {
    pub pipeline: Pipeline,
    pub languages: BTreeMap<String, String>,
    pub hypotheses: Vec<HypothesisVerdict>,
    pub certified: bool,
    pub notes: Vec<String>,
    pub versions: Versions,
}

#[derive(Serialize)]
pub struct OracleComparison {
    pub property: String,
    pub production: bool,
    pub oracle: bool,
    pub exact: bool,
    pub agree: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub versions: Versions,
}

#[derive(Serialize)]
pub struct CampaignReport {
    pub instances: usize,
    pub seed: u64,
    pub disagreements: Vec<String>,
    pub versions: Versions,
}

pub fn print_json<T: Serialize>(doc: &T) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable report"));
}
