//! Serializable report types. Divisors are text in the `div v:k ...` format, reduced at the
//! relevant base vertex; maps are keyed by id so output order is stable.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoReport {
    pub schema: String,
    pub command: String,
    pub vertices: usize,
    pub edges: usize,
    pub base_edge: String,
    pub genus: i64,
    pub two_connected: bool,
    pub edge_connectivity: usize,
    pub series_classes: Option<Vec<Vec<String>>>,
    pub spanning_trees: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub source_class: String,
    pub image_class: String,
    pub target_divisor: String,
    pub source_orientation: String,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftReport {
    /// Target edge ↦ target edge; only moved edges are listed.
    pub psi: BTreeMap<String, String>,
    pub edge_map: BTreeMap<String, String>,
    pub vertex_map: BTreeMap<String, String>,
    pub unique: bool,
    pub reverses_base: bool,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisOutput {
    pub schema: String,
    pub command: String,
    pub source_base: String,
    pub target_base: String,
    pub edge_map: BTreeMap<String, String>,
    pub signs: BTreeMap<String, i8>,
    pub rigidity_divisor: String,
    pub reduced_at: String,
    pub is_rigid: bool,
    pub witness: Option<WitnessReport>,
    /// "lifted", "no_isomorphism" or "not_requested".
    pub lift_status: String,
    pub lift: Option<LiftReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatroidReport {
    pub schema: String,
    pub command: String,
    /// "lifted" or "not_liftable".
    pub result: String,
    pub base_image: Option<String>,
    pub edge_map: Option<BTreeMap<String, String>>,
    pub vertex_map: Option<BTreeMap<String, String>>,
    pub unique: Option<bool>,
    pub tried: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
}
