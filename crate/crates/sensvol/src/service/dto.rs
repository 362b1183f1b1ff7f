//! Request and response bodies.

use serde::{Deserialize, Serialize};

use sensvol_core::sfc::DistanceKind;
use sensvol_core::viewdata::{HeatmapGrid, Mesh};
use sensvol_core::{CurveKind, Measure, ParameterSpec};

/// Body wrapper adding the schema version to every JSON response.
#[derive(Debug, Serialize)]
pub struct Versioned<T> {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: T,
}

/// A field given by position or by name.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum FieldRef {
    Index(usize),
    Name(String),
}

impl std::fmt::Display for FieldRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldRef::Index(i) => write!(f, "#{i}"),
            FieldRef::Name(n) => write!(f, "{n:?}"),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BrushBody {
    #[serde(alias = "field")]
    pub axis: FieldRef,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SelectionBody {
    #[serde(default)]
    pub pcp_brushes: Vec<BrushBody>,
    #[serde(default)]
    pub sfc_intervals: Vec<sensvol_core::viewdata::CurveInterval>,
}

#[derive(Debug, Serialize)]
pub struct SelectionCreated {
    pub id: u64,
    pub count: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AxisOrderBody {
    pub order: Vec<FieldRef>,
}

#[derive(Debug, Serialize)]
pub struct AxisOrder {
    pub order: Vec<usize>,
    pub names: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct CurveMeta {
    pub kind: CurveKind,
    pub alpha: f64,
    pub distance: DistanceKind,
    pub ref_point: [f64; 3],
    pub length: usize,
}

#[derive(Debug, Serialize)]
pub struct Defaults {
    pub count: usize,
    pub seed: u64,
    pub param_bins: usize,
    pub curve_bins: usize,
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub name: String,
    pub dims: [usize; 3],
    pub runs: usize,
    pub parameters: Vec<ParameterSpec>,
    pub aux: Vec<String>,
    pub measures: Vec<Measure>,
    pub measure: Option<Measure>,
    pub curve: Option<CurveMeta>,
    pub preprocessed: bool,
    pub not_ready_reason: Option<String>,
    pub m: usize,
    pub axis_order: Option<Vec<usize>>,
    pub defaults: Defaults,
}

#[derive(Debug, Serialize)]
pub struct Colormap {
    pub name: &'static str,
    pub table: Vec<[u8; 3]>,
}

#[derive(Debug, Serialize)]
pub struct HeatmapResponse {
    pub selection: Option<u64>,
    pub filled_in: bool,
    pub value_range: Option<[f64; 2]>,
    #[serde(flatten)]
    pub grid: HeatmapGrid,
    pub colormap: Colormap,
}

#[derive(Debug, Serialize)]
pub struct MeshResponse {
    pub selection: Option<u64>,
    pub voxel_count: usize,
    pub triangle_count: usize,
    #[serde(flatten)]
    pub mesh: Mesh,
}

#[derive(Debug, Serialize)]
pub struct PcpResponse {
    /// Per polyline, whether its voxel is in the requested selection.
    pub selected: Option<Vec<bool>>,
    #[serde(flatten)]
    pub payload: sensvol_core::viewdata::PcpPayload,
}

#[derive(Debug, Serialize)]
pub struct SelectionInfo {
    pub id: u64,
    pub count: usize,
    pub brushes: Vec<sensvol_core::viewdata::Brush>,
    pub intervals: Vec<sensvol_core::viewdata::CurveInterval>,
}
