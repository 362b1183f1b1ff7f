//! Space-filling curves over the voxel grid.
//!
//! The data-driven curve is a Hamiltonian cycle built from a minimum spanning
//! tree of the circuit graph's dual, weighted by value and positional
//! coherency. Hilbert and scanline orders serve as data-independent baselines.

pub mod circuit;
pub mod distance;
pub mod hilbert;
pub mod merge;
pub mod mst;
pub mod scanline;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::GridDims;
use crate::sensitivity::SensitivityFieldSet;

pub use circuit::{build_circuit_graph, build_from_fields, CircuitGraph, DualEdge};
pub use distance::{vector_distance, DistanceKind};
pub use hilbert::hilbert_curve;
pub use merge::merge_cycles;
pub use mst::minimum_spanning_tree;
pub use scanline::scanline_curve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum CurveKind {
    DataDriven,
    Hilbert,
    Scanline,
}

impl CurveKind {
    pub const ALL: [CurveKind; 3] = [CurveKind::DataDriven, CurveKind::Hilbert, CurveKind::Scanline];

    pub fn as_str(&self) -> &'static str {
        match self {
            CurveKind::DataDriven => "datadriven",
            CurveKind::Hilbert => "hilbert",
            CurveKind::Scanline => "scanline",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str().eq_ignore_ascii_case(s))
    }

    pub fn code(&self) -> u8 {
        *self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SfcConfig {
    /// Blend between value (0) and positional (1) coherency.
    pub alpha: f64,
    pub distance: DistanceKind,
    pub ref_point: [f64; 3],
}

impl Default for SfcConfig {
    fn default() -> Self {
        Self { alpha: 0.1, distance: DistanceKind::L1, ref_point: [0.0; 3] }
    }
}

impl SfcConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidConfig("alpha must lie in [0, 1]"));
        }
        if self.ref_point.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidConfig("reference point must be finite"));
        }
        Ok(())
    }
}

/// A linear order of all voxels.
#[derive(Clone, Debug, PartialEq)]
pub struct SfcCurve {
    kind: CurveKind,
    dims: GridDims,
    config: SfcConfig,
    order: Vec<u32>,
    inverse: Vec<u32>,
}

impl SfcCurve {
    /// Wraps and validates an order; data-driven curves must also close.
    pub fn new(kind: CurveKind, dims: GridDims, config: SfcConfig, order: Vec<u32>) -> Result<Self> {
        let inverse = inverse_of(dims, &order)?;
        let curve = Self { kind, dims, config, order, inverse };
        curve.check_steps()?;
        Ok(curve)
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn config(&self) -> &SfcConfig {
        &self.config
    }

    /// Voxel index at each curve position.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Curve position of each voxel.
    pub fn inverse(&self) -> &[u32] {
        &self.inverse
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == CurveKind::DataDriven
    }

    /// Values of `field` in curve order.
    pub fn linearize<T: Copy>(&self, field: &[T]) -> Vec<T> {
        self.order.iter().map(|&v| field[v as usize]).collect()
    }

    /// Re-checks every invariant: permutation, inverse, face-adjacent
    /// steps and, for data-driven curves, closure.
    pub fn validate(&self) -> Result<()> {
        let inv = inverse_of(self.dims, &self.order)?;
        if inv != self.inverse {
            return Err(Error::InvalidCurve("inverse does not match the order"));
        }
        self.check_steps()
    }

    fn check_steps(&self) -> Result<()> {
        if self.order.windows(2).any(|w| !self.dims.face_adjacent(w[0] as usize, w[1] as usize)) {
            return Err(Error::InvalidCurve("consecutive voxels are not face-adjacent"));
        }
        if self.is_cycle() && self.order.len() > 1 {
            let (first, last) = (self.order[0] as usize, *self.order.last().unwrap() as usize);
            if !self.dims.face_adjacent(first, last) {
                return Err(Error::InvalidCurve("cycle does not close"));
            }
        }
        Ok(())
    }
}

fn inverse_of(dims: GridDims, order: &[u32]) -> Result<Vec<u32>> {
    let v = dims.voxel_count();
    if order.len() != v {
        return Err(Error::SizeMismatch { expected: v, found: order.len() });
    }
    let mut inverse = vec![u32::MAX; v];
    for (pos, &voxel) in order.iter().enumerate() {
        let slot = inverse.get_mut(voxel as usize).ok_or(Error::IndexOutOfBounds { index: voxel as usize, len: v })?;
        if *slot != u32::MAX {
            return Err(Error::InvalidCurve("voxel visited twice"));
        }
        *slot = pos as u32;
    }
    Ok(inverse)
}

/// Data-driven curve over a set of sensitivity fields.
pub fn data_driven_curve(fields: &SensitivityFieldSet, cfg: &SfcConfig) -> Result<SfcCurve> {
    data_driven_from_fields(fields.dims, &fields.fields, cfg)
}

/// [`data_driven_curve`] for plain field-major data.
pub fn data_driven_from_fields(dims: GridDims, fields: &[Vec<f64>], cfg: &SfcConfig) -> Result<SfcCurve> {
    let graph = build_from_fields(dims, fields, cfg)?;
    let tree = minimum_spanning_tree(graph.cell_count(), &graph.edges)?;
    merge_cycles(&graph, &tree, *cfg)
}
