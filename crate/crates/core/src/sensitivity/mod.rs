//! Per-voxel global sensitivity measures and their volume maps.
//!
//! Every measure returns one value per parameter for a single voxel; the
//! `*_volume` functions map that over all voxels of an ensemble and produce a
//! [`SensitivityFieldSet`] with one scalar field per parameter.

pub mod delta;
pub mod dgsa;
pub mod kde;
pub mod sobol;

use alloc::string::String;
use alloc::vec::Vec;

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::grid::GridDims;

pub use delta::{delta_index, delta_volume, DeltaConfig, SliceCount};
pub use dgsa::{dgsa_voxel, dgsa_volume, DgsaConfig, DgsaContext};
pub use sobol::{sobol_first_order, sobol_volume};

/// Settings of the measures that take any.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MeasureConfig {
    pub delta: DeltaConfig,
    pub dgsa: DgsaConfig,
}

/// Sensitivity volume of `ens` for the chosen measure.
pub fn compute_measure(ens: &Ensemble, measure: Measure, cfg: &MeasureConfig) -> Result<SensitivityFieldSet> {
    match measure {
        Measure::Sobol => sobol_volume(ens),
        Measure::Delta => delta_volume(ens, &cfg.delta),
        Measure::Dgsa => dgsa_volume(ens, &cfg.dgsa),
    }
}

/// Voxel flag: the measure could not rate this voxel (e.g. constant output).
pub const FLAG_INERT: u8 = 1;
/// Voxel flag: a normalized measure produced a value outside `[0, 1]`.
pub const FLAG_OUT_OF_RANGE: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Measure {
    Sobol,
    Delta,
    Dgsa,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Sobol, Measure::Delta, Measure::Dgsa];

    pub fn as_str(&self) -> &'static str {
        match self {
            Measure::Sobol => "sobol",
            Measure::Delta => "delta",
            Measure::Dgsa => "dgsa",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.as_str().eq_ignore_ascii_case(s))
    }

    /// Values of normalized measures are expected in `[0, 1]`.
    pub fn is_normalized(&self) -> bool {
        !matches!(self, Measure::Dgsa)
    }

    /// Height of one horizon band, which doubles as the "sensitive" threshold.
    pub fn band_width(&self) -> f64 {
        if self.is_normalized() {
            0.2
        } else {
            1.0
        }
    }
}

/// One sensitivity volume per parameter for a chosen measure.
#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityFieldSet {
    pub measure: Measure,
    pub dims: GridDims,
    pub param_names: Vec<String>,
    /// `fields[i][v]` is the sensitivity to parameter `i` at voxel `v`.
    pub fields: Vec<Vec<f64>>,
    /// Per-voxel bitfield of [`FLAG_INERT`] and [`FLAG_OUT_OF_RANGE`].
    pub flags: Vec<u8>,
}

impl SensitivityFieldSet {
    pub fn new(
        measure: Measure,
        dims: GridDims,
        param_names: Vec<String>,
        fields: Vec<Vec<f64>>,
        flags: Vec<u8>,
    ) -> Result<Self> {
        if fields.len() != param_names.len() {
            return Err(Error::SizeMismatch { expected: param_names.len(), found: fields.len() });
        }
        let v = dims.voxel_count();
        for len in fields.iter().map(Vec::len).chain(core::iter::once(flags.len())) {
            if len != v {
                return Err(Error::SizeMismatch { expected: v, found: len });
            }
        }
        Ok(Self { measure, dims, param_names, fields, flags })
    }

    /// Assembles a field set from per-voxel results `(values, inert)`.
    pub(crate) fn from_voxels(
        measure: Measure,
        dims: GridDims,
        param_names: Vec<String>,
        voxels: Vec<(Vec<f64>, bool)>,
    ) -> Self {
        let n = param_names.len();
        let mut fields = alloc::vec![Vec::with_capacity(voxels.len()); n];
        let mut flags = Vec::with_capacity(voxels.len());
        for (values, inert) in voxels {
            let mut flag = if inert { FLAG_INERT } else { 0 };
            for (field, &v) in fields.iter_mut().zip(&values) {
                if measure.is_normalized() && !(0.0..=1.0).contains(&v) {
                    flag |= FLAG_OUT_OF_RANGE;
                }
                field.push(v);
            }
            flags.push(flag);
        }
        Self { measure, dims, param_names, fields, flags }
    }

    pub fn field_count(&self) -> usize {
        self.fields.len()
    }

    pub fn voxel_count(&self) -> usize {
        self.dims.voxel_count()
    }

    /// Sensitivity vector (one entry per parameter) at voxel `v`.
    pub fn vector(&self, v: usize) -> Vec<f64> {
        self.fields.iter().map(|f| f[v]).collect()
    }

    pub fn field_index(&self, name: &str) -> Option<usize> {
        self.param_names.iter().position(|n| n == name)
    }

    /// Mean of field `i` over all voxels.
    pub fn mean(&self, i: usize) -> f64 {
        self.fields[i].iter().sum::<f64>() / self.voxel_count() as f64
    }

    /// Number of voxels whose value in field `i` exceeds the sensitive threshold.
    pub fn sensitive_count(&self, i: usize) -> usize {
        let t = self.measure.band_width();
        self.fields[i].iter().filter(|&&v| v > t).count()
    }
}
