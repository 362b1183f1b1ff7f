//! Ensemble data model: parameter samples plus one scalar volume per run.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::GridDims;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ParameterSpec {
    pub name: String,
    pub min: f64,
    pub max: f64,
}

impl ParameterSpec {
    pub fn new(name: impl Into<String>, min: f64, max: f64) -> Self {
        Self { name: name.into(), min, max }
    }

    pub fn unit(name: impl Into<String>) -> Self {
        Self::new(name, 0.0, 1.0)
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.min && v <= self.max
    }
}

/// How the rows of a [`ParameterSpace`] were generated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SampleLayout {
    #[default]
    Unstructured,
    /// `base_n * (n + 2)` rows: block A, block B, then one AB_i block per parameter.
    Saltelli { base_n: usize },
}

/// Parameter declarations plus the `R x n` sample matrix (row = run).
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSpace {
    params: Vec<ParameterSpec>,
    samples: Vec<f64>,
    layout: SampleLayout,
}

impl ParameterSpace {
    /// Builds a validated parameter space from row-major samples.
    pub fn new(params: Vec<ParameterSpec>, samples: Vec<f64>, layout: SampleLayout) -> Result<Self> {
        let n = params.len();
        if n == 0 {
            return Err(Error::InvalidConfig("at least one parameter is required"));
        }
        if samples.is_empty() || samples.len() % n != 0 {
            return Err(Error::SizeMismatch { expected: n, found: samples.len() });
        }
        for (k, &v) in samples.iter().enumerate() {
            let (run, param) = (k / n, k % n);
            if !params[param].contains(v) {
                return Err(Error::RangeViolation { run, param, value: v });
            }
        }
        if let SampleLayout::Saltelli { base_n } = layout {
            let expected = base_n * (n + 2);
            if samples.len() / n != expected {
                return Err(Error::LayoutMismatch { expected, found: samples.len() / n });
            }
        }
        Ok(Self { params, samples, layout })
    }

    pub fn from_rows(params: Vec<ParameterSpec>, rows: &[Vec<f64>], layout: SampleLayout) -> Result<Self> {
        let n = params.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::WrongParamCount { expected: n, found: bad.len() });
        }
        Self::new(params, rows.concat(), layout)
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    pub fn run_count(&self) -> usize {
        self.samples.len() / self.params.len()
    }

    pub fn params(&self) -> &[ParameterSpec] {
        &self.params
    }

    pub fn names(&self) -> Vec<String> {
        self.params.iter().map(|p| p.name.clone()).collect()
    }

    pub fn layout(&self) -> SampleLayout {
        self.layout
    }

    pub fn row(&self, run: usize) -> &[f64] {
        let n = self.params.len();
        &self.samples[run * n..(run + 1) * n]
    }

    pub fn value(&self, run: usize, param: usize) -> f64 {
        self.samples[run * self.params.len() + param]
    }

    pub fn column(&self, param: usize) -> Vec<f64> {
        (0..self.run_count()).map(|r| self.value(r, param)).collect()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Reorders parameter columns: column `i` of the result is column `perm[i]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        let n = self.param_count();
        if perm.len() != n {
            return Err(Error::WrongParamCount { expected: n, found: perm.len() });
        }
        let params = perm.iter().map(|&p| self.params[p].clone()).collect();
        let mut samples = Vec::with_capacity(self.samples.len());
        for r in 0..self.run_count() {
            samples.extend(perm.iter().map(|&p| self.value(r, p)));
        }
        Self::new(params, samples, SampleLayout::Unstructured)
    }
}

/// A named auxiliary scalar field defined on the ensemble grid.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxField {
    pub name: String,
    pub values: Vec<f32>,
}

/// Simulation ensemble: one scalar volume per parameter-space sample.
///
/// Volumes are stored as 32-bit floats and widened to `f64` on extraction.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    name: String,
    dims: GridDims,
    pspace: ParameterSpace,
    volumes: Vec<Vec<f32>>,
    aux: Vec<AuxField>,
}

impl Ensemble {
    pub fn new(
        name: impl Into<String>,
        dims: GridDims,
        pspace: ParameterSpace,
        volumes: Vec<Vec<f32>>,
        aux: Vec<AuxField>,
    ) -> Result<Self> {
        if volumes.len() != pspace.run_count() {
            return Err(Error::SizeMismatch { expected: pspace.run_count(), found: volumes.len() });
        }
        let v = dims.voxel_count();
        for vol in volumes.iter().map(|v| v.len()).chain(aux.iter().map(|a| a.values.len())) {
            if vol != v {
                return Err(Error::SizeMismatch { expected: v, found: vol });
            }
        }
        Ok(Self { name: name.into(), dims, pspace, volumes, aux })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> GridDims {
        self.dims
    }

    pub fn pspace(&self) -> &ParameterSpace {
        &self.pspace
    }

    pub fn run_count(&self) -> usize {
        self.volumes.len()
    }

    pub fn volumes(&self) -> &[Vec<f32>] {
        &self.volumes
    }

    pub fn volume(&self, run: usize) -> &[f32] {
        &self.volumes[run]
    }

    pub fn aux(&self) -> &[AuxField] {
        &self.aux
    }

    /// Output of every run at one voxel, in sample-row order.
    pub fn voxel_series(&self, index: usize) -> Result<Vec<f64>> {
        let len = self.dims.voxel_count();
        if index >= len {
            return Err(Error::IndexOutOfBounds { index, len });
        }
        Ok(self.volumes.iter().map(|v| v[index] as f64).collect())
    }

    /// Writes the series of voxels `start..start + count` voxel-major into `out`
    /// (`out[k * R + r]` is run `r` at voxel `start + k`).
    pub(crate) fn voxel_block(&self, start: usize, count: usize, out: &mut Vec<f64>) {
        let r_count = self.volumes.len();
        out.clear();
        out.resize(count * r_count, 0.0);
        for (r, vol) in self.volumes.iter().enumerate() {
            for (k, &v) in vol[start..start + count].iter().enumerate() {
                out[k * r_count + r] = v as f64;
            }
        }
    }

    /// Replaces the parameter space (same run count), e.g. to permute columns.
    pub fn with_pspace(mut self, pspace: ParameterSpace) -> Result<Self> {
        if pspace.run_count() != self.pspace.run_count() {
            return Err(Error::SizeMismatch { expected: self.pspace.run_count(), found: pspace.run_count() });
        }
        self.pspace = pspace;
        Ok(self)
    }
}
