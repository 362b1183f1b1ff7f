//! The moment-independent δ measure.
//!
//! For parameter `i` the runs are split into equal-frequency slices of `P_i`;
//! `δ_i = ½ Σ_slices w_s ∫ |f_Y − f_{Y|s}| dy` with `w_s` the slice share of
//! the runs. Densities are Gaussian KDEs evaluated on one grid spanning the
//! observed output range, and the integral is a trapezoidal sum over that grid.

use alloc::vec;
use alloc::vec::Vec;

use crate::ensemble::{Ensemble, ParameterSpace};
use crate::error::{Error, Result};
use crate::par;
use crate::sensitivity::kde::{kde_on_grid, sample_std, UniformGrid};
use crate::sensitivity::{Measure, SensitivityFieldSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceCount {
    /// [`auto_slice_count`] of the run count.
    Auto,
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bandwidth {
    /// `σ n^(-1/5)`
    Scott,
    /// `σ (3n / 4)^(-1/5)`, about `1.06 σ n^(-1/5)`.
    Silverman,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeltaConfig {
    pub slices: SliceCount,
    pub grid_points: usize,
    pub bandwidth: Bandwidth,
}

impl Default for DeltaConfig {
    fn default() -> Self {
        Self { slices: SliceCount::Auto, grid_points: 100, bandwidth: Bandwidth::Silverman }
    }
}

/// Slice count used when none is given: `ceil(R^(2 / (7 + tanh((1500 − R) / 500))))`,
/// capped at 48 and floored at 2.
pub fn auto_slice_count(runs: usize) -> usize {
    let r = runs as f64;
    let exponent = 2.0 / (7.0 + libm::tanh((1500.0 - r) / 500.0));
    (libm::ceil(libm::pow(r, exponent)) as usize).clamp(2, 48)
}

fn bandwidth(rule: Bandwidth, values: &[f64]) -> f64 {
    let factor = libm::pow(values.len() as f64, -0.2);
    match rule {
        Bandwidth::Scott => sample_std(values) * factor,
        Bandwidth::Silverman => sample_std(values) * libm::pow(0.75 * values.len() as f64, -0.2),
    }
}

/// `∫ |a − b|` over the grid by the trapezoidal rule.
fn trapezoid(a: &[f64], b: &[f64], step: f64) -> f64 {
    let d = |j: usize| (a[j] - b[j]).abs();
    let last = a.len() - 1;
    let inner: f64 = (1..last).map(d).sum();
    (inner + 0.5 * (d(0) + d(last))) * step
}

/// Equal-frequency slicing of every parameter, shared by all voxels.
#[derive(Clone, Debug)]
pub struct DeltaPlan {
    cfg: DeltaConfig,
    runs: usize,
    /// `slices[i]` holds the run indices of each slice of parameter `i`.
    slices: Vec<Vec<Vec<u32>>>,
}

/// Scratch buffers reused across voxels.
#[derive(Default)]
pub struct DeltaScratch {
    f_all: Vec<f64>,
    f_slice: Vec<f64>,
    gathered: Vec<f64>,
}

impl DeltaPlan {
    pub fn new(pspace: &ParameterSpace, cfg: DeltaConfig) -> Result<Self> {
        if cfg.grid_points < 2 {
            return Err(Error::InvalidConfig("density grid needs at least two points"));
        }
        let runs = pspace.run_count();
        let m = match cfg.slices {
            SliceCount::Auto => auto_slice_count(runs),
            SliceCount::Fixed(m) if m < 2 => return Err(Error::InvalidConfig("slice count must be at least 2")),
            SliceCount::Fixed(m) => m,
        };
        if runs / m < 2 {
            return Err(Error::TooFewSamples { slice_size: runs / m });
        }
        let slices = (0..pspace.param_count())
            .map(|i| {
                let mut order: Vec<u32> = (0..runs as u32).collect();
                order.sort_by(|&a, &b| {
                    pspace.value(a as usize, i).total_cmp(&pspace.value(b as usize, i)).then(a.cmp(&b))
                });
                // first `runs % m` slices get one extra run
                let (base, extra) = (runs / m, runs % m);
                let mut out = Vec::with_capacity(m);
                let mut start = 0;
                for s in 0..m {
                    let len = base + usize::from(s < extra);
                    out.push(order[start..start + len].to_vec());
                    start += len;
                }
                out
            })
            .collect();
        Ok(Self { cfg, runs, slices })
    }

    pub fn slice_count(&self) -> usize {
        self.slices.first().map_or(0, Vec::len)
    }

    /// δ for each parameter at one voxel; the flag is set for constant output.
    pub fn evaluate(&self, y: &[f64], scratch: &mut DeltaScratch) -> (Vec<f64>, bool) {
        debug_assert_eq!(y.len(), self.runs);
        let n = self.slices.len();
        let (min, max) = y.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
        if !(max > min) {
            return (vec![0.0; n], true);
        }
        let grid = UniformGrid::spanning(min, max, self.cfg.grid_points);
        scratch.f_all.resize(grid.len, 0.0);
        scratch.f_slice.resize(grid.len, 0.0);
        kde_on_grid(y, bandwidth(self.cfg.bandwidth, y), &grid, &mut scratch.f_all);

        let values = self
            .slices
            .iter()
            .map(|slices| {
                let mut acc = 0.0;
                for slice in slices {
                    scratch.gathered.clear();
                    scratch.gathered.extend(slice.iter().map(|&r| y[r as usize]));
                    let mut h = bandwidth(self.cfg.bandwidth, &scratch.gathered);
                    if !(h > 0.0) {
                        // constant slice: the narrowest kernel the grid resolves
                        h = grid.step;
                    }
                    kde_on_grid(&scratch.gathered, h, &grid, &mut scratch.f_slice);
                    let shift = trapezoid(&scratch.f_all, &scratch.f_slice, grid.step);
                    acc += slice.len() as f64 / self.runs as f64 * shift;
                }
                (0.5 * acc).clamp(0.0, 1.0)
            })
            .collect();
        (values, false)
    }
}

/// δ for every parameter from outputs `y` (one per run) and the sample matrix.
pub fn delta_index(y: &[f64], pspace: &ParameterSpace, cfg: &DeltaConfig) -> Result<Vec<f64>> {
    if y.len() != pspace.run_count() {
        return Err(Error::SizeMismatch { expected: pspace.run_count(), found: y.len() });
    }
    let plan = DeltaPlan::new(pspace, *cfg)?;
    Ok(plan.evaluate(y, &mut DeltaScratch::default()).0)
}

/// δ volume: one field per parameter, constant voxels zero and flagged inert.
pub fn delta_volume(ens: &Ensemble, cfg: &DeltaConfig) -> Result<SensitivityFieldSet> {
    let plan = DeltaPlan::new(ens.pspace(), *cfg)?;
    let voxels = par::map_voxels(ens, DeltaScratch::default, |scratch, _, y| plan.evaluate(y, scratch));
    Ok(SensitivityFieldSet::from_voxels(Measure::Delta, ens.dims(), ens.pspace().names(), voxels))
}
