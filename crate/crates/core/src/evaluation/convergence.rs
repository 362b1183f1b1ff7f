//! Convergence of a sensitivity measure over ensembles of growing size.

use alloc::vec::Vec;

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::sensitivity::{compute_measure, Measure, MeasureConfig, SensitivityFieldSet};

/// Absolute per-voxel change against the previous ensemble, pooled over
/// all parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceStep {
    pub runs: usize,
    pub previous_runs: usize,
    pub mean_abs_diff: f64,
    pub min_abs_diff: f64,
    pub max_abs_diff: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConvergenceReport {
    pub measure: Measure,
    pub run_counts: Vec<usize>,
    /// `steps[s]` compares ensemble `s + 1` with ensemble `s`.
    pub steps: Vec<ConvergenceStep>,
}

/// Builds a report one field set at a time, so only the previous set needs
/// to stay in memory.
#[derive(Clone, Debug)]
pub struct ConvergenceTracker {
    report: ConvergenceReport,
    previous: Option<SensitivityFieldSet>,
}

impl ConvergenceTracker {
    pub fn new(measure: Measure) -> Self {
        Self { report: ConvergenceReport { measure, run_counts: Vec::new(), steps: Vec::new() }, previous: None }
    }

    pub fn push(&mut self, runs: usize, fields: SensitivityFieldSet) -> Result<()> {
        if fields.measure != self.report.measure {
            return Err(Error::InvalidConfig("field set of a different measure"));
        }
        if let Some(prev) = &self.previous {
            if prev.dims != fields.dims || prev.param_names != fields.param_names {
                return Err(Error::GridMismatch);
            }
            let (mut sum, mut min, mut max, mut count) = (0.0, f64::INFINITY, 0.0f64, 0usize);
            for (a, b) in prev.fields.iter().zip(&fields.fields) {
                for (x, y) in a.iter().zip(b) {
                    let d = (y - x).abs();
                    sum += d;
                    min = min.min(d);
                    max = max.max(d);
                    count += 1;
                }
            }
            let previous_runs = *self.report.run_counts.last().unwrap();
            self.report.steps.push(ConvergenceStep {
                runs,
                previous_runs,
                mean_abs_diff: if count > 0 { sum / count as f64 } else { 0.0 },
                min_abs_diff: if count > 0 { min } else { 0.0 },
                max_abs_diff: max,
            });
        }
        self.report.run_counts.push(runs);
        self.previous = Some(fields);
        Ok(())
    }

    pub fn finish(self) -> Result<ConvergenceReport> {
        if self.report.run_counts.len() < 2 {
            return Err(Error::InvalidConfig("a convergence study needs at least two ensembles"));
        }
        Ok(self.report)
    }
}

/// Report from precomputed field sets, one per ensemble size.
pub fn convergence_from_fields(sets: &[(usize, SensitivityFieldSet)]) -> Result<ConvergenceReport> {
    let measure = sets.first().map_or(Measure::Sobol, |s| s.1.measure);
    let mut t = ConvergenceTracker::new(measure);
    for (runs, fields) in sets {
        t.push(*runs, fields.clone())?;
    }
    t.finish()
}

/// Computes `measure` on each ensemble in turn and compares consecutive ones.
pub fn convergence_study(ensembles: &[Ensemble], measure: Measure, cfg: &MeasureConfig) -> Result<ConvergenceReport> {
    let mut t = ConvergenceTracker::new(measure);
    for ens in ensembles {
        if let Some(first) = ensembles.first() {
            if first.dims() != ens.dims() || first.pspace().names() != ens.pspace().names() {
                return Err(Error::GridMismatch);
            }
        }
        t.push(ens.run_count(), compute_measure(ens, measure, cfg)?)?;
    }
    t.finish()
}
