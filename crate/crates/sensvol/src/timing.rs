//! Wall-clock timing of sensitivity measures over several ensembles.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use sensvol_core::sensitivity::{compute_measure, MeasureConfig};
use sensvol_core::{Ensemble, Measure, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub ensemble: String,
    pub runs: usize,
    pub voxels: usize,
    pub measure: Measure,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TimingTable {
    pub rows: Vec<TimingRow>,
}

/// Runs every measure on every ensemble, ensemble-major.
pub fn time_measures(ensembles: &[&Ensemble], measures: &[Measure], cfg: &MeasureConfig) -> Result<TimingTable> {
    let mut rows = Vec::with_capacity(ensembles.len() * measures.len());
    for ens in ensembles {
        for &measure in measures {
            let start = Instant::now();
            compute_measure(ens, measure, cfg)?;
            rows.push(TimingRow {
                ensemble: ens.name().to_string(),
                runs: ens.run_count(),
                voxels: ens.dims().voxel_count(),
                measure,
                seconds: start.elapsed().as_secs_f64(),
            });
        }
    }
    Ok(TimingTable { rows })
}
