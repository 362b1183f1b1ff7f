//! Directory layout of a preprocessed dataset.
//!
//! ```text
//! <root>/ensemble.json
//! <root>/runs/run_NNNNN.raw
//! <root>/sensitivity/<measure>/sensitivity.json, sens_<param>.raw, flags.raw
//! <root>/curve.sfc
//! <root>/evaluation/report.json, coherency.csv
//! ```

use std::path::{Path, PathBuf};

use sensvol_core::Measure;

use super::curve::CURVE_FILE;
use super::fields::FIELDS_META_FILE;
use super::manifest::MANIFEST_FILE;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetDir {
    root: PathBuf,
}

impl DatasetDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn manifest(&self) -> PathBuf {
        self.root.join(MANIFEST_FILE)
    }

    pub fn sensitivity_dir(&self, measure: Measure) -> PathBuf {
        self.root.join("sensitivity").join(measure.as_str())
    }

    pub fn curve(&self) -> PathBuf {
        self.root.join(CURVE_FILE)
    }

    pub fn evaluation_dir(&self) -> PathBuf {
        self.root.join("evaluation")
    }

    /// Measures whose field sets have been written, in canonical order.
    pub fn available_measures(&self) -> Vec<Measure> {
        Measure::ALL.into_iter().filter(|&m| self.sensitivity_dir(m).join(FIELDS_META_FILE).is_file()).collect()
    }
}
