//! `report.json` and its CSV companions.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use sensvol_core::evaluation::ConvergenceStep;
use sensvol_core::sfc::DistanceKind;
use sensvol_core::{CurveKind, Measure};

use super::raw;
use crate::error::{Error, Result};
use crate::timing::TimingTable;

pub const REPORT_FILE: &str = "report.json";
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: u32,
    #[serde(flatten)]
    pub report: Report,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Report {
    Coherency(CoherencyStudy),
    Convergence(ConvergenceStudy),
    Timing(TimingTable),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoherencyStudy {
    pub measure: Measure,
    pub max_lag: usize,
    pub ref_point: [f64; 3],
    pub curves: Vec<CurveScore>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveScore {
    pub label: String,
    pub curve: CurveKind,
    /// Data-driven curves only.
    pub distance: Option<DistanceKind>,
    pub alpha: Option<f64>,
    pub value_coherency: f64,
    pub positional_coherency: f64,
    /// Autocorrelation per lag of each field along the curve.
    pub field_acf: Vec<(String, Vec<f64>)>,
    pub positional_acf: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub measure: Measure,
    pub dims: [usize; 3],
    pub seed: u64,
    pub noise_max: f64,
    pub run_counts: Vec<usize>,
    /// Wall time of the measure on each ensemble.
    pub seconds: Vec<f64>,
    pub steps: Vec<ConvergenceStep>,
}

pub fn write_report(report: &Report, dir: &Path) -> Result<()> {
    let file = ReportFile { schema_version: REPORT_SCHEMA_VERSION, report: report.clone() };
    let text = serde_json::to_string_pretty(&file).expect("report serializes");
    raw::write(&dir.join(REPORT_FILE), text.as_bytes())
}

pub fn read_report(path: &Path) -> Result<Report> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let file: ReportFile = serde_json::from_str(&text).map_err(|e| Error::malformed(path, e))?;
    if file.schema_version != REPORT_SCHEMA_VERSION {
        return Err(Error::malformed(path, format!("unsupported schema version {}", file.schema_version)));
    }
    Ok(file.report)
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct AcfRow {
    pub curve: String,
    pub series: String,
    pub lag: usize,
    pub acf: f64,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRow {
    pub runs: usize,
    pub previous_runs: usize,
    pub mean_abs_diff: f64,
    pub min_abs_diff: f64,
    pub max_abs_diff: f64,
}

fn write_csv<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::malformed(path, e))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::malformed(path, e))?;
    raw::write(path, &bytes)
}

pub fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        k => Error::malformed(path, format!("{k:?}")),
    })?;
    r.deserialize().map(|row| row.map_err(|e| Error::malformed(path, e))).collect()
}

/// One row per (curve, series, lag); the positional series is named `position`.
pub fn write_coherency_csv(study: &CoherencyStudy, path: &Path) -> Result<()> {
    let rows = study.curves.iter().flat_map(|c| {
        let fields = c.field_acf.iter().map(|(name, acf)| (name.as_str(), acf));
        fields.chain([("position", &c.positional_acf)]).flat_map(move |(series, acf)| {
            acf.iter().enumerate().map(move |(l, &v)| AcfRow {
                curve: c.label.clone(),
                series: series.to_string(),
                lag: l + 1,
                acf: v,
            })
        })
    });
    write_csv(path, rows)
}

/// One row per step.
pub fn write_convergence_csv(study: &ConvergenceStudy, path: &Path) -> Result<()> {
    write_csv(
        path,
        study.steps.iter().map(|s| StepRow {
            runs: s.runs,
            previous_runs: s.previous_runs,
            mean_abs_diff: s.mean_abs_diff,
            min_abs_diff: s.min_abs_diff,
            max_abs_diff: s.max_abs_diff,
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn study() -> CoherencyStudy {
        CoherencyStudy {
            measure: Measure::Delta,
            max_lag: 2,
            ref_point: [0.0; 3],
            curves: vec![CurveScore {
                label: "datadriven-l1".into(),
                curve: CurveKind::DataDriven,
                distance: Some(DistanceKind::L1),
                alpha: Some(0.1),
                value_coherency: 0.1 + 0.2,
                positional_coherency: -1.0 / 3.0,
                field_acf: vec![("P1".into(), vec![0.5, 0.25])],
                positional_acf: vec![0.9, 0.8],
            }],
        }
    }

    #[test]
    fn report_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let r = Report::Coherency(study());
        write_report(&r, dir.path()).unwrap();
        assert_eq!(read_report(&dir.path().join(REPORT_FILE)).unwrap(), r);
        let v: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join(REPORT_FILE)).unwrap()).unwrap();
        assert_eq!(v["kind"], "coherency");
        assert_eq!(v["schema_version"], 1);
    }

    #[test]
    fn coherency_csv_has_a_row_per_lag() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.csv");
        write_coherency_csv(&study(), &p).unwrap();
        let rows: Vec<AcfRow> = read_csv(&p).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[3], AcfRow { curve: "datadriven-l1".into(), series: "position".into(), lag: 2, acf: 0.8 });
    }
}
