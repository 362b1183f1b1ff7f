//! `ensemble.json` plus one raw float32 volume per run.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use sensvol_core::sampling::SaltelliBlocks;
use sensvol_core::{AuxField, Ensemble, GridDims, ParameterSpace, ParameterSpec, SampleLayout};

use super::raw;
use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "ensemble.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub dims: [usize; 3],
    pub dtype: String,
    pub order: String,
    pub parameters: Vec<ParameterSpec>,
    pub runs: Vec<RunEntry>,
    #[serde(default)]
    pub aux: Vec<AuxEntry>,
    /// Absent in hand-written manifests; the layout is then detected.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<Sampling>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunEntry {
    pub params: Vec<f64>,
    pub file: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuxEntry {
    pub name: String,
    pub file: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
pub enum Sampling {
    Saltelli { base_n: usize },
    Unstructured,
}

/// Base size if the rows follow the A, B, AB_1 .. AB_n layout exactly.
pub fn detect_saltelli(ps: &ParameterSpace) -> Option<usize> {
    let n = ps.param_count();
    let runs = ps.run_count();
    if runs % (n + 2) != 0 || runs / (n + 2) < 2 {
        return None;
    }
    let blocks = SaltelliBlocks { base_n: runs / (n + 2), params: n };
    for i in 0..n {
        for j in 0..blocks.base_n {
            let (a, b, ab) = (ps.row(blocks.a(j)), ps.row(blocks.b(j)), ps.row(blocks.ab(i, j)));
            let same = (0..n).all(|k| ab[k].to_bits() == if k == i { b[k] } else { a[k] }.to_bits());
            if !same {
                return None;
            }
        }
    }
    Some(blocks.base_n)
}

fn malformed(path: &Path, reason: impl ToString) -> Error {
    Error::MalformedManifest { path: path.to_path_buf(), reason: reason.to_string() }
}

pub fn read_manifest(path: &Path) -> Result<Manifest> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let m: Manifest = serde_json::from_str(&text).map_err(|e| malformed(path, e))?;
    if m.dtype != "float32" {
        return Err(malformed(path, format!("unsupported dtype {:?}", m.dtype)));
    }
    if m.order != "x-fastest" {
        return Err(malformed(path, format!("unsupported order {:?}", m.order)));
    }
    if m.parameters.is_empty() || m.runs.is_empty() {
        return Err(malformed(path, "needs at least one parameter and one run"));
    }
    if let Some(p) = m.parameters.iter().find(|p| !p.min.is_finite() || !p.max.is_finite() || p.min > p.max) {
        return Err(malformed(path, format!("parameter {} has an invalid range", p.name)));
    }
    if let Some((r, run)) = m.runs.iter().enumerate().find(|(_, run)| run.params.len() != m.parameters.len()) {
        return Err(malformed(path, format!("run {r} has {} values for {} parameters", run.params.len(), m.parameters.len())));
    }
    Ok(m)
}

fn parameter_space(path: &Path, m: &Manifest) -> Result<ParameterSpace> {
    let samples: Vec<f64> = m.runs.iter().flat_map(|r| r.params.iter().copied()).collect();
    let ps = ParameterSpace::new(m.parameters.clone(), samples, SampleLayout::Unstructured).map_err(|e| match e {
        sensvol_core::Error::RangeViolation { run, param, value } => Error::RangeViolation { run, param, value },
        e => malformed(path, e),
    })?;
    let layout = match m.sampling {
        Some(Sampling::Unstructured) => SampleLayout::Unstructured,
        Some(Sampling::Saltelli { base_n }) => {
            if detect_saltelli(&ps) != Some(base_n) {
                return Err(malformed(path, format!("rows do not follow the Saltelli layout with base {base_n}")));
            }
            SampleLayout::Saltelli { base_n }
        }
        None => detect_saltelli(&ps).map_or(SampleLayout::Unstructured, |base_n| SampleLayout::Saltelli { base_n }),
    };
    let samples = ps.samples().to_vec();
    Ok(ParameterSpace::new(m.parameters.clone(), samples, layout)?)
}

fn resolve(dir: &Path, file: &str) -> PathBuf {
    dir.join(file)
}

/// Loads an ensemble from its manifest, or from the directory holding it.
pub fn load_ensemble(path: &Path) -> Result<Ensemble> {
    let joined;
    let manifest_path = if path.is_dir() {
        joined = path.join(MANIFEST_FILE);
        joined.as_path()
    } else {
        path
    };
    let m = read_manifest(manifest_path)?;
    let dims = GridDims::new(m.dims[0], m.dims[1], m.dims[2]).map_err(|e| malformed(manifest_path, e))?;
    let pspace = parameter_space(manifest_path, &m)?;
    let dir = manifest_path.parent().unwrap_or(Path::new("."));
    let v = dims.voxel_count();

    let files: Vec<PathBuf> = m.runs.iter().map(|r| resolve(dir, &r.file)).collect();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(files.len());
    let chunk = files.len().div_ceil(workers);
    let volumes = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|f| raw::read_f32(f, v)).collect::<Result<Vec<_>>>()))
            .collect();
        let mut all = Vec::with_capacity(files.len());
        for h in handles {
            all.extend(h.join().expect("volume reader panicked")?);
        }
        Ok::<_, Error>(all)
    })?;

    let aux = m
        .aux
        .iter()
        .map(|a| Ok(AuxField { name: a.name.clone(), values: raw::read_f32(&resolve(dir, &a.file), v)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ensemble::new(m.name.clone(), dims, pspace, volumes, aux)?)
}

/// Writes `dir/ensemble.json`, `dir/runs/run_NNNNN.raw` and `dir/aux/<name>.raw`.
/// Returns the manifest path.
pub fn write_ensemble(ens: &Ensemble, dir: &Path) -> Result<PathBuf> {
    let ps = ens.pspace();
    let mut runs = Vec::with_capacity(ens.run_count());
    for (r, vol) in ens.volumes().iter().enumerate() {
        let file = format!("runs/run_{r:05}.raw");
        raw::write_f32(&dir.join(&file), vol)?;
        runs.push(RunEntry { params: ps.row(r).to_vec(), file });
    }
    let mut aux = Vec::with_capacity(ens.aux().len());
    for a in ens.aux() {
        let file = format!("aux/{}.raw", a.name);
        raw::write_f32(&dir.join(&file), &a.values)?;
        aux.push(AuxEntry { name: a.name.clone(), file });
    }
    let sampling = match ps.layout() {
        SampleLayout::Saltelli { base_n } => Sampling::Saltelli { base_n },
        SampleLayout::Unstructured => Sampling::Unstructured,
    };
    let m = Manifest {
        name: ens.name().to_string(),
        dims: ens.dims().as_array(),
        dtype: "float32".into(),
        order: "x-fastest".into(),
        parameters: ps.params().to_vec(),
        runs,
        aux,
        sampling: Some(sampling),
    };
    let path = dir.join(MANIFEST_FILE);
    let text = serde_json::to_string_pretty(&m).expect("manifest serializes");
    raw::write(&path, text.as_bytes())?;
    Ok(path)
}
