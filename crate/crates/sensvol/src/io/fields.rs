//! Sensitivity output directory: `sensitivity.json`, one `sens_<param>.raw`
//! per parameter and a `flags.raw` byte per voxel.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use sensvol_core::{GridDims, Measure, SensitivityFieldSet};

use super::raw;
use crate::error::{Error, Result};

pub const FIELDS_META_FILE: &str = "sensitivity.json";
pub const FLAGS_FILE: &str = "flags.raw";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldsMeta {
    pub measure: Measure,
    pub dims: [usize; 3],
    pub parameters: Vec<String>,
    pub flags_file: String,
    /// Estimator settings, recorded for provenance only.
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub settings: serde_json::Value,
}

pub fn field_file(param: &str) -> String {
    format!("sens_{param}.raw")
}

fn check_name(dir: &Path, name: &str) -> Result<()> {
    if name.is_empty() || name.contains(['/', '\\']) || name == ".." {
        return Err(Error::malformed(dir, format!("parameter name {name:?} cannot be used in a file name")));
    }
    Ok(())
}

/// Writes the field set; values are narrowed to float32 like the volumes.
pub fn write_fields(fields: &SensitivityFieldSet, dir: &Path, settings: serde_json::Value) -> Result<()> {
    for (name, f) in fields.param_names.iter().zip(&fields.fields) {
        check_name(dir, name)?;
        let narrow: Vec<f32> = f.iter().map(|&v| v as f32).collect();
        raw::write_f32(&dir.join(field_file(name)), &narrow)?;
    }
    raw::write(&dir.join(FLAGS_FILE), &fields.flags)?;
    let meta = FieldsMeta {
        measure: fields.measure,
        dims: fields.dims.as_array(),
        parameters: fields.param_names.clone(),
        flags_file: FLAGS_FILE.into(),
        settings,
    };
    let text = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    raw::write(&dir.join(FIELDS_META_FILE), text.as_bytes())
}

pub fn read_fields_meta(dir: &Path) -> Result<FieldsMeta> {
    let path = dir.join(FIELDS_META_FILE);
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::malformed(&path, e))
}

pub fn read_fields(dir: &Path) -> Result<SensitivityFieldSet> {
    let meta = read_fields_meta(dir)?;
    let [nx, ny, nz] = meta.dims;
    let dims = GridDims::new(nx, ny, nz).map_err(|e| Error::malformed(&dir.join(FIELDS_META_FILE), e))?;
    let v = dims.voxel_count();
    let mut fields = Vec::with_capacity(meta.parameters.len());
    for name in &meta.parameters {
        check_name(dir, name)?;
        let f = raw::read_f32(&dir.join(field_file(name)), v)?;
        fields.push(f.into_iter().map(f64::from).collect());
    }
    let flags = raw::read_u8(&dir.join(&meta.flags_file), v)?;
    Ok(SensitivityFieldSet::new(meta.measure, dims, meta.parameters, fields, flags)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_float32() {
        let dims = GridDims::new(3, 2, 1).unwrap();
        let f = vec![vec![0.1, 0.2, 0.3, 1.5, -0.25, 0.0], vec![1.0; 6]];
        let set = SensitivityFieldSet::new(Measure::Sobol, dims, vec!["P1".into(), "P2".into()], f.clone(), vec![0, 2, 0, 2, 2, 1])
            .unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_fields(&set, dir.path(), serde_json::json!({"k": 1})).unwrap();
        let back = read_fields(dir.path()).unwrap();
        assert_eq!(back.flags, set.flags);
        assert_eq!(back.param_names, set.param_names);
        for (a, b) in back.fields.iter().flatten().zip(f.iter().flatten()) {
            assert_eq!(*a, *b as f32 as f64);
        }
        assert!(dir.path().join("sens_P2.raw").exists());
        assert_eq!(read_fields_meta(dir.path()).unwrap().settings["k"], 1);
    }

    #[test]
    fn unsafe_names_are_refused() {
        let dims = GridDims::new(1, 1, 1).unwrap();
        let set = SensitivityFieldSet::new(Measure::Delta, dims, vec!["a/b".into()], vec![vec![0.0]], vec![0]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        assert!(write_fields(&set, dir.path(), serde_json::Value::Null).is_err());
    }
}
