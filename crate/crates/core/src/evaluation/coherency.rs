//! Value and positional coherency of a curve.

use alloc::vec::Vec;

use super::acf::autocorrelation;
use crate::error::{Error, Result};
use crate::grid::GridDims;
use crate::sensitivity::SensitivityFieldSet;
use crate::sfc::SfcCurve;

/// Default number of lags averaged into a coherency score.
pub const DEFAULT_MAX_LAG: usize = 100;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoherencyReport {
    pub value_coherency: f64,
    pub positional_coherency: f64,
    pub max_lag: usize,
    /// Field name and autocorrelation per lag, when requested.
    pub per_field_acf: Option<Vec<(alloc::string::String, Vec<f64>)>>,
}

fn check_dims(curve: &SfcCurve, dims: GridDims) -> Result<()> {
    if curve.dims() != dims {
        return Err(Error::DimsMismatch(curve.dims(), dims));
    }
    Ok(())
}

/// Mean over fields of the autocorrelation summary along the curve.
pub fn value_coherency(curve: &SfcCurve, fields: &SensitivityFieldSet, max_lag: usize) -> Result<f64> {
    check_dims(curve, fields.dims)?;
    value_coherency_of(curve, &fields.fields, max_lag)
}

/// [`value_coherency`] for plain field-major data on the curve's grid.
pub fn value_coherency_of(curve: &SfcCurve, fields: &[Vec<f64>], max_lag: usize) -> Result<f64> {
    if fields.is_empty() {
        return Err(Error::InvalidConfig("no fields to evaluate"));
    }
    let mut total = 0.0;
    for f in fields {
        if f.len() != curve.len() {
            return Err(Error::SizeMismatch { expected: curve.len(), found: f.len() });
        }
        total += autocorrelation(&curve.linearize(f), max_lag)?.summary;
    }
    Ok(total / fields.len() as f64)
}

/// Autocorrelation summary of the distance of each curve point to `ref_point`.
pub fn positional_coherency(curve: &SfcCurve, ref_point: [f64; 3], max_lag: usize) -> Result<f64> {
    let dims = curve.dims();
    let t: Vec<f64> = curve.order().iter().map(|&v| dims.distance_to(v as usize, ref_point)).collect();
    Ok(autocorrelation(&t, max_lag)?.summary)
}

/// Both coherencies, optionally with every field's full autocorrelation.
pub fn coherency_report(
    curve: &SfcCurve,
    fields: &SensitivityFieldSet,
    ref_point: [f64; 3],
    max_lag: usize,
    keep_acf: bool,
) -> Result<CoherencyReport> {
    check_dims(curve, fields.dims)?;
    let per_field_acf = if keep_acf {
        let mut out = Vec::with_capacity(fields.field_count());
        for (name, f) in fields.param_names.iter().zip(&fields.fields) {
            out.push((name.clone(), autocorrelation(&curve.linearize(f), max_lag)?.values));
        }
        Some(out)
    } else {
        None
    };
    Ok(CoherencyReport {
        value_coherency: value_coherency(curve, fields, max_lag)?,
        positional_coherency: positional_coherency(curve, ref_point, max_lag)?,
        max_lag,
        per_field_acf,
    })
}
