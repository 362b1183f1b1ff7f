//! Sensitivity values along the curve: horizon graphs for the leading
//! fields and a shared line chart for the rest.

use alloc::string::String;
use alloc::vec::Vec;

use super::horizon::{horizon_bands, HorizonSeries};
use crate::error::{Error, Result};
use crate::sensitivity::{Measure, SensitivityFieldSet};
use crate::sfc::SfcCurve;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HorizonTrack {
    pub name: String,
    pub field: usize,
    pub series: HorizonSeries,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LineSeries {
    pub name: String,
    pub field: usize,
    pub values: Vec<f64>,
    /// Voxels of the whole volume above the sensitive threshold.
    pub sensitive_count: usize,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SensitivityView {
    pub measure: Measure,
    pub bandwidth: f64,
    /// Curve positions of the sampled voxels, ascending.
    pub positions: Vec<u32>,
    /// Voxel at each entry of `positions`.
    pub voxels: Vec<u32>,
    pub horizons: Vec<HorizonTrack>,
    pub lines: Vec<LineSeries>,
    /// Indices into `lines`, back to front: fields with more sensitive
    /// voxels are drawn first so they do not hide the others.
    pub draw_order: Vec<usize>,
}

/// The first `m` fields of `axis_order` become horizon graphs, the rest line
/// chart series. Values are sampled at the voxels in `sample`, in curve order;
/// estimates below zero are shown as zero.
pub fn sensitivity_view(
    fields: &SensitivityFieldSet,
    curve: &SfcCurve,
    sample: &[u32],
    m: usize,
    axis_order: &[usize],
) -> Result<SensitivityView> {
    if curve.dims() != fields.dims {
        return Err(Error::DimsMismatch(curve.dims(), fields.dims));
    }
    if m > axis_order.len() {
        return Err(Error::InvalidConfig("more horizon graphs than fields"));
    }
    if let Some(&bad) = axis_order.iter().find(|&&i| i >= fields.field_count()) {
        return Err(Error::BadParamIndex(bad));
    }
    let v = fields.voxel_count();
    let mut positions = Vec::with_capacity(sample.len());
    for &x in sample {
        let p = curve.inverse().get(x as usize).ok_or(Error::IndexOutOfBounds { index: x as usize, len: v })?;
        positions.push(*p);
    }
    positions.sort_unstable();
    let voxels: Vec<u32> = positions.iter().map(|&p| curve.order()[p as usize]).collect();
    let along = |i: usize| -> Vec<f64> { voxels.iter().map(|&x| fields.fields[i][x as usize].max(0.0)).collect() };

    let bandwidth = fields.measure.band_width();
    let horizons = axis_order[..m]
        .iter()
        .map(|&i| {
            Ok(HorizonTrack { name: fields.param_names[i].clone(), field: i, series: horizon_bands(&along(i), bandwidth)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let lines: Vec<LineSeries> = axis_order[m..]
        .iter()
        .map(|&i| LineSeries {
            name: fields.param_names[i].clone(),
            field: i,
            values: along(i),
            sensitive_count: fields.sensitive_count(i),
        })
        .collect();
    let mut draw_order: Vec<usize> = (0..lines.len()).collect();
    draw_order.sort_by(|&a, &b| lines[b].sensitive_count.cmp(&lines[a].sensitive_count).then(a.cmp(&b)));
    Ok(SensitivityView { measure: fields.measure, bandwidth, positions, voxels, horizons, lines, draw_order })
}
