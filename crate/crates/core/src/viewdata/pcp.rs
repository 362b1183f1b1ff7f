//! Parallel-coordinates payload: one axis per sensitivity field, one
//! polyline per sampled voxel.

use alloc::string::String;
use alloc::vec::Vec;

use crate::ensemble::AuxField;
use crate::error::{Error, Result};
use crate::sensitivity::{Measure, SensitivityFieldSet};

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PcpAxis {
    pub name: String,
    /// Index of the field in the field set.
    pub field: usize,
    pub mean: f64,
    /// Share of voxels above the sensitive threshold.
    pub sensitive_fraction: f64,
}

/// Auxiliary axis drawn outside the sensitivity axes, with its own range.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuxAxis {
    pub name: String,
    pub min: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PcpPayload {
    pub measure: Measure,
    /// Retained sensitivity axes in display order.
    pub axes: Vec<PcpAxis>,
    /// Names of axes removed by the sensitive-fraction filter.
    pub filtered: Vec<String>,
    /// Range shared by all sensitivity axes.
    pub scale: [f64; 2],
    pub aux_axes: Vec<AuxAxis>,
    pub voxels: Vec<u32>,
    /// Per sampled voxel: values on `axes`, then on `aux_axes`.
    pub polylines: Vec<Vec<f64>>,
}

/// Axis order by descending mean, ties by field index.
pub fn axis_order_by_mean(fields: &SensitivityFieldSet) -> Vec<usize> {
    let means: Vec<f64> = (0..fields.field_count()).map(|i| fields.mean(i)).collect();
    let mut order: Vec<usize> = (0..fields.field_count()).collect();
    order.sort_by(|&a, &b| means[b].total_cmp(&means[a]).then(a.cmp(&b)));
    order
}

/// Builds the payload for the voxels in `sample`.
///
/// Axes whose sensitive-voxel share (in percent) is below `filter_pct` are
/// dropped. The rest follow `order` when given (field indices; unlisted
/// fields are appended by mean) or descending mean otherwise.
pub fn pcp_payload(
    fields: &SensitivityFieldSet,
    aux: &[AuxField],
    sample: &[u32],
    filter_pct: f64,
    order: Option<&[usize]>,
) -> Result<PcpPayload> {
    let n = fields.field_count();
    if n == 0 {
        return Err(Error::InvalidConfig("no sensitivity fields"));
    }
    let v = fields.voxel_count();
    if let Some(&bad) = sample.iter().find(|&&x| x as usize >= v) {
        return Err(Error::IndexOutOfBounds { index: bad as usize, len: v });
    }
    let mut full_order = Vec::with_capacity(n);
    if let Some(o) = order {
        for &i in o {
            if i >= n {
                return Err(Error::BadParamIndex(i));
            }
            if !full_order.contains(&i) {
                full_order.push(i);
            }
        }
    }
    for i in axis_order_by_mean(fields) {
        if !full_order.contains(&i) {
            full_order.push(i);
        }
    }

    let mut axes = Vec::new();
    let mut filtered = Vec::new();
    for i in full_order {
        let fraction = fields.sensitive_count(i) as f64 / v as f64;
        let name = fields.param_names[i].clone();
        if fraction * 100.0 < filter_pct {
            filtered.push(name);
        } else {
            axes.push(PcpAxis { name, field: i, mean: fields.mean(i), sensitive_fraction: fraction });
        }
    }
    if axes.is_empty() {
        return Err(Error::AllAxesFiltered);
    }

    let (mut lo, mut hi) = (0.0f64, f64::NEG_INFINITY);
    for a in &axes {
        for &x in &fields.fields[a.field] {
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    if !(hi > lo) {
        hi = lo + 1.0;
    }

    let aux_axes: Vec<AuxAxis> = aux
        .iter()
        .map(|f| {
            let (mn, mx) = f.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
                (a.min(x as f64), b.max(x as f64))
            });
            AuxAxis { name: f.name.clone(), min: mn, max: mx }
        })
        .collect();

    let polylines = sample
        .iter()
        .map(|&x| {
            axes.iter()
                .map(|a| fields.fields[a.field][x as usize])
                .chain(aux.iter().map(|f| f.values[x as usize] as f64))
                .collect()
        })
        .collect();

    Ok(PcpPayload {
        measure: fields.measure,
        axes,
        filtered,
        scale: [lo, hi],
        aux_axes,
        voxels: sample.to_vec(),
        polylines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridDims;
    use alloc::string::ToString;
    use alloc::vec;

    fn fields() -> SensitivityFieldSet {
        let dims = GridDims::new(4, 1, 1).unwrap();
        SensitivityFieldSet::new(
            Measure::Delta,
            dims,
            vec!["a".to_string(), "b".to_string(), "c".to_string()],
            vec![vec![0.1, 0.1, 0.1, 0.1], vec![0.9, 0.5, 0.0, 0.3], vec![0.0; 4]],
            vec![0; 4],
        )
        .unwrap()
    }

    #[test]
    fn zero_field_is_filtered() {
        let p = pcp_payload(&fields(), &[], &[0, 2], 5.0, None).unwrap();
        let names: Vec<&str> = p.axes.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["b"]);
        assert_eq!(p.filtered, ["a", "c"]);
        assert_eq!(p.polylines, vec![vec![0.9], vec![0.0]]);
    }

    #[test]
    fn no_filter_keeps_all_sorted_by_mean() {
        let p = pcp_payload(&fields(), &[], &[1], 0.0, None).unwrap();
        let names: Vec<&str> = p.axes.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["b", "a", "c"]);
        assert_eq!(p.scale, [0.0, 0.9]);
    }

    #[test]
    fn override_and_aux() {
        let aux = [AuxField { name: "wall".to_string(), values: vec![1.0, 2.0, 3.0, 4.0] }];
        let p = pcp_payload(&fields(), &aux, &[3], 0.0, Some(&[2])).unwrap();
        let names: Vec<&str> = p.axes.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["c", "b", "a"]);
        assert_eq!(p.polylines[0], vec![0.0, 0.3, 0.1, 4.0]);
        assert_eq!(p.aux_axes[0], AuxAxis { name: "wall".to_string(), min: 1.0, max: 4.0 });
    }

    #[test]
    fn everything_filtered() {
        assert_eq!(pcp_payload(&fields(), &[], &[0], 90.0, None), Err(Error::AllAxesFiltered));
    }
}
