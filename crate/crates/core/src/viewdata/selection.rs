//! Voxel selections from parallel-coordinates brushes and curve intervals.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sensitivity::SensitivityFieldSet;
use crate::sfc::SfcCurve;

/// Closed value interval on the axis of field `field`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Brush {
    pub field: usize,
    pub lo: f64,
    pub hi: f64,
}

/// Closed range of curve positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurveInterval {
    pub start: u32,
    pub end: u32,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Selection {
    /// Selected voxel indices, ascending.
    pub voxels: Vec<u32>,
    pub brushes: Vec<Brush>,
    pub intervals: Vec<CurveInterval>,
}

impl Selection {
    pub fn len(&self) -> usize {
        self.voxels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.voxels.is_empty()
    }

    pub fn mask(&self, voxel_count: usize) -> Vec<bool> {
        let mut m = vec![false; voxel_count];
        for &v in &self.voxels {
            m[v as usize] = true;
        }
        m
    }
}

/// Combines brushes and curve intervals into one voxel set.
///
/// Every brush must hold (intersection, also for several brushes on one
/// axis), so adding a brush never grows the selection. Curve intervals are
/// united. With both kinds present the two sets are intersected; with
/// neither, every voxel is selected.
pub fn resolve_selection(
    brushes: &[Brush],
    intervals: &[CurveInterval],
    fields: &SensitivityFieldSet,
    curve: Option<&SfcCurve>,
) -> Result<Selection> {
    let v = fields.voxel_count();
    for b in brushes {
        if b.field >= fields.field_count() {
            return Err(Error::BadParamIndex(b.field));
        }
        if !(b.lo <= b.hi) {
            return Err(Error::InvalidConfig("brush interval must satisfy lo <= hi"));
        }
    }
    if intervals.iter().any(|i| i.start > i.end) {
        return Err(Error::InvalidConfig("curve interval must satisfy start <= end"));
    }

    let mut keep = vec![true; v];
    for b in brushes {
        let field = &fields.fields[b.field];
        for (k, &s) in keep.iter_mut().zip(field) {
            *k &= s >= b.lo && s <= b.hi;
        }
    }
    if !intervals.is_empty() {
        let curve = curve.ok_or(Error::InvalidConfig("curve intervals need a curve"))?;
        if curve.dims() != fields.dims {
            return Err(Error::DimsMismatch(curve.dims(), fields.dims));
        }
        let mut on_curve = vec![false; v];
        for i in intervals {
            let end = (i.end as usize).min(v.saturating_sub(1));
            for p in i.start as usize..=end {
                if p < v {
                    on_curve[curve.order()[p] as usize] = true;
                }
            }
        }
        keep.iter_mut().zip(&on_curve).for_each(|(k, &c)| *k &= c);
    }
    let voxels = keep.iter().enumerate().filter(|(_, &k)| k).map(|(x, _)| x as u32).collect();
    Ok(Selection { voxels, brushes: brushes.to_vec(), intervals: intervals.to_vec() })
}
