//! Parameter-by-curve heatmap: how the ensemble output over a selection
//! varies with one parameter.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::sfc::SfcCurve;

pub const DEFAULT_PARAM_BINS: usize = 150;
pub const DEFAULT_CURVE_BINS: usize = 500;

/// Row-major grid, one row per curve bin and one column per parameter bin.
/// Cells no run fell into are `NaN` and unfilled.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HeatmapGrid {
    pub param: String,
    pub param_index: usize,
    pub param_range: [f64; 2],
    pub rows: usize,
    pub cols: usize,
    pub selection_size: usize,
    /// First and last curve position covered by each row.
    pub row_positions: Vec<[u32; 2]>,
    pub values: Vec<f64>,
    pub filled: Vec<bool>,
    /// Runs per column.
    pub run_counts: Vec<u32>,
}

impl HeatmapGrid {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    /// Range of the filled values, or `None` when nothing is filled.
    pub fn value_range(&self) -> Option<[f64; 2]> {
        let mut it = self.values.iter().zip(&self.filled).filter(|(_, &f)| f).map(|(&v, _)| v);
        let first = it.next()?;
        Some(it.fold([first, first], |[lo, hi], v| [lo.min(v), hi.max(v)]))
    }
}

/// Column of `value` among `bins` equal-width bins over `[lo, hi]`.
pub fn param_bin(value: f64, lo: f64, hi: f64, bins: usize) -> usize {
    if !(hi > lo) {
        return 0;
    }
    let b = libm::floor((value - lo) / (hi - lo) * bins as f64);
    if b < 0.0 {
        0
    } else {
        (b as usize).min(bins - 1)
    }
}

/// Aggregates the ensemble over `selection`.
///
/// Columns split the declared range of parameter `param` into `param_bins`
/// equal bins. The selection is sorted along the curve and cut into
/// `min(curve_bins, |selection|)` chunks of near-equal size, one per row. A
/// cell is the mean output over the chunk's voxels and the column's runs.
pub fn heatmap_aggregate(
    ens: &Ensemble,
    curve: &SfcCurve,
    selection: &[u32],
    param: usize,
    param_bins: usize,
    curve_bins: usize,
) -> Result<HeatmapGrid> {
    let ps = ens.pspace();
    if param >= ps.param_count() {
        return Err(Error::BadParamIndex(param));
    }
    if selection.is_empty() {
        return Err(Error::EmptySelection);
    }
    if param_bins == 0 || curve_bins == 0 {
        return Err(Error::InvalidConfig("heatmap needs at least one bin per axis"));
    }
    if curve.dims() != ens.dims() {
        return Err(Error::DimsMismatch(curve.dims(), ens.dims()));
    }
    let v = ens.dims().voxel_count();
    let mut positions = Vec::with_capacity(selection.len());
    for &x in selection {
        let p = curve.inverse().get(x as usize).ok_or(Error::IndexOutOfBounds { index: x as usize, len: v })?;
        positions.push(*p);
    }
    positions.sort_unstable();
    positions.dedup();
    let n = positions.len();
    let voxels: Vec<usize> = positions.iter().map(|&p| curve.order()[p as usize] as usize).collect();

    let rows = curve_bins.min(n);
    let cols = param_bins;
    let bounds: Vec<usize> = (0..=rows).map(|r| r * n / rows).collect();
    let spec = &ps.params()[param];
    let (lo, hi) = (spec.min, spec.max);

    let mut sum = vec![0.0f64; rows * cols];
    let mut count = vec![0u64; rows * cols];
    let mut run_counts = vec![0u32; cols];
    for run in 0..ens.run_count() {
        let col = param_bin(ps.value(run, param), lo, hi, cols);
        run_counts[col] += 1;
        let vol = ens.volume(run);
        for r in 0..rows {
            let chunk = &voxels[bounds[r]..bounds[r + 1]];
            let s: f64 = chunk.iter().map(|&x| vol[x] as f64).sum();
            sum[r * cols + col] += s;
            count[r * cols + col] += chunk.len() as u64;
        }
    }
    let filled: Vec<bool> = count.iter().map(|&c| c > 0).collect();
    let values = sum.iter().zip(&count).map(|(&s, &c)| if c > 0 { s / c as f64 } else { f64::NAN }).collect();
    let row_positions = (0..rows).map(|r| [positions[bounds[r]], positions[bounds[r + 1] - 1]]).collect();
    Ok(HeatmapGrid {
        param: spec.name.clone(),
        param_index: param,
        param_range: [lo, hi],
        rows,
        cols,
        selection_size: n,
        row_positions,
        values,
        filled,
        run_counts,
    })
}

/// Fills every empty cell with the value of the nearest filled cell
/// (Euclidean distance in cell units; ties go to the smaller row, then the
/// smaller column).
pub fn nn_fill(grid: &HeatmapGrid) -> Result<HeatmapGrid> {
    let (rows, cols) = (grid.rows, grid.cols);
    if !grid.filled.iter().any(|&f| f) {
        return Err(Error::AllEmpty);
    }
    // filled rows per column, ascending
    let per_col: Vec<Vec<usize>> =
        (0..cols).map(|c| (0..rows).filter(|&r| grid.filled[r * cols + c]).collect()).collect();
    let mut out = grid.clone();
    for r in 0..rows {
        for c in 0..cols {
            if grid.filled[r * cols + c] {
                continue;
            }
            let mut best: Option<(usize, usize, usize)> = None;
            for (cc, filled_rows) in per_col.iter().enumerate() {
                let i = filled_rows.partition_point(|&fr| fr < r);
                let dc = cc.abs_diff(c);
                for &fr in filled_rows[i.saturating_sub(1)..(i + 1).min(filled_rows.len())].iter() {
                    let dr = fr.abs_diff(r);
                    let cand = (dr * dr + dc * dc, fr, cc);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
            let (_, fr, fc) = best.expect("some cell is filled");
            out.values[r * cols + c] = grid.values[fr * cols + fc];
            out.filled[r * cols + c] = true;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{ParameterSpace, ParameterSpec, SampleLayout};
    use crate::grid::GridDims;
    use crate::sfc::scanline_curve;
    use alloc::string::ToString;

    fn ensemble() -> Ensemble {
        let dims = GridDims::new(4, 1, 1).unwrap();
        let params = vec![ParameterSpec::new("p", 0.0, 1.0)];
        let ps = ParameterSpace::from_rows(params, &[vec![0.1], vec![0.2], vec![0.9]], SampleLayout::Unstructured).unwrap();
        let vols = vec![vec![1.0, 2.0, 3.0, 4.0], vec![3.0, 4.0, 5.0, 6.0], vec![10.0; 4]];
        Ensemble::new("t", dims, ps, vols, vec![]).unwrap()
    }

    #[test]
    fn aggregation_by_hand() {
        let e = ensemble();
        let c = scanline_curve(e.dims()).unwrap();
        let g = heatmap_aggregate(&e, &c, &[3, 0, 1], 0, 2, 500).unwrap();
        assert_eq!((g.rows, g.cols, g.selection_size), (3, 2, 3));
        assert_eq!(g.run_counts, [2, 1]);
        // row 0 is voxel 0: runs 0 and 1 fall in column 0
        assert_eq!(g.get(0, 0), 2.0);
        assert_eq!(g.get(2, 0), 5.0);
        assert_eq!(g.get(1, 1), 10.0);
        assert!(g.filled.iter().all(|&f| f));
    }

    #[test]
    fn rows_are_equal_count_chunks() {
        let e = ensemble();
        let c = scanline_curve(e.dims()).unwrap();
        let g = heatmap_aggregate(&e, &c, &[0, 1, 2, 3], 0, 1, 2).unwrap();
        assert_eq!(g.row_positions, [[0, 1], [2, 3]]);
        assert_eq!(g.get(0, 0), (1.0 + 2.0 + 3.0 + 4.0 + 20.0) / 6.0);
    }

    #[test]
    fn errors() {
        let e = ensemble();
        let c = scanline_curve(e.dims()).unwrap();
        assert_eq!(heatmap_aggregate(&e, &c, &[], 0, 2, 2), Err(Error::EmptySelection));
        assert_eq!(heatmap_aggregate(&e, &c, &[0], 3, 2, 2), Err(Error::BadParamIndex(3)));
    }

    fn grid(rows: usize, cols: usize, cells: &[(usize, usize, f64)]) -> HeatmapGrid {
        let mut values = vec![f64::NAN; rows * cols];
        let mut filled = vec![false; rows * cols];
        for &(r, c, v) in cells {
            values[r * cols + c] = v;
            filled[r * cols + c] = true;
        }
        HeatmapGrid {
            param: "p".to_string(),
            param_index: 0,
            param_range: [0.0, 1.0],
            rows,
            cols,
            selection_size: rows,
            row_positions: vec![[0, 0]; rows],
            values,
            filled,
            run_counts: vec![0; cols],
        }
    }

    #[test]
    fn fill_nearest_with_ties() {
        let g = grid(3, 3, &[(0, 0, 1.0), (2, 2, 2.0)]);
        let f = nn_fill(&g).unwrap();
        assert_eq!(f.get(0, 2), 1.0); // tie, smaller row wins
        assert_eq!(f.get(1, 1), 1.0);
        assert_eq!(f.get(2, 1), 2.0);
        assert_eq!(f.get(1, 0), 1.0);
        assert!(f.filled.iter().all(|&x| x));
    }

    #[test]
    fn fill_needs_something() {
        assert_eq!(nn_fill(&grid(2, 2, &[])), Err(Error::AllEmpty));
    }
}
