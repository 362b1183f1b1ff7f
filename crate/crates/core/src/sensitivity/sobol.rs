//! First-order Sobol indices from Saltelli-layout samples.

use alloc::vec::Vec;

use crate::ensemble::{Ensemble, SampleLayout};
use crate::error::{Error, Result};
use crate::par;
use crate::sampling::SaltelliBlocks;
use crate::sensitivity::{Measure, SensitivityFieldSet};

/// First-order indices `V_i / D` for outputs `y` laid out as A, B, AB_1..AB_n.
///
/// `V_i = mean((y_B - m) (y_ABi - y_A))` and `D` is the population variance of
/// the A and B rows, `m` their mean. Centering makes the ratio exactly
/// invariant under affine maps of `y`. Estimates are not clamped.
pub fn sobol_first_order(y: &[f64], n: usize, base_n: usize) -> Result<Vec<f64>> {
    let blocks = SaltelliBlocks { base_n, params: n };
    if y.len() != blocks.rows() || base_n == 0 {
        return Err(Error::LayoutMismatch { expected: blocks.rows(), found: y.len() });
    }
    let ab_rows = &y[..2 * base_n];
    let first = ab_rows[0];
    if ab_rows.iter().all(|&v| v == first) {
        return Err(Error::VarianceZero);
    }
    let mean = ab_rows.iter().sum::<f64>() / ab_rows.len() as f64;
    let var = ab_rows.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / ab_rows.len() as f64;
    if var <= 0.0 {
        return Err(Error::VarianceZero);
    }
    Ok((0..n)
        .map(|i| {
            let vi = (0..base_n)
                .map(|j| (y[blocks.b(j)] - mean) * (y[blocks.ab(i, j)] - y[blocks.a(j)]))
                .sum::<f64>()
                / base_n as f64;
            vi / var
        })
        .collect())
}

/// Per-voxel first-order indices. Constant voxels are stored as zeros and
/// flagged inert; estimates outside `[0, 1]` are kept and flagged.
pub fn sobol_volume(ens: &Ensemble) -> Result<SensitivityFieldSet> {
    let ps = ens.pspace();
    let SampleLayout::Saltelli { base_n } = ps.layout() else {
        return Err(Error::NotSaltelliLayout);
    };
    let n = ps.param_count();
    let voxels = par::map_voxels(
        ens,
        || (),
        |_, _, y| match sobol_first_order(y, n, base_n) {
            Ok(s) => (s, false),
            Err(_) => (alloc::vec![0.0; n], true),
        },
    );
    Ok(SensitivityFieldSet::from_voxels(Measure::Sobol, ens.dims(), ps.names(), voxels))
}
