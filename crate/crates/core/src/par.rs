//! Sequential or rayon-backed mapping helpers.

use alloc::vec::Vec;

use crate::ensemble::Ensemble;

const VOXEL_BLOCK: usize = 64;

#[cfg(feature = "parallel")]
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Maps `f(state, voxel, series)` over every voxel of `ens`.
///
/// Series are gathered in blocks of consecutive voxels so that each volume
/// is read contiguously; `init` builds one scratch state per worker.
pub(crate) fn map_voxels<S, T, I, F>(ens: &Ensemble, init: I, f: F) -> Vec<T>
where
    T: Send,
    I: Fn() -> S + Sync + Send,
    F: Fn(&mut S, usize, &[f64]) -> T + Sync + Send,
{
    let v = ens.dims().voxel_count();
    let r = ens.run_count();
    let blocks = v.div_ceil(VOXEL_BLOCK);
    let run_block = |state: &mut (S, Vec<f64>), b: usize| -> Vec<T> {
        let start = b * VOXEL_BLOCK;
        let count = VOXEL_BLOCK.min(v - start);
        ens.voxel_block(start, count, &mut state.1);
        (0..count).map(|k| f(&mut state.0, start + k, &state.1[k * r..(k + 1) * r])).collect()
    };

    #[cfg(feature = "parallel")]
    let per_block: Vec<Vec<T>> = {
        use rayon::prelude::*;
        (0..blocks).into_par_iter().map_init(|| (init(), Vec::new()), run_block).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_block: Vec<Vec<T>> = {
        let mut state = (init(), Vec::new());
        (0..blocks).map(|b| run_block(&mut state, b)).collect()
    };
    per_block.into_iter().flatten().collect()
}
