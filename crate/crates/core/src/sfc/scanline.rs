//! Serpentine scanline order.

use alloc::vec::Vec;

use super::{CurveKind, SfcConfig, SfcCurve};
use crate::error::Result;
use crate::grid::GridDims;

/// x fastest, then y, then z; every other row and every other slice is
/// traversed backwards so consecutive voxels stay face-adjacent.
pub fn scanline_curve(dims: GridDims) -> Result<SfcCurve> {
    let mut order = Vec::with_capacity(dims.voxel_count());
    let mut row = 0usize;
    for z in 0..dims.nz {
        for yi in 0..dims.ny {
            let y = if z % 2 == 0 { yi } else { dims.ny - 1 - yi };
            for xi in 0..dims.nx {
                let x = if row % 2 == 0 { xi } else { dims.nx - 1 - xi };
                order.push(dims.index(x, y, z) as u32);
            }
            row += 1;
        }
    }
    SfcCurve::new(CurveKind::Scanline, dims, SfcConfig::default(), order)
}
