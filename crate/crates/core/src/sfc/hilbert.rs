//! Hilbert curves on power-of-two squares and cubes.
//!
//! Uses Skilling's transpose formulation: the curve index is spread bitwise
//! over the axes, then Gray decoding and a sweep of conditional swaps and
//! inversions turn it into coordinates.

use alloc::vec::Vec;

use super::{CurveKind, SfcConfig, SfcCurve};
use crate::error::{Error, Result};
use crate::grid::GridDims;

/// Coordinates of Hilbert index `h` on a grid of side `2^bits` in `n` axes.
fn index_to_axes(h: u64, bits: u32, n: usize) -> [u32; 3] {
    let mut x = [0u32; 3];
    // bit j (from the top) of h lands in axis j % n, level bits − 1 − j / n
    for j in 0..bits as usize * n {
        let bit = (h >> (bits as usize * n - 1 - j)) & 1;
        x[j % n] |= (bit as u32) << (bits as usize - 1 - j / n);
    }
    if bits == 0 {
        return x;
    }
    let top = 2u32 << (bits - 1);
    let t = x[n - 1] >> 1;
    for i in (1..n).rev() {
        x[i] ^= x[i - 1];
    }
    x[0] ^= t;
    let mut q = 2u32;
    while q != top {
        let p = q - 1;
        for i in (0..n).rev() {
            if x[i] & q != 0 {
                x[0] ^= p;
            } else {
                let t = (x[0] ^ x[i]) & p;
                x[0] ^= t;
                x[i] ^= t;
            }
        }
        q <<= 1;
    }
    x
}

/// Hilbert order of a `2^k` square (`nz == 1`) or cube. An open path.
pub fn hilbert_curve(dims: GridDims) -> Result<SfcCurve> {
    let side = dims.nx;
    let square = dims.nz == 1 && dims.ny == side;
    let cube = dims.ny == side && dims.nz == side;
    if !side.is_power_of_two() || !(square || cube) {
        return Err(Error::UnsupportedDims(dims));
    }
    let n = if square && side > 1 { 2 } else { 3 };
    let bits = side.trailing_zeros();
    let order: Vec<u32> = (0..dims.voxel_count() as u64)
        .map(|h| {
            let c = index_to_axes(h, bits, n);
            dims.index(c[0] as usize, c[1] as usize, if n == 3 { c[2] as usize } else { 0 }) as u32
        })
        .collect();
    SfcCurve::new(CurveKind::Hilbert, dims, SfcConfig::default(), order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_is_an_l_order() {
        let c = hilbert_curve(GridDims::new(2, 2, 1).unwrap()).unwrap();
        assert_eq!(c.order().len(), 4);
        assert_eq!(c.order()[0], 0);
    }

    #[test]
    fn cubes_are_valid() {
        for n in [1, 2, 4, 8, 16] {
            hilbert_curve(GridDims::cube(n).unwrap()).unwrap().validate().unwrap();
        }
        hilbert_curve(GridDims::new(16, 16, 1).unwrap()).unwrap().validate().unwrap();
    }

    #[test]
    fn non_power_of_two() {
        let d = GridDims::new(12, 12, 1).unwrap();
        assert_eq!(hilbert_curve(d).unwrap_err(), Error::UnsupportedDims(d));
        let d = GridDims::new(8, 8, 4).unwrap();
        assert_eq!(hilbert_curve(d).unwrap_err(), Error::UnsupportedDims(d));
    }
}
