//! Regular voxel grids with x-fastest linear indexing.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Voxel counts per axis. `nz == 1` denotes a 2D grid.
///
/// Linear index of voxel `(x, y, z)` is `x + nx * (y + ny * z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridDims {
    pub nx: usize,
    pub ny: usize,
    pub nz: usize,
}

impl GridDims {
    pub fn new(nx: usize, ny: usize, nz: usize) -> Result<Self> {
        if nx == 0 || ny == 0 || nz == 0 {
            return Err(Error::InvalidDims([nx, ny, nz]));
        }
        nx.checked_mul(ny)
            .and_then(|v| v.checked_mul(nz))
            .filter(|&v| v <= u32::MAX as usize)
            .ok_or(Error::InvalidDims([nx, ny, nz]))?;
        Ok(Self { nx, ny, nz })
    }

    pub fn cube(n: usize) -> Result<Self> {
        Self::new(n, n, n)
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.nx, self.ny, self.nz]
    }

    pub fn voxel_count(&self) -> usize {
        self.nx * self.ny * self.nz
    }

    pub fn is_2d(&self) -> bool {
        self.nz == 1
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        debug_assert!(x < self.nx && y < self.ny && z < self.nz);
        x + self.nx * (y + self.ny * z)
    }

    #[inline]
    pub fn coords(&self, index: usize) -> [usize; 3] {
        let x = index % self.nx;
        let yz = index / self.nx;
        [x, yz % self.ny, yz / self.ny]
    }

    /// True when two voxels share a face (6-neighbourhood, 4 in 2D).
    pub fn face_adjacent(&self, a: usize, b: usize) -> bool {
        let [ax, ay, az] = self.coords(a);
        let [bx, by, bz] = self.coords(b);
        ax.abs_diff(bx) + ay.abs_diff(by) + az.abs_diff(bz) == 1
    }

    /// Euclidean distance of a voxel's lattice position to `point`.
    pub fn distance_to(&self, index: usize, point: [f64; 3]) -> f64 {
        let c = self.coords(index);
        let dx = c[0] as f64 - point[0];
        let dy = c[1] as f64 - point[1];
        let dz = c[2] as f64 - point[2];
        libm::sqrt(dx * dx + dy * dy + dz * dz)
    }
}

impl fmt::Display for GridDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.nx, self.ny, self.nz)
    }
}

/// Trilinear resampling of a scalar field onto another grid.
///
/// Voxel centres are aligned, so voxel `i` of the target maps to source
/// coordinate `(i + 0.5) * n_src / n_dst - 0.5`, clamped to the source grid.
pub fn resample_trilinear(src: &[f32], from: GridDims, to: GridDims) -> Result<Vec<f32>> {
    if src.len() != from.voxel_count() {
        return Err(Error::SizeMismatch { expected: from.voxel_count(), found: src.len() });
    }
    let axis = |n_src: usize, n_dst: usize| -> Vec<(usize, usize, f64)> {
        (0..n_dst)
            .map(|i| {
                let s = (i as f64 + 0.5) * n_src as f64 / n_dst as f64 - 0.5;
                let s = s.clamp(0.0, (n_src - 1) as f64);
                let lo = libm::floor(s) as usize;
                let hi = (lo + 1).min(n_src - 1);
                (lo, hi, s - lo as f64)
            })
            .collect()
    };
    let (ax, ay, az) = (axis(from.nx, to.nx), axis(from.ny, to.ny), axis(from.nz, to.nz));
    let at = |x: usize, y: usize, z: usize| src[from.index(x, y, z)] as f64;
    let mut out = Vec::with_capacity(to.voxel_count());
    for &(z0, z1, tz) in &az {
        for &(y0, y1, ty) in &ay {
            for &(x0, x1, tx) in &ax {
                let c00 = at(x0, y0, z0) * (1.0 - tx) + at(x1, y0, z0) * tx;
                let c10 = at(x0, y1, z0) * (1.0 - tx) + at(x1, y1, z0) * tx;
                let c01 = at(x0, y0, z1) * (1.0 - tx) + at(x1, y0, z1) * tx;
                let c11 = at(x0, y1, z1) * (1.0 - tx) + at(x1, y1, z1) * tx;
                let c0 = c00 * (1.0 - ty) + c10 * ty;
                let c1 = c01 * (1.0 - ty) + c11 * ty;
                out.push((c0 * (1.0 - tz) + c1 * tz) as f32);
            }
        }
    }
    Ok(out)
}
