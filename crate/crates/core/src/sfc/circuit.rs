//! Circuit graph: the grid tiled into 2×2×2 blocks (2×2 in 2D), each carrying
//! a local Hamiltonian cycle, and the weighted dual graph between blocks.

use alloc::vec;
use alloc::vec::Vec;

use super::distance::distance_unchecked;
use super::SfcConfig;
use crate::error::{Error, Result};
use crate::grid::GridDims;
use crate::par;
use crate::sensitivity::SensitivityFieldSet;

/// Hamiltonian cycles of the unit square or cube graph.
///
/// Local vertex `l` sits at offset `(l & 1, (l >> 1) & 1, (l >> 2) & 1)`
/// inside its block. Each cycle is listed once (one start, one direction).
#[derive(Clone, Debug)]
pub(crate) struct BlockCycles {
    pub(crate) dim: usize,
    pub(crate) cycles: Vec<Vec<u8>>,
    /// Bit `u * 8 + v` (`u < v`) is set when the cycle uses edge `u–v`.
    masks: Vec<u64>,
}

pub(crate) fn edge_bit(u: u8, v: u8) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    1u64 << (a * 8 + b)
}

impl BlockCycles {
    pub(crate) fn new(dim: usize) -> Self {
        let n = 1u8 << dim;
        let mut cycles = Vec::new();
        let mut path = vec![0u8];
        let mut used = 1u32;
        extend(dim, n, &mut path, &mut used, &mut cycles);
        let masks = cycles
            .iter()
            .map(|c: &Vec<u8>| (0..c.len()).fold(0, |m, i| m | edge_bit(c[i], c[(i + 1) % c.len()])))
            .collect();
        Self { dim, cycles, masks }
    }

    pub(crate) fn vertices(&self) -> usize {
        1 << self.dim
    }

    pub(crate) fn has_edge(&self, cycle: usize, u: u8, v: u8) -> bool {
        self.masks[cycle] & edge_bit(u, v) != 0
    }

    /// Cycle edges lying on the block face `axis = side`, in a fixed order.
    pub(crate) fn face_edges(&self, cycle: usize, axis: usize, side: u8) -> Vec<(u8, u8)> {
        let n = self.vertices() as u8;
        let mut out = Vec::new();
        for u in 0..n {
            if (u >> axis) & 1 != side {
                continue;
            }
            for other in 0..self.dim {
                let v = u ^ (1 << other);
                if other != axis && u < v && self.has_edge(cycle, u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

fn extend(dim: usize, n: u8, path: &mut Vec<u8>, used: &mut u32, out: &mut Vec<Vec<u8>>) {
    let last = *path.last().unwrap();
    if path.len() == n as usize {
        let closes = (last ^ path[0]).count_ones() == 1;
        if closes && path[1] < last {
            out.push(path.clone());
        }
        return;
    }
    for axis in 0..dim {
        let v = last ^ (1 << axis);
        if *used & (1 << v) == 0 {
            *used |= 1 << v;
            path.push(v);
            extend(dim, n, path, used, out);
            path.pop();
            *used &= !(1 << v);
        }
    }
}

/// An edge of the dual graph between two face-adjacent blocks, `a < b`,
/// with `b` the neighbour of `a` in the positive `axis` direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualEdge {
    pub a: u32,
    pub b: u32,
    pub axis: u8,
    /// Normalized value-coherency term.
    pub value_term: f64,
    /// Normalized positional-coherency term.
    pub position_term: f64,
    pub weight: f64,
}

#[derive(Clone, Debug)]
pub struct CircuitGraph {
    pub dims: GridDims,
    /// Block counts per axis.
    pub cells: [usize; 3],
    pub edges: Vec<DualEdge>,
    pub(crate) blocks: BlockCycles,
}

impl CircuitGraph {
    pub fn cell_count(&self) -> usize {
        self.cells[0] * self.cells[1] * self.cells[2]
    }

    pub fn cell_coords(&self, cell: usize) -> [usize; 3] {
        let [cx, cy, _] = self.cells;
        [cell % cx, (cell / cx) % cy, cell / (cx * cy)]
    }

    /// Global voxel index of local vertex `l` of block `cell`.
    pub fn voxel(&self, cell: usize, l: u8) -> usize {
        let [x, y, z] = self.cell_coords(cell);
        let dz = if self.blocks.dim == 3 { ((l >> 2) & 1) as usize } else { 0 };
        self.dims.index(2 * x + (l & 1) as usize, 2 * y + ((l >> 1) & 1) as usize, 2 * z + dz)
    }

    /// Voxels of every block in the order of its initial local cycle.
    pub fn local_cycle(&self, cell: usize) -> Vec<usize> {
        self.blocks.cycles[0].iter().map(|&l| self.voxel(cell, l)).collect()
    }

    fn center(&self, cell: usize) -> [f64; 3] {
        let [x, y, z] = self.cell_coords(cell);
        let zc = if self.blocks.dim == 3 { 2.0 * z as f64 + 0.5 } else { 0.0 };
        [2.0 * x as f64 + 0.5, 2.0 * y as f64 + 0.5, zc]
    }
}

/// Checks that the grid can be tiled by 2×2×2 blocks (2×2 when `nz == 1`).
pub fn check_even(dims: GridDims) -> Result<()> {
    let even = |n: usize| n % 2 == 0;
    if even(dims.nx) && even(dims.ny) && (even(dims.nz) || dims.nz == 1) {
        Ok(())
    } else {
        Err(Error::OddDimension(dims))
    }
}

/// Dual graph of the block tiling weighted by `W = (1 − α) N + α R`.
///
/// `N` is the mean vector distance over the voxel pairs across the shared
/// face and `R` the difference of the blocks' distances to the reference
/// point; both are divided by their maximum over all edges (except cosine
/// `N`, which is already bounded).
pub fn build_circuit_graph(fields: &SensitivityFieldSet, cfg: &SfcConfig) -> Result<CircuitGraph> {
    build_from_fields(fields.dims, &fields.fields, cfg)
}

/// [`build_circuit_graph`] for plain field-major data.
pub fn build_from_fields(dims: GridDims, fields: &[Vec<f64>], cfg: &SfcConfig) -> Result<CircuitGraph> {
    cfg.validate()?;
    check_even(dims)?;
    let v = dims.voxel_count();
    if let Some(bad) = fields.iter().find(|f| f.len() != v) {
        return Err(Error::SizeMismatch { expected: v, found: bad.len() });
    }
    let dim = if dims.is_2d() { 2 } else { 3 };
    let cells = [dims.nx / 2, dims.ny / 2, if dim == 3 { dims.nz / 2 } else { 1 }];
    let mut graph = CircuitGraph { dims, cells, edges: Vec::new(), blocks: BlockCycles::new(dim) };

    let mut pairs = Vec::new();
    let cell_count = graph.cell_count();
    for a in 0..cell_count {
        let c = graph.cell_coords(a);
        for axis in 0..dim {
            if c[axis] + 1 < cells[axis] {
                let stride = [1, cells[0], cells[0] * cells[1]][axis];
                pairs.push((a, a + stride, axis));
            }
        }
    }

    // voxel-major copy so each sensitivity vector is contiguous
    let n = fields.len();
    let mut vectors = vec![0.0; v * n];
    for (i, f) in fields.iter().enumerate() {
        for (x, &val) in f.iter().enumerate() {
            vectors[x * n + i] = val;
        }
    }
    let vec_at = |x: usize| &vectors[x * n..(x + 1) * n];

    let g = &graph;
    let raw: Vec<(f64, f64)> = par::map_range(pairs.len(), |k| {
        let (a, b, axis) = pairs[k];
        let face: Vec<u8> = (0..g.blocks.vertices() as u8).filter(|l| (l >> axis) & 1 == 1).collect();
        let value = face
            .iter()
            .map(|&l| distance_unchecked(cfg.distance, vec_at(g.voxel(a, l)), vec_at(g.voxel(b, l ^ (1 << axis)))))
            .sum::<f64>()
            / face.len() as f64;
        let r = |cell: usize| {
            let p = g.center(cell);
            let d = [p[0] - cfg.ref_point[0], p[1] - cfg.ref_point[1], p[2] - cfg.ref_point[2]];
            libm::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2])
        };
        (value, (r(a) - r(b)).abs())
    });

    let max_n = raw.iter().map(|r| r.0).fold(0.0, f64::max);
    let max_r = raw.iter().map(|r| r.1).fold(0.0, f64::max);
    let scale_n = if cfg.distance.is_normalized_globally() && max_n > 0.0 { 1.0 / max_n } else { 1.0 };
    let scale_r = if max_r > 0.0 { 1.0 / max_r } else { 1.0 };
    graph.edges = pairs
        .iter()
        .zip(&raw)
        .map(|(&(a, b, axis), &(nv, rv))| {
            let (value_term, position_term) = (nv * scale_n, rv * scale_r);
            DualEdge {
                a: a as u32,
                b: b as u32,
                axis: axis as u8,
                value_term,
                position_term,
                weight: (1.0 - cfg.alpha) * value_term + cfg.alpha * position_term,
            }
        })
        .collect();
    Ok(graph)
}
