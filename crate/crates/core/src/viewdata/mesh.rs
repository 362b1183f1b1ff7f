//! Boundary mesh of a voxel selection (marching cubes at iso 0.5).
//!
//! The mask is padded by one empty layer, so the surface is closed.
//! Coordinates are lattice positions (voxel `(x, y, z)` sits at that point)
//! and a vertex lies at the midpoint of the lattice edge it cuts, half a
//! voxel from the selected centre. The case table is derived
//! on first use from the cube's face structure; on faces with two diagonal
//! inside corners the corners are kept apart, which keeps neighbouring
//! cubes consistent and the surface watertight.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::grid::GridDims;

#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Mesh {
    pub vertices: Vec<[f32; 3]>,
    /// Counter-clockwise seen from outside the selection.
    pub triangles: Vec<[u32; 3]>,
}

impl Mesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// Axis-aligned bounds `(min, max)`, `None` for an empty mesh.
    pub fn bounds(&self) -> Option<([f32; 3], [f32; 3])> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(mut lo, mut hi), v| {
            for a in 0..3 {
                lo[a] = lo[a].min(v[a]);
                hi[a] = hi[a].max(v[a]);
            }
            (lo, hi)
        }))
    }

    /// `V − E + F` over the indexed mesh.
    pub fn euler_characteristic(&self) -> i64 {
        let mut edges: Vec<(u32, u32)> = self
            .triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        self.vertices.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }

    /// Signed enclosed volume; positive when triangles face outwards.
    pub fn signed_volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.vertices[i as usize].map(f64::from));
                a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
            })
            .sum::<f64>()
            / 6.0
    }
}

/// Local cube edge between corners `a < b` (differing in one bit).
const fn edge_of(a: u8, b: u8) -> u8 {
    let axis = (a ^ b).trailing_zeros() as u8;
    // the four edges along an axis are numbered by the two remaining bits
    let rest = match axis {
        0 => a >> 1,
        1 => (a & 1) | ((a >> 2) << 1),
        _ => a & 3,
    };
    axis * 4 + rest
}

fn edge_corners(e: u8) -> (u8, u8) {
    let (axis, rest) = (e / 4, e % 4);
    let a = match axis {
        0 => rest << 1,
        1 => (rest & 1) | ((rest >> 1) << 2),
        _ => rest,
    };
    (a, a | (1 << axis))
}

fn corner_pos(c: u8) -> [f64; 3] {
    [(c & 1) as f64, ((c >> 1) & 1) as f64, ((c >> 2) & 1) as f64]
}

fn edge_mid(e: u8) -> [f64; 3] {
    let (a, b) = edge_corners(e);
    let (p, q) = (corner_pos(a), corner_pos(b));
    [(p[0] + q[0]) * 0.5, (p[1] + q[1]) * 0.5, (p[2] + q[2]) * 0.5]
}

/// Triangles (as local edge triples) for every inside-corner bitmask.
fn case_table() -> Vec<Vec<[u8; 3]>> {
    (0u16..256).map(|m| case_triangles(m as u8)).collect()
}

fn case_triangles(mask: u8) -> Vec<[u8; 3]> {
    let inside = |c: u8| mask & (1 << c) != 0;
    // segment partner(s) of each crossing edge
    let mut links: [Vec<u8>; 12] = Default::default();
    for axis in 0..3u8 {
        let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
        for side in 0..2u8 {
            let base = side << axis;
            let quad = [base, base | 1 << u, base | 1 << u | 1 << v, base | 1 << v];
            let face_edges: [u8; 4] = core::array::from_fn(|i| {
                let (a, b) = (quad[i], quad[(i + 1) % 4]);
                edge_of(a.min(b), a.max(b))
            });
            let crossing: Vec<usize> = (0..4).filter(|&i| inside(quad[i]) != inside(quad[(i + 1) % 4])).collect();
            let mut pair = |x: u8, y: u8| {
                links[x as usize].push(y);
                links[y as usize].push(x);
            };
            match crossing.len() {
                2 => pair(face_edges[crossing[0]], face_edges[crossing[1]]),
                4 => {
                    // cut off each inside corner on its own
                    for i in 0..4 {
                        if inside(quad[i]) {
                            pair(face_edges[(i + 3) % 4], face_edges[i]);
                        }
                    }
                }
                _ => {}
            }
        }
    }

    let mut seen = [false; 12];
    let mut tris = Vec::new();
    for start in 0..12u8 {
        if links[start as usize].is_empty() || seen[start as usize] {
            continue;
        }
        let mut lp = vec![start];
        seen[start as usize] = true;
        let (mut prev, mut cur) = (start, links[start as usize][0]);
        while cur != start {
            lp.push(cur);
            seen[cur as usize] = true;
            let l = &links[cur as usize];
            let next = if l[0] == prev { l[1] } else { l[0] };
            prev = cur;
            cur = next;
        }
        // orient the loop so its normal points from inside to outside corners
        let pts: Vec<[f64; 3]> = lp.iter().map(|&e| edge_mid(e)).collect();
        let mut n = [0.0; 3];
        for i in 0..pts.len() {
            let (p, q) = (pts[i], pts[(i + 1) % pts.len()]);
            n[0] += (p[1] - q[1]) * (p[2] + q[2]);
            n[1] += (p[2] - q[2]) * (p[0] + q[0]);
            n[2] += (p[0] - q[0]) * (p[1] + q[1]);
        }
        let mut out = [0.0; 3];
        for &e in &lp {
            let (a, b) = edge_corners(e);
            let (pin, pout) = if inside(a) { (a, b) } else { (b, a) };
            let (pi, po) = (corner_pos(pin), corner_pos(pout));
            (0..3).for_each(|k| out[k] += po[k] - pi[k]);
        }
        if n[0] * out[0] + n[1] * out[1] + n[2] * out[2] < 0.0 {
            lp.reverse();
        }
        for i in 1..lp.len() - 1 {
            tris.push([lp[0], lp[i], lp[i + 1]]);
        }
    }
    tris
}

/// Surface of the voxels in `selection`; an empty selection gives an empty
/// mesh.
pub fn selection_mesh(dims: GridDims, selection: &[u32]) -> Result<Mesh> {
    let v = dims.voxel_count();
    let [nx, ny, nz] = dims.as_array();
    let (px, py, pz) = (nx + 2, ny + 2, nz + 2);
    let mut mask = vec![false; px * py * pz];
    let pidx = |x: usize, y: usize, z: usize| x + px * (y + py * z);
    for &s in selection {
        if s as usize >= v {
            return Err(Error::IndexOutOfBounds { index: s as usize, len: v });
        }
        let [x, y, z] = dims.coords(s as usize);
        mask[pidx(x + 1, y + 1, z + 1)] = true;
    }
    let mut mesh = Mesh::default();
    if selection.is_empty() {
        return Ok(mesh);
    }

    let table = case_table();
    let mut vertex_of = vec![u32::MAX; px * py * pz * 3];
    for z in 0..pz - 1 {
        for y in 0..py - 1 {
            for x in 0..px - 1 {
                let mut m = 0u8;
                for c in 0..8u8 {
                    let (dx, dy, dz) = ((c & 1) as usize, ((c >> 1) & 1) as usize, ((c >> 2) & 1) as usize);
                    if mask[pidx(x + dx, y + dy, z + dz)] {
                        m |= 1 << c;
                    }
                }
                for tri in &table[m as usize] {
                    let t = tri.map(|e| {
                        let (a, _) = edge_corners(e);
                        let axis = (e / 4) as usize;
                        let p = [x + (a & 1) as usize, y + ((a >> 1) & 1) as usize, z + ((a >> 2) & 1) as usize];
                        let slot = &mut vertex_of[pidx(p[0], p[1], p[2]) * 3 + axis];
                        if *slot == u32::MAX {
                            *slot = mesh.vertices.len() as u32;
                            // padded sample p is lattice position p - 1
                            let mut pos = [p[0] as f32 - 1.0, p[1] as f32 - 1.0, p[2] as f32 - 1.0];
                            pos[axis] += 0.5;
                            mesh.vertices.push(pos);
                        }
                        *slot
                    });
                    mesh.triangles.push(t);
                }
            }
        }
    }
    Ok(mesh)
}

/// Binary layout, little endian: `u32` triangle count `T`, `3T` vertex
/// triplets as `f32`, then `T` index triplets as `u32`. Vertices are written
/// per triangle corner, so the indices are simply `0..3T`.
pub fn encode_binary(mesh: &Mesh) -> Vec<u8> {
    let t = mesh.triangles.len();
    let mut out = Vec::with_capacity(4 + t * 12 * 4);
    out.extend_from_slice(&(t as u32).to_le_bytes());
    for tri in &mesh.triangles {
        for &i in tri {
            for c in mesh.vertices[i as usize] {
                out.extend_from_slice(&c.to_le_bytes());
            }
        }
    }
    for i in 0..(3 * t) as u32 {
        out.extend_from_slice(&i.to_le_bytes());
    }
    out
}

/// Inverse of [`encode_binary`] (vertices stay per triangle corner).
pub fn decode_binary(bytes: &[u8]) -> Result<Mesh> {
    let word = |i: usize| -> Result<[u8; 4]> {
        bytes
            .get(i * 4..i * 4 + 4)
            .map(|b| [b[0], b[1], b[2], b[3]])
            .ok_or(Error::SizeMismatch { expected: i * 4 + 4, found: bytes.len() })
    };
    let t = u32::from_le_bytes(word(0)?) as usize;
    let expected = 4 + t * 12 * 4;
    if bytes.len() != expected {
        return Err(Error::SizeMismatch { expected, found: bytes.len() });
    }
    let mut mesh = Mesh::default();
    for k in 0..3 * t {
        let f = |j: usize| word(1 + 3 * k + j).map(f32::from_le_bytes);
        mesh.vertices.push([f(0)?, f(1)?, f(2)?]);
    }
    let base = 1 + 9 * t;
    for k in 0..t {
        let g = |j: usize| word(base + 3 * k + j).map(u32::from_le_bytes);
        mesh.triangles.push([g(0)?, g(1)?, g(2)?]);
    }
    if mesh.triangles.iter().flatten().any(|&i| i as usize >= 3 * t) {
        return Err(Error::InvalidConfig("mesh index out of range"));
    }
    Ok(mesh)
}
