//! Merging the blocks' local cycles along a spanning tree into one
//! Hamiltonian cycle.
//!
//! For a tree edge between blocks `P` and `C` across a face, take a cycle
//! edge `a–b` of `P` on that face whose mirror `c–d` is a cycle edge of `C`;
//! replacing both by `a–c` and `b–d` joins the two cycles. The tree is walked
//! depth-first from block 0 and every block picks, among the cube's
//! Hamiltonian cycles, one that contains the edge its parent needs and
//! offers a distinct face edge to each of its children.

use alloc::vec;
use alloc::vec::Vec;

use super::circuit::{BlockCycles, CircuitGraph};
use super::{CurveKind, SfcConfig, SfcCurve};
use crate::error::{Error, Result};

/// Face of block `cell` that touches its tree neighbour `other` across `axis`.
fn face_side(cell: usize, other: usize) -> u8 {
    u8::from(other > cell)
}

/// Assigns each face a distinct edge from its candidate list (backtracking).
fn distinct_edges(candidates: &[Vec<(u8, u8)>], taken: &mut Vec<(u8, u8)>) -> bool {
    let k = taken.len();
    if k == candidates.len() {
        return true;
    }
    for &e in &candidates[k] {
        if !taken.contains(&e) {
            taken.push(e);
            if distinct_edges(candidates, taken) {
                return true;
            }
            taken.pop();
        }
    }
    false
}

/// First cycle containing `required` (if any) whose faces towards `children`
/// (axis, side) admit distinct edges other than `required`.
fn choose_cycle(
    blocks: &BlockCycles,
    required: Option<(u8, u8)>,
    children: &[(usize, u8)],
) -> Option<(usize, Vec<(u8, u8)>)> {
    for c in 0..blocks.cycles.len() {
        if let Some((u, v)) = required {
            if !blocks.has_edge(c, u, v) {
                continue;
            }
        }
        let candidates: Vec<Vec<(u8, u8)>> = children
            .iter()
            .map(|&(axis, side)| {
                let mut edges = blocks.face_edges(c, axis, side);
                if let Some((u, v)) = required {
                    edges.retain(|&e| e != (u.min(v), u.max(v)));
                }
                edges
            })
            .collect();
        let mut taken = Vec::with_capacity(children.len());
        if distinct_edges(&candidates, &mut taken) {
            return Some((c, taken));
        }
    }
    None
}

fn replace(nbr: &mut [[u32; 2]], at: usize, old: u32, new: u32) {
    let slot = if nbr[at][0] == old { 0 } else { 1 };
    debug_assert_eq!(nbr[at][slot], old);
    nbr[at][slot] = new;
}

/// Builds the closed data-driven curve from the graph and a spanning tree
/// given as indices into `graph.edges`.
pub fn merge_cycles(graph: &CircuitGraph, tree: &[usize], config: SfcConfig) -> Result<SfcCurve> {
    let cells = graph.cell_count();
    if tree.len() + 1 != cells {
        return Err(Error::Disconnected);
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cells];
    for &e in tree {
        let edge = &graph.edges[e];
        adj[edge.a as usize].push((edge.b as usize, edge.axis as usize));
        adj[edge.b as usize].push((edge.a as usize, edge.axis as usize));
    }

    let blocks = &graph.blocks;
    let mut cycle_of = vec![usize::MAX; cells];
    // required local edge of each block, set by its parent
    let mut required: Vec<Option<(u8, u8)>> = vec![None; cells];
    let mut parent = vec![usize::MAX; cells];
    // (parent cell, parent edge, axis) for every tree edge, in visit order
    let mut joins: Vec<(usize, usize, (u8, u8), usize)> = Vec::with_capacity(tree.len());

    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(cell) = stack.pop() {
        let children: Vec<(usize, usize)> =
            adj[cell].iter().copied().filter(|&(n, _)| parent[n] == usize::MAX).collect();
        let faces: Vec<(usize, u8)> = children.iter().map(|&(n, axis)| (axis, face_side(cell, n))).collect();
        let (c, assigned) = choose_cycle(blocks, required[cell], &faces).ok_or(Error::InvalidCurve("no block cycle fits"))?;
        cycle_of[cell] = c;
        for (&(child, axis), &(u, v)) in children.iter().zip(&assigned) {
            parent[child] = cell;
            let bit = 1u8 << axis;
            required[child] = Some((u ^ bit, v ^ bit));
            joins.push((cell, child, (u, v), axis));
            stack.push(child);
        }
    }

    let v_count = graph.dims.voxel_count();
    let mut nbr = vec![[u32::MAX; 2]; v_count];
    for cell in 0..cells {
        let cyc = &blocks.cycles[cycle_of[cell]];
        let m = cyc.len();
        for i in 0..m {
            let x = graph.voxel(cell, cyc[i]);
            nbr[x] = [graph.voxel(cell, cyc[(i + m - 1) % m]) as u32, graph.voxel(cell, cyc[(i + 1) % m]) as u32];
        }
    }
    for &(p, child, (u, v), axis) in &joins {
        let bit = 1u8 << axis;
        let (a, b) = (graph.voxel(p, u), graph.voxel(p, v));
        let (c, d) = (graph.voxel(child, u ^ bit), graph.voxel(child, v ^ bit));
        replace(&mut nbr, a, b as u32, c as u32);
        replace(&mut nbr, b, a as u32, d as u32);
        replace(&mut nbr, c, d as u32, a as u32);
        replace(&mut nbr, d, c as u32, b as u32);
    }

    let mut order = Vec::with_capacity(v_count);
    let mut prev = u32::MAX;
    let mut cur = 0u32;
    for _ in 0..v_count {
        order.push(cur);
        let [p, q] = nbr[cur as usize];
        let next = if prev == u32::MAX {
            p.min(q)
        } else if p == prev {
            q
        } else {
            p
        };
        prev = cur;
        cur = next;
    }
    if cur != 0 {
        return Err(Error::InvalidCurve("merged cycles do not form a single cycle"));
    }
    SfcCurve::new(CurveKind::DataDriven, graph.dims, config, order)
}
