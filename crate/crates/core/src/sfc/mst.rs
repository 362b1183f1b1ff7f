//! Kruskal's minimum spanning tree over the dual graph.

use alloc::vec::Vec;

use super::circuit::DualEdge;
use crate::error::{Error, Result};

struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect(), size: alloc::vec![1; n] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

/// Indices into `edges` of a minimum spanning tree over `cell_count` nodes.
///
/// Equal weights are broken by `(a, b)` so the tree is deterministic.
pub fn minimum_spanning_tree(cell_count: usize, edges: &[DualEdge]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&i, &j| {
        let (x, y) = (&edges[i], &edges[j]);
        x.weight.total_cmp(&y.weight).then(x.a.cmp(&y.a)).then(x.b.cmp(&y.b))
    });
    let mut sets = DisjointSets::new(cell_count);
    let mut tree = Vec::with_capacity(cell_count.saturating_sub(1));
    for i in order {
        if tree.len() + 1 == cell_count {
            break;
        }
        if sets.union(edges[i].a, edges[i].b) {
            tree.push(i);
        }
    }
    if tree.len() + 1 != cell_count && cell_count > 0 {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}
