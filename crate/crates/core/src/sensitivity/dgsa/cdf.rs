//! L1 distance between a cluster's empirical parameter CDF and the CDF of
//! the full sample.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// `∫ |F_cluster(p) − F_all(p)| dp` over `[range.0, range.1]`, exact for the
/// empirical step functions.
pub fn cdf_distance(cluster: &[f64], all: &[f64], range: (f64, f64)) -> Result<f64> {
    if cluster.is_empty() {
        return Err(Error::EmptyCluster);
    }
    if all.is_empty() {
        return Err(Error::EmptyCluster);
    }
    let (lo, hi) = range;
    if !(hi > lo) {
        return Ok(0.0);
    }
    let mut c: Vec<f64> = cluster.to_vec();
    let mut a: Vec<f64> = all.to_vec();
    c.sort_by(f64::total_cmp);
    a.sort_by(f64::total_cmp);
    let (nc, na) = (c.len() as f64, a.len() as f64);

    // counts of values <= the current position
    let mut ic = c.partition_point(|&v| v <= lo);
    let mut ia = a.partition_point(|&v| v <= lo);
    let mut x = lo;
    let mut total = 0.0;
    loop {
        let next_c = c.get(ic).copied().unwrap_or(f64::INFINITY);
        let next_a = a.get(ia).copied().unwrap_or(f64::INFINITY);
        let next = next_c.min(next_a).min(hi);
        total += (next - x) * (ic as f64 / nc - ia as f64 / na).abs();
        if next >= hi {
            break;
        }
        x = next;
        while ic < c.len() && c[ic] <= x {
            ic += 1;
        }
        while ia < a.len() && a[ia] <= x {
            ia += 1;
        }
    }
    Ok(total)
}

/// One parameter's full sample, sorted, with prefix sums that make the CDF
/// distance of a cluster cost `O(cluster size)` given the cluster's positions
/// in the sorted order.
#[derive(Clone, Debug)]
pub struct SortedSample {
    values: Vec<f64>,
    /// `gaps[r] = Σ_{t<r} g_t` with `g_t = values[t + 1] − values[t]`.
    gaps: Vec<f64>,
    /// `ranked[r] = Σ_{t<r} (t + 1) g_t`.
    ranked: Vec<f64>,
}

impl SortedSample {
    /// `sorted` must be ascending.
    pub fn new(sorted: Vec<f64>) -> Self {
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        let n = sorted.len();
        let mut gaps = Vec::with_capacity(n);
        let mut ranked = Vec::with_capacity(n);
        let (mut g, mut h) = (0.0, 0.0);
        gaps.push(0.0);
        ranked.push(0.0);
        for t in 0..n.saturating_sub(1) {
            let d = sorted[t + 1] - sorted[t];
            g += d;
            h += (t + 1) as f64 * d;
            gaps.push(g);
            ranked.push(h);
        }
        Self { values: sorted, gaps, ranked }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// CDF distance of the cluster made of the sorted-order positions
    /// `positions` (strictly ascending) over the sample's own range.
    ///
    /// On the gap `[q_r, q_{r+1})` the full CDF is `(r + 1) / R` and the
    /// cluster CDF is `j / c`, with `j` the cluster members at positions
    /// `<= r`. Within a run of constant `j` the sign of the difference flips
    /// once, at `r + 1 = ⌈jR / c⌉`, so each run is two prefix-sum lookups.
    pub fn distance_from_positions(&self, positions: &[u32]) -> f64 {
        let n = self.values.len();
        let c = positions.len();
        if c == 0 || n < 2 {
            return 0.0;
        }
        let (rf, cf) = (n as f64, c as f64);
        // Σ_{r in lo..hi} g_r (r + 1) / R − Σ g_r j / c, signed by `sign`
        let part = |lo: usize, hi: usize, j: usize, sign: f64| -> f64 {
            if hi <= lo {
                return 0.0;
            }
            let g = self.gaps[hi] - self.gaps[lo];
            let h = self.ranked[hi] - self.ranked[lo];
            sign * (h / rf - g * j as f64 / cf)
        };
        let mut total = 0.0;
        // gaps r = 0 ..= n − 2; run j covers r in [start_j, end_j)
        let last_gap = n - 1;
        for j in 0..=c {
            let start = if j == 0 { 0 } else { positions[j - 1] as usize };
            let end = if j == c { last_gap } else { (positions[j] as usize).min(last_gap) };
            if end <= start {
                continue;
            }
            // full CDF ≥ cluster CDF once (r + 1) c ≥ j R
            let flip = ((j * n).div_ceil(c)).saturating_sub(1).clamp(start, end);
            total += part(start, flip, j, -1.0) + part(flip, end, j, 1.0);
        }
        total.max(0.0)
    }
}
