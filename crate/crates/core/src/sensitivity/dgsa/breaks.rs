//! Fisher's natural breaks: exact optimal 1D partition by dynamic programming.
//!
//! Minimizes the within-cluster sum of squared deviations over partitions of
//! sorted data into contiguous groups. Each DP layer is filled with
//! divide-and-conquer over the (monotone) optimal split positions, so all
//! layers up to `k_max` cost `O(k_max · n log n)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Optimal partitions of one sorted sample for every `k` in `1..=k_max`.
#[derive(Clone, Debug)]
pub struct FisherBreaks {
    n: usize,
    k_max: usize,
    /// `cost[k - 1][j]`: optimal cost of the first `j` values in `k` clusters.
    cost: Vec<Vec<f64>>,
    /// `split[k - 1][j]`: start of the last cluster in that optimum.
    split: Vec<Vec<u32>>,
}

struct PrefixSums {
    s1: Vec<f64>,
    s2: Vec<f64>,
}

impl PrefixSums {
    fn new(sorted: &[f64]) -> Self {
        // centre for numerical stability of the one-pass variance formula
        let shift = sorted[sorted.len() / 2];
        let mut s1 = Vec::with_capacity(sorted.len() + 1);
        let mut s2 = Vec::with_capacity(sorted.len() + 1);
        let (mut a, mut b) = (0.0, 0.0);
        s1.push(0.0);
        s2.push(0.0);
        for &v in sorted {
            let d = v - shift;
            a += d;
            b += d * d;
            s1.push(a);
            s2.push(b);
        }
        Self { s1, s2 }
    }

    /// Sum of squared deviations of `values[lo..hi]`.
    #[inline]
    fn ssq(&self, lo: usize, hi: usize) -> f64 {
        let n = (hi - lo) as f64;
        let s = self.s1[hi] - self.s1[lo];
        let v = self.s2[hi] - self.s2[lo] - s * s / n;
        v.max(0.0)
    }
}

impl FisherBreaks {
    /// Solves all layers up to `k_max` for ascending `sorted` data.
    pub fn compute(sorted: &[f64], k_max: usize) -> Self {
        let n = sorted.len();
        assert!(k_max >= 1 && k_max <= n, "k_max must lie in 1..=n");
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        let ps = PrefixSums::new(sorted);
        let mut cost = vec![vec![f64::INFINITY; n + 1]; k_max];
        let mut split = vec![vec![0u32; n + 1]; k_max];
        for j in 1..=n {
            cost[0][j] = ps.ssq(0, j);
        }
        for k in 2..=k_max {
            let (done, rest) = cost.split_at_mut(k - 1);
            let prev = &done[k - 2];
            let row = &mut rest[0];
            fill_layer(&ps, prev, row, &mut split[k - 1], k, k, n, k - 1, n - 1);
        }
        Self { n, k_max, cost, split }
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Optimal within-cluster sum of squares for `k` clusters.
    pub fn cost(&self, k: usize) -> f64 {
        self.cost[k - 1][self.n]
    }

    /// Start index of each of the `k` clusters (first entry is 0).
    pub fn bounds(&self, k: usize) -> Vec<usize> {
        let mut starts = vec![0; k];
        let mut j = self.n;
        for kk in (1..=k).rev() {
            let m = if kk == 1 { 0 } else { self.split[kk - 1][j] as usize };
            starts[kk - 1] = m;
            j = m;
        }
        starts
    }

    /// Cluster label of every sorted value for `k` clusters.
    pub fn labels(&self, k: usize) -> Vec<usize> {
        labels_from_bounds(&self.bounds(k), self.n)
    }
}

pub(crate) fn labels_from_bounds(starts: &[usize], n: usize) -> Vec<usize> {
    let mut labels = Vec::with_capacity(n);
    for (c, &s) in starts.iter().enumerate() {
        let e = starts.get(c + 1).copied().unwrap_or(n);
        labels.extend(core::iter::repeat(c).take(e - s));
    }
    labels
}

/// Fills `row[j]` for `j` in `lo..=hi`, knowing the leftmost optimal split
/// lies in `opt_lo..=opt_hi`.
#[allow(clippy::too_many_arguments)]
fn fill_layer(
    ps: &PrefixSums,
    prev: &[f64],
    row: &mut [f64],
    split: &mut [u32],
    k: usize,
    lo: usize,
    hi: usize,
    opt_lo: usize,
    opt_hi: usize,
) {
    if lo > hi {
        return;
    }
    let mid = (lo + hi) / 2;
    let first = opt_lo.max(k - 1);
    let last = opt_hi.min(mid - 1);
    let mut best = f64::INFINITY;
    let mut best_m = first;
    for m in first..=last {
        let c = prev[m] + ps.ssq(m, mid);
        if c < best {
            best = c;
            best_m = m;
        }
    }
    row[mid] = best;
    split[mid] = best_m as u32;
    if mid > lo {
        fill_layer(ps, prev, row, split, k, lo, mid - 1, opt_lo, best_m);
    }
    fill_layer(ps, prev, row, split, k, mid + 1, hi, best_m, opt_hi);
}

pub(crate) fn distinct_count(sorted: &[f64]) -> usize {
    if sorted.is_empty() {
        return 0;
    }
    1 + sorted.windows(2).filter(|w| w[1] != w[0]).count()
}

/// Optimal contiguous partition of ascending `values` into `k` clusters;
/// returns the cluster label of every value.
pub fn natural_breaks(values: &[f64], k: usize) -> Result<Vec<usize>> {
    let distinct = distinct_count(values);
    if k < 2 || k > distinct {
        return Err(Error::InvalidK { k, distinct });
    }
    if values.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidConfig("natural breaks expects ascending finite values"));
    }
    Ok(FisherBreaks::compute(values, k).labels(k))
}

/// Within-cluster sum of squared deviations of a labelled sample.
pub fn within_cluster_ssq(values: &[f64], labels: &[usize]) -> f64 {
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut sum = vec![0.0; k];
    let mut cnt = vec![0usize; k];
    for (&v, &l) in values.iter().zip(labels) {
        sum[l] += v;
        cnt[l] += 1;
    }
    values
        .iter()
        .zip(labels)
        .map(|(&v, &l)| {
            let m = sum[l] / cnt[l] as f64;
            (v - m) * (v - m)
        })
        .sum()
}
