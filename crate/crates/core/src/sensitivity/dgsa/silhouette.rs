//! Silhouette coefficient of contiguous 1D partitions, and the choice of `k`.

use alloc::vec::Vec;

use super::breaks::{distinct_count, labels_from_bounds, FisherBreaks};
use crate::error::{Error, Result};

/// Mean silhouette of ascending `sorted` data partitioned at `starts`
/// (start index of each cluster), with absolute distance.
///
/// Runs in `O(n)`: for sorted data the nearest other cluster of a point, in
/// mean distance, is always an adjacent one, and every mean distance follows
/// from prefix sums. Singleton clusters score 0.
pub fn mean_silhouette(sorted: &[f64], starts: &[usize]) -> f64 {
    let n = sorted.len();
    if n == 0 || starts.len() < 2 {
        return 0.0;
    }
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for &v in sorted {
        acc += v;
        prefix.push(acc);
    }
    let sum = |lo: usize, hi: usize| prefix[hi] - prefix[lo];
    let end = |c: usize| starts.get(c + 1).copied().unwrap_or(n);

    let mut total = 0.0;
    for c in 0..starts.len() {
        let (lo, hi) = (starts[c], end(c));
        let size = hi - lo;
        if size < 2 {
            continue;
        }
        for p in lo..hi {
            let x = sorted[p];
            let below = x * (p - lo) as f64 - sum(lo, p);
            let above = sum(p + 1, hi) - x * (hi - p - 1) as f64;
            let a = (below + above) / (size - 1) as f64;
            let mut b = f64::INFINITY;
            if c > 0 {
                let (l, h) = (starts[c - 1], lo);
                b = b.min(x - sum(l, h) / (h - l) as f64);
            }
            if c + 1 < starts.len() {
                let (l, h) = (hi, end(c + 1));
                b = b.min(sum(l, h) / (h - l) as f64 - x);
            }
            let denom = a.max(b);
            if denom > 0.0 {
                total += (b - a) / denom;
            }
        }
    }
    total / n as f64
}

/// Largest usable cluster count for data with `distinct` distinct values.
pub(crate) fn effective_k_max(k_max: usize, distinct: usize) -> usize {
    k_max.min(distinct.saturating_sub(1))
}

/// Best `k` and its cluster starts for ascending data.
pub(crate) fn select_k_sorted(sorted: &[f64], k_min: usize, k_max: usize) -> Result<(usize, Vec<usize>)> {
    let distinct = distinct_count(sorted);
    let k_hi = effective_k_max(k_max, distinct);
    if k_min < 2 || k_hi < k_min {
        return Err(Error::DegenerateData { distinct, k_min });
    }
    let fb = FisherBreaks::compute(sorted, k_hi);
    let k = first_max((k_min..=k_hi).map(|k| (k, mean_silhouette(sorted, &fb.bounds(k))))).unwrap_or(k_min);
    Ok((k, fb.bounds(k)))
}

/// Key of the highest score; the earliest one on ties.
fn first_max(scores: impl Iterator<Item = (usize, f64)>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (k, s) in scores {
        if best.map_or(true, |(_, b)| s > b) {
            best = Some((k, s));
        }
    }
    best.map(|(k, _)| k)
}

/// Clusters `values` (any order) with natural breaks for every `k` in
/// `k_min..=k_max` (capped at one less than the distinct value count) and
/// keeps the partition with the highest mean silhouette. Returns `k` and the
/// cluster label of each input value.
pub fn select_k_silhouette(values: &[f64], k_min: usize, k_max: usize) -> Result<(usize, Vec<usize>)> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let (k, starts) = select_k_sorted(&sorted, k_min, k_max)?;
    let sorted_labels = labels_from_bounds(&starts, sorted.len());
    let mut labels = alloc::vec![0; values.len()];
    for (pos, &i) in order.iter().enumerate() {
        labels[i] = sorted_labels[pos];
    }
    Ok((k, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn brute_silhouette(values: &[f64], labels: &[usize]) -> f64 {
        let k = labels.iter().max().unwrap() + 1;
        let mut total = 0.0;
        for (i, &x) in values.iter().enumerate() {
            let mut sums = vec![0.0; k];
            let mut counts = vec![0usize; k];
            for (j, &y) in values.iter().enumerate() {
                if i != j {
                    sums[labels[j]] += (x - y).abs();
                    counts[labels[j]] += 1;
                }
            }
            let own = labels[i];
            if counts[own] == 0 {
                continue;
            }
            let a = sums[own] / counts[own] as f64;
            let b = (0..k).filter(|&c| c != own).map(|c| sums[c] / counts[c] as f64).fold(f64::INFINITY, f64::min);
            if a.max(b) > 0.0 {
                total += (b - a) / a.max(b);
            }
        }
        total / values.len() as f64
    }

    #[test]
    fn prefix_silhouette_matches_pairwise() {
        let v = [0.0, 0.1, 0.15, 0.9, 1.0, 1.05, 1.1, 3.0, 3.2, 7.0];
        for starts in [vec![0, 3], vec![0, 3, 7], vec![0, 1, 5, 9], vec![0, 2, 4, 6, 8]] {
            let labels = labels_from_bounds(&starts, v.len());
            let fast = mean_silhouette(&v, &starts);
            assert!((fast - brute_silhouette(&v, &labels)).abs() < 1e-12, "{starts:?}");
        }
    }

    #[test]
    fn four_blobs() {
        let mut v = Vec::new();
        for (b, centre) in [0.0, 10.0, 20.0, 30.0].iter().enumerate() {
            for j in 0..50 {
                v.push(centre + (j as f64 * 0.37 + b as f64).sin());
            }
        }
        let (k, labels) = select_k_silhouette(&v, 3, 10).unwrap();
        assert_eq!(k, 4);
        assert_eq!(labels[0], 0);
        assert_eq!(labels[199], 3);
    }

    #[test]
    fn two_values_are_degenerate() {
        let v = [1.0, 2.0, 1.0, 2.0, 1.0];
        assert_eq!(select_k_silhouette(&v, 3, 10), Err(Error::DegenerateData { distinct: 2, k_min: 3 }));
    }

    #[test]
    fn ties_keep_smaller_k() {
        assert_eq!(first_max([(3, 0.5), (4, 0.7), (5, 0.7), (6, 0.2)].into_iter()), Some(4));
        assert_eq!(first_max([(3, 0.0), (4, 0.0)].into_iter()), Some(3));
    }
}
