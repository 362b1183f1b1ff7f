//! Bootstrap significance threshold for cluster CDF distances.
//!
//! The threshold for a cluster of size `c` is a high quantile of the CDF
//! distance of random size-`c` subsets of the full sample. It depends only on
//! the parameter, the cluster size and the run count, so one cache serves a
//! whole volume.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cdf::SortedSample;

/// Memo table keyed by `(param index, cluster size, run count)`.
///
/// Values are deterministic for a fixed seed, so concurrent duplicate
/// computation is harmless: the last writer wins with an identical value.
#[derive(Debug)]
pub struct ThresholdCache {
    enabled: bool,
    map: spin::Mutex<BTreeMap<(usize, usize, usize), f64>>,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

impl Default for ThresholdCache {
    fn default() -> Self {
        Self::new(true)
    }
}

impl ThresholdCache {
    pub fn new(enabled: bool) -> Self {
        Self { enabled, map: spin::Mutex::new(BTreeMap::new()), hits: AtomicUsize::new(0), misses: AtomicUsize::new(0) }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    /// Number of thresholds actually computed.
    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn len(&self) -> usize {
        self.map.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get_or_compute(&self, key: (usize, usize, usize), f: impl FnOnce() -> f64) -> f64 {
        if self.enabled {
            if let Some(&v) = self.map.lock().get(&key) {
                self.hits.fetch_add(1, Ordering::Relaxed);
                return v;
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let v = f();
        if self.enabled {
            self.map.lock().insert(key, v);
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BootstrapConfig {
    pub draws: usize,
    pub quantile: f64,
    pub seed: u64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self { draws: 1000, quantile: 0.99, seed: 0 }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn stream_seed(seed: u64, param: usize, size: usize) -> u64 {
    splitmix(splitmix(splitmix(seed) ^ param as u64) ^ size as u64)
}

/// Linear-interpolation quantile of ascending data (the common "type 7").
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    match sorted.len() {
        0 => 0.0,
        1 => sorted[0],
        n => {
            let h = (n - 1) as f64 * q.clamp(0.0, 1.0);
            let lo = libm::floor(h) as usize;
            let hi = (lo + 1).min(n - 1);
            sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
        }
    }
}

/// Threshold distance for a cluster of `cluster_size` runs of parameter
/// `param`: the configured quantile of `draws` distances of random subsets
/// drawn without replacement. A cluster holding every run gives 0.
///
/// Subsets larger than half the sample are handled through their complement:
/// the two CDF deviations are proportional, `d_c = (R − c) / c · d_{R − c}`.
pub fn bootstrap_threshold(
    sample: &SortedSample,
    param: usize,
    cluster_size: usize,
    cfg: &BootstrapConfig,
    cache: Option<&ThresholdCache>,
) -> f64 {
    let runs = sample.len();
    if cluster_size == 0 || cluster_size >= runs {
        return 0.0;
    }
    let drawn = cluster_size.min(runs - cluster_size);
    let scale = drawn as f64 / cluster_size as f64;
    let compute = || {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(cfg.seed, param, drawn));
        let mut positions: Vec<u32> = Vec::with_capacity(drawn);
        let mut dists: Vec<f64> = (0..cfg.draws.max(1))
            .map(|_| {
                positions.clear();
                positions.extend(rand::seq::index::sample(&mut rng, runs, drawn).iter().map(|p| p as u32));
                positions.sort_unstable();
                sample.distance_from_positions(&positions)
            })
            .collect();
        dists.sort_by(f64::total_cmp);
        scale * quantile_sorted(&dists, cfg.quantile)
    };
    match cache {
        Some(c) => c.get_or_compute((param, cluster_size, runs), compute),
        None => compute(),
    }
}
