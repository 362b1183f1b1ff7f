//! Distance-based generalized sensitivity analysis (DGSA).
//!
//! At each voxel the run outputs are clustered (natural breaks, `k` chosen by
//! silhouette). For every cluster and parameter, the L1 distance between the
//! parameter's CDF inside the cluster and over all runs is divided by a
//! bootstrap threshold for that cluster size; the sensitivity is the mean of
//! these normalized distances over clusters. Values above 1 mark a parameter
//! the voxel is sensitive to.

pub mod bootstrap;
pub mod breaks;
pub mod cdf;
pub mod silhouette;

use alloc::vec;
use alloc::vec::Vec;

use crate::ensemble::{Ensemble, ParameterSpace};
use crate::error::{Error, Result};
use crate::par;
use crate::sensitivity::{Measure, SensitivityFieldSet};

pub use bootstrap::{bootstrap_threshold, BootstrapConfig, ThresholdCache};
pub use breaks::{natural_breaks, FisherBreaks};
pub use cdf::{cdf_distance, SortedSample};
pub use silhouette::{mean_silhouette, select_k_silhouette};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DgsaConfig {
    pub k_min: usize,
    pub k_max: usize,
    pub min_cluster_size: usize,
    pub bootstrap_draws: usize,
    pub quantile: f64,
    pub seed: u64,
    /// Compare CDFs of parameter ranks instead of values, which makes the
    /// result invariant under monotone transforms of each parameter.
    pub rank_space: bool,
    pub cache_thresholds: bool,
}

impl Default for DgsaConfig {
    fn default() -> Self {
        Self {
            k_min: 3,
            k_max: 10,
            min_cluster_size: 10,
            bootstrap_draws: 1000,
            quantile: 0.99,
            seed: 0,
            rank_space: false,
            cache_thresholds: true,
        }
    }
}

impl DgsaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_min < 2 || self.k_max < self.k_min {
            return Err(Error::InvalidConfig("need 2 <= k_min <= k_max"));
        }
        if self.min_cluster_size < 2 {
            return Err(Error::InvalidConfig("minimum cluster size must be at least 2"));
        }
        if !(self.quantile > 0.0 && self.quantile < 1.0) {
            return Err(Error::InvalidConfig("quantile must lie strictly between 0 and 1"));
        }
        if self.bootstrap_draws == 0 {
            return Err(Error::InvalidConfig("bootstrap needs at least one draw"));
        }
        Ok(())
    }

    fn bootstrap(&self) -> BootstrapConfig {
        BootstrapConfig { draws: self.bootstrap_draws, quantile: self.quantile, seed: self.seed }
    }
}

/// Per-parameter sorted samples and the shared threshold cache for one
/// parameter space; reused across all voxels of a volume.
#[derive(Debug)]
pub struct DgsaContext {
    cfg: DgsaConfig,
    runs: usize,
    samples: Vec<SortedSample>,
    /// `order[i][t]` is the run at sorted position `t` of parameter `i`.
    order: Vec<Vec<u32>>,
    cache: ThresholdCache,
}

/// Scratch buffers reused across voxels.
#[derive(Default)]
pub struct DgsaScratch {
    idx: Vec<u32>,
    sorted: Vec<f64>,
    label: Vec<u32>,
    members: Vec<Vec<u32>>,
}

const DROPPED: u32 = u32::MAX;

/// Average ranks scaled to `[0, 1]`; ties share their mean rank.
fn rank_transform(sorted: &[f64]) -> Vec<f64> {
    let n = sorted.len();
    let scale = if n > 1 { 1.0 / (n - 1) as f64 } else { 0.0 };
    let mut out = vec![0.0; n];
    let mut t = 0;
    while t < n {
        let mut e = t + 1;
        while e < n && sorted[e] == sorted[t] {
            e += 1;
        }
        let r = (t + e - 1) as f64 * 0.5 * scale;
        out[t..e].iter_mut().for_each(|o| *o = r);
        t = e;
    }
    out
}

impl DgsaContext {
    pub fn new(pspace: &ParameterSpace, cfg: DgsaConfig) -> Result<Self> {
        cfg.validate()?;
        let runs = pspace.run_count();
        let mut samples = Vec::with_capacity(pspace.param_count());
        let mut order = Vec::with_capacity(pspace.param_count());
        for i in 0..pspace.param_count() {
            let mut ord: Vec<u32> = (0..runs as u32).collect();
            ord.sort_by(|&a, &b| pspace.value(a as usize, i).total_cmp(&pspace.value(b as usize, i)).then(a.cmp(&b)));
            let sorted: Vec<f64> = ord.iter().map(|&r| pspace.value(r as usize, i)).collect();
            let values = if cfg.rank_space { rank_transform(&sorted) } else { sorted };
            samples.push(SortedSample::new(values));
            order.push(ord);
        }
        Ok(Self { cfg, runs, samples, order, cache: ThresholdCache::new(cfg.cache_thresholds) })
    }

    pub fn config(&self) -> &DgsaConfig {
        &self.cfg
    }

    pub fn cache(&self) -> &ThresholdCache {
        &self.cache
    }

    /// Sensitivity to each parameter at one voxel. The flag is set, with all
    /// values zero, when the output cannot be clustered or every cluster is
    /// below the minimum size.
    pub fn evaluate(&self, y: &[f64], s: &mut DgsaScratch) -> (Vec<f64>, bool) {
        debug_assert_eq!(y.len(), self.runs);
        let n = self.samples.len();
        let inert = (vec![0.0; n], true);

        s.idx.clear();
        s.idx.extend(0..self.runs as u32);
        s.idx.sort_by(|&a, &b| y[a as usize].total_cmp(&y[b as usize]).then(a.cmp(&b)));
        s.sorted.clear();
        s.sorted.extend(s.idx.iter().map(|&r| y[r as usize]));

        let Ok((k, starts)) = silhouette::select_k_sorted(&s.sorted, self.cfg.k_min, self.cfg.k_max) else {
            return inert;
        };

        // surviving clusters are renumbered 0..kept
        s.label.clear();
        s.label.resize(self.runs, DROPPED);
        let mut kept = 0u32;
        let mut sizes = Vec::with_capacity(k);
        for c in 0..k {
            let (lo, hi) = (starts[c], starts.get(c + 1).copied().unwrap_or(self.runs));
            if hi - lo < self.cfg.min_cluster_size {
                continue;
            }
            for &r in &s.idx[lo..hi] {
                s.label[r as usize] = kept;
            }
            sizes.push(hi - lo);
            kept += 1;
        }
        if kept == 0 {
            return inert;
        }
        if s.members.len() < kept as usize {
            s.members.resize_with(kept as usize, Vec::new);
        }

        let boot = self.cfg.bootstrap();
        let values = (0..n)
            .map(|i| {
                s.members.iter_mut().for_each(Vec::clear);
                for (t, &r) in self.order[i].iter().enumerate() {
                    let l = s.label[r as usize];
                    if l != DROPPED {
                        s.members[l as usize].push(t as u32);
                    }
                }
                let total: f64 = (0..kept as usize)
                    .map(|c| {
                        let d = self.samples[i].distance_from_positions(&s.members[c]);
                        let t = bootstrap_threshold(&self.samples[i], i, sizes[c], &boot, Some(&self.cache));
                        if t > 0.0 {
                            d / t
                        } else {
                            0.0
                        }
                    })
                    .sum();
                total / kept as f64
            })
            .collect();
        (values, false)
    }
}

/// DGSA sensitivities of one voxel's outputs `y` (one per run).
pub fn dgsa_voxel(y: &[f64], pspace: &ParameterSpace, cfg: &DgsaConfig) -> Result<(Vec<f64>, bool)> {
    if y.len() != pspace.run_count() {
        return Err(Error::SizeMismatch { expected: pspace.run_count(), found: y.len() });
    }
    let ctx = DgsaContext::new(pspace, *cfg)?;
    Ok(ctx.evaluate(y, &mut DgsaScratch::default()))
}

/// DGSA volume with one threshold cache shared by all voxels.
pub fn dgsa_volume(ens: &Ensemble, cfg: &DgsaConfig) -> Result<SensitivityFieldSet> {
    let ctx = DgsaContext::new(ens.pspace(), *cfg)?;
    dgsa_volume_with(ens, &ctx)
}

/// [`dgsa_volume`] with a caller-owned context, e.g. to inspect its cache.
pub fn dgsa_volume_with(ens: &Ensemble, ctx: &DgsaContext) -> Result<SensitivityFieldSet> {
    if ctx.runs != ens.run_count() || ctx.samples.len() != ens.pspace().param_count() {
        return Err(Error::SizeMismatch { expected: ctx.runs, found: ens.run_count() });
    }
    let voxels = par::map_voxels(ens, DgsaScratch::default, |s, _, y| ctx.evaluate(y, s));
    Ok(SensitivityFieldSet::from_voxels(Measure::Dgsa, ens.dims(), ens.pspace().names(), voxels))
}
