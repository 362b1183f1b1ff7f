//! Monte Carlo subsampling of voxels.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Default number of voxels drawn for the parallel coordinates and the
/// sensitivity view.
pub const DEFAULT_SAMPLE_COUNT: usize = 20_000;

/// `count` distinct voxel indices out of `voxels`, drawn uniformly and
/// returned in ascending order. `count >= voxels` returns every index.
pub fn monte_carlo_subsample(voxels: usize, count: usize, seed: u64) -> Vec<u32> {
    if count >= voxels {
        return (0..voxels as u32).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<u32> = rand::seq::index::sample(&mut rng, voxels, count).iter().map(|i| i as u32).collect();
    idx.sort_unstable();
    idx
}
