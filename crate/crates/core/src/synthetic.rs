//! The synthetic three-kernel benchmark ensemble.
//!
//! Each run evaluates
//! `g(x) = P1 f(x; (7,7,7), 3) + P1 P2 f(x; (10,25,15), 3) + f(x; (20,20,5+20 P2), 3) + ζ`
//! on integer lattice positions, where `f` is an unnormalized Gaussian with
//! peak 1 and `ζ ~ U[0, noise_max]`. `P3` is deliberately inert.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ensemble::{Ensemble, ParameterSpace, ParameterSpec};
use crate::error::{Error, Result};
use crate::grid::GridDims;
use crate::par;

pub const KERNEL_SIGMA: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SyntheticConfig {
    pub dims: GridDims,
    pub run_count: usize,
    /// Upper bound of the additive uniform noise; 0 disables it.
    pub noise_max: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self { dims: GridDims { nx: 32, ny: 32, nz: 32 }, run_count: 4096, noise_max: 0.01, seed: 0 }
    }
}

/// The three unit-range parameters of the synthetic ensemble.
pub fn synthetic_params() -> Vec<ParameterSpec> {
    (1..=3).map(|i| ParameterSpec::unit(format!("P{i}"))).collect()
}

/// Per-axis factors of a separable Gaussian centred at `c`.
fn axis_factors(n: usize, c: f64) -> Vec<f64> {
    (0..n)
        .map(|i| {
            let d = i as f64 - c;
            libm::exp(-d * d / (2.0 * KERNEL_SIGMA * KERNEL_SIGMA))
        })
        .collect()
}

struct Kernel {
    fx: Vec<f64>,
    fy: Vec<f64>,
    fz: Vec<f64>,
}

impl Kernel {
    fn new(dims: GridDims, c: [f64; 3]) -> Self {
        Self { fx: axis_factors(dims.nx, c[0]), fy: axis_factors(dims.ny, c[1]), fz: axis_factors(dims.nz, c[2]) }
    }
}

/// Noise-free value of `g` at a lattice position, for direct evaluation.
pub fn synthetic_value(p1: f64, p2: f64, pos: [f64; 3]) -> f64 {
    let f = |c: [f64; 3]| {
        let d2: f64 = (0..3).map(|k| (pos[k] - c[k]) * (pos[k] - c[k])).sum();
        libm::exp(-d2 / (2.0 * KERNEL_SIGMA * KERNEL_SIGMA))
    };
    p1 * f([7.0, 7.0, 7.0]) + p1 * p2 * f([10.0, 25.0, 15.0]) + f([20.0, 20.0, 5.0 + 20.0 * p2])
}

fn run_volume(dims: GridDims, p1: f64, p2: f64, noise_max: f64, seed: u64, run: usize) -> Vec<f32> {
    let k1 = Kernel::new(dims, [7.0, 7.0, 7.0]);
    let k2 = Kernel::new(dims, [10.0, 25.0, 15.0]);
    let k3 = Kernel::new(dims, [20.0, 20.0, 5.0 + 20.0 * p2]);
    // One stream per run; voxel v consumes the v-th draw, so the result does
    // not depend on which runs are generated or in what order.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run as u64);
    let mut out = Vec::with_capacity(dims.voxel_count());
    for z in 0..dims.nz {
        for y in 0..dims.ny {
            let a1 = p1 * k1.fy[y] * k1.fz[z];
            let a2 = p1 * p2 * k2.fy[y] * k2.fz[z];
            let a3 = k3.fy[y] * k3.fz[z];
            for x in 0..dims.nx {
                let mut g = a1 * k1.fx[x] + a2 * k2.fx[x] + a3 * k3.fx[x];
                if noise_max > 0.0 {
                    g += noise_max * rng.random::<f64>();
                }
                out.push(g as f32);
            }
        }
    }
    out
}

/// Evaluates the synthetic field for every sample row.
pub fn generate_synthetic(cfg: &SyntheticConfig, samples: &ParameterSpace) -> Result<Ensemble> {
    if samples.param_count() != 3 {
        return Err(Error::WrongParamCount { expected: 3, found: samples.param_count() });
    }
    if !(cfg.noise_max >= 0.0) {
        return Err(Error::InvalidConfig("noise_max must be non-negative"));
    }
    for r in 0..samples.run_count() {
        for (i, &v) in samples.row(r).iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::ParamOutOfRange { run: r, param: i, value: v });
            }
        }
    }
    let dims = cfg.dims;
    let volumes = par::map_range(samples.run_count(), |r| {
        let row = samples.row(r);
        run_volume(dims, row[0], row[1], cfg.noise_max, cfg.seed, r)
    });
    Ensemble::new("synthetic", dims, samples.clone(), volumes, Vec::new())
}
