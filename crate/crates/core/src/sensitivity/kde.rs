//! Gaussian kernel density estimates evaluated on a uniform grid.

use core::f64::consts::PI;

/// Contributions below this fraction of a kernel's peak are dropped.
const KERNEL_CUTOFF: f64 = 1e-13;

/// `len` equally spaced points starting at `start`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformGrid {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl UniformGrid {
    /// Grid with `len >= 2` points from `min` to `max` inclusive.
    pub fn spanning(min: f64, max: f64, len: usize) -> Self {
        debug_assert!(len >= 2);
        Self { start: min, step: (max - min) / (len - 1) as f64, len }
    }

    pub fn point(&self, j: usize) -> f64 {
        self.start + j as f64 * self.step
    }
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
pub fn sample_std(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
    libm::sqrt(ss / (n - 1) as f64)
}

/// Scott's rule for one dimension: `std * n^(-1/5)`.
pub fn scott_bandwidth(values: &[f64]) -> f64 {
    sample_std(values) * libm::pow(values.len() as f64, -0.2)
}

/// Adds the density estimate of `samples` with bandwidth `h` to `out`
/// (overwriting it), one value per grid point.
///
/// Kernels are summed exactly: along an equally spaced grid the Gaussian
/// obeys a two-term multiplicative recurrence, so each sample costs three
/// `exp` calls plus one multiply-add per grid point it reaches.
pub fn kde_on_grid(samples: &[f64], h: f64, grid: &UniformGrid, out: &mut [f64]) {
    debug_assert_eq!(out.len(), grid.len);
    debug_assert!(h > 0.0);
    out.iter_mut().for_each(|o| *o = 0.0);
    if samples.is_empty() {
        return;
    }
    let last = grid.len - 1;
    let u = if grid.step > 0.0 { grid.step / h } else { 0.0 };
    let q = libm::exp(-u * u);
    for &y in samples {
        let j0 = if grid.step > 0.0 {
            libm::round((y - grid.start) / grid.step).clamp(0.0, last as f64) as usize
        } else {
            0
        };
        let t = (grid.point(j0) - y) / h;
        let peak = libm::exp(-0.5 * t * t);
        out[j0] += peak;

        let mut k = peak;
        let mut r = libm::exp(-t * u - 0.5 * u * u);
        for o in out.iter_mut().skip(j0 + 1) {
            k *= r;
            r *= q;
            if k < KERNEL_CUTOFF {
                break;
            }
            *o += k;
        }
        let mut k = peak;
        let mut r = libm::exp(t * u - 0.5 * u * u);
        for o in out[..j0].iter_mut().rev() {
            k *= r;
            r *= q;
            if k < KERNEL_CUTOFF {
                break;
            }
            *o += k;
        }
    }
    let norm = 1.0 / (samples.len() as f64 * h * libm::sqrt(2.0 * PI));
    out.iter_mut().for_each(|o| *o *= norm);
}
