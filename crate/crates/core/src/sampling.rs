//! Parameter-space sampling: Saltelli layout over an Owen-scrambled Sobol
//! base sequence, plus plain low-discrepancy and pseudo-random designs.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ensemble::{ParameterSpace, ParameterSpec, SampleLayout};
use crate::error::{Error, Result};

const MAX_SOBOL_POINTS: usize = 1 << 16;

/// Row indices of the Saltelli blocks for `base_n` base points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaltelliBlocks {
    pub base_n: usize,
    pub params: usize,
}

impl SaltelliBlocks {
    pub fn rows(&self) -> usize {
        self.base_n * (self.params + 2)
    }

    #[inline]
    pub fn a(&self, j: usize) -> usize {
        j
    }

    #[inline]
    pub fn b(&self, j: usize) -> usize {
        self.base_n + j
    }

    /// Row `j` of the block equal to A with column `i` taken from B.
    #[inline]
    pub fn ab(&self, i: usize, j: usize) -> usize {
        (2 + i) * self.base_n + j
    }
}

fn scale(u: f32, p: &ParameterSpec) -> f64 {
    // f32 in [0, 1) keeps the result inside [min, max] after scaling.
    (p.min + u as f64 * (p.max - p.min)).clamp(p.min, p.max)
}

fn check_sobol(dims: usize, points: usize) -> Result<()> {
    if dims > sobol_burley::NUM_DIMENSIONS as usize {
        return Err(Error::InvalidConfig("too many dimensions for the Sobol base sequence"));
    }
    if points > MAX_SOBOL_POINTS {
        return Err(Error::InvalidConfig("too many points for the Sobol base sequence"));
    }
    Ok(())
}

/// Saltelli design: `base_n * (n + 2)` rows laid out as A, B, AB_1 .. AB_n.
///
/// A and B are the first and last `n` dimensions of a `2n`-dimensional
/// scrambled Sobol sequence; `seed` selects the scramble.
pub fn saltelli_sample(params: &[ParameterSpec], base_n: usize, seed: u32) -> Result<ParameterSpace> {
    let n = params.len();
    if n == 0 {
        return Err(Error::InvalidConfig("at least one parameter is required"));
    }
    if base_n < 2 {
        return Err(Error::InvalidBaseN(base_n));
    }
    check_sobol(2 * n, base_n)?;
    let base: Vec<f64> = (0..base_n)
        .flat_map(|j| {
            (0..2 * n).map(move |d| scale(sobol_burley::sample(j as u32, d as u32, seed), &params[d % n]))
        })
        .collect();
    let a = |j: usize, i: usize| base[j * 2 * n + i];
    let b = |j: usize, i: usize| base[j * 2 * n + n + i];

    let blocks = SaltelliBlocks { base_n, params: n };
    let mut samples = Vec::with_capacity(blocks.rows() * n);
    for j in 0..base_n {
        samples.extend((0..n).map(|i| a(j, i)));
    }
    for j in 0..base_n {
        samples.extend((0..n).map(|i| b(j, i)));
    }
    for swapped in 0..n {
        for j in 0..base_n {
            samples.extend((0..n).map(|i| if i == swapped { b(j, i) } else { a(j, i) }));
        }
    }
    ParameterSpace::new(params.to_vec(), samples, SampleLayout::Saltelli { base_n })
}

/// `count` points of a scrambled Sobol sequence, without Saltelli structure.
pub fn sobol_sample(params: &[ParameterSpec], count: usize, seed: u32) -> Result<ParameterSpace> {
    check_sobol(params.len(), count)?;
    let samples = (0..count)
        .flat_map(|j| params.iter().enumerate().map(move |(d, p)| scale(sobol_burley::sample(j as u32, d as u32, seed), p)))
        .collect();
    ParameterSpace::new(params.to_vec(), samples, SampleLayout::Unstructured)
}

/// Independent uniform samples.
pub fn random_sample(params: &[ParameterSpec], count: usize, seed: u64) -> Result<ParameterSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(count * params.len());
    for _ in 0..count {
        for p in params {
            let u: f64 = rng.random();
            samples.push((p.min + u * (p.max - p.min)).clamp(p.min, p.max));
        }
    }
    ParameterSpace::new(params.to_vec(), samples, SampleLayout::Unstructured)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn unit3() -> Vec<ParameterSpec> {
        vec![ParameterSpec::unit("P1"), ParameterSpec::unit("P2"), ParameterSpec::unit("P3")]
    }

    #[test]
    fn layout_row_count() {
        let ps = saltelli_sample(&unit3(), 2, 0).unwrap();
        assert_eq!(ps.run_count(), 10);
        assert_eq!(ps.layout(), SampleLayout::Saltelli { base_n: 2 });
    }

    #[test]
    fn rejects_small_base() {
        assert_eq!(saltelli_sample(&unit3(), 1, 0), Err(Error::InvalidBaseN(1)));
    }

    #[test]
    fn ab_blocks_swap_exactly_one_column() {
        let base_n = 8;
        let ps = saltelli_sample(&unit3(), base_n, 3).unwrap();
        let blocks = SaltelliBlocks { base_n, params: 3 };
        for i in 0..3 {
            for j in 0..base_n {
                let ab = ps.row(blocks.ab(i, j));
                let a = ps.row(blocks.a(j));
                let b = ps.row(blocks.b(j));
                for c in 0..3 {
                    let expected = if c == i { b[c] } else { a[c] };
                    assert_eq!(ab[c], expected);
                }
            }
        }
        // row base_n of AB_1 (second parameter block, zero-based index 1)
        let row = ps.row(blocks.ab(1, 0));
        assert_eq!(row[0], ps.row(0)[0]);
        assert_eq!(row[1], ps.row(base_n)[1]);
        assert_eq!(row[2], ps.row(0)[2]);
    }

    #[test]
    fn rows_stay_in_declared_ranges() {
        let params = vec![ParameterSpec::new("a", -3.0, 3.0), ParameterSpec::new("b", 10.0, 11.0)];
        let ps = saltelli_sample(&params, 64, 1).unwrap();
        for r in 0..ps.run_count() {
            let row = ps.row(r);
            assert!((-3.0..=3.0).contains(&row[0]));
            assert!((10.0..=11.0).contains(&row[1]));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(saltelli_sample(&unit3(), 16, 5), saltelli_sample(&unit3(), 16, 5));
        assert_ne!(saltelli_sample(&unit3(), 16, 5), saltelli_sample(&unit3(), 16, 6));
    }
}
