//! Autocorrelation of a series along the curve.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Acf {
    /// `values[l - 1]` is the autocorrelation at lag `l`.
    pub values: Vec<f64>,
    /// Mean over lags `1..=max_lag`.
    pub summary: f64,
}

/// Autocorrelation at lags `1..=max_lag`.
///
/// Deviations are taken from the overall mean; each lag is normalized by
/// the deviation norms of the two overlapping segments, so every value is a
/// cosine in `[-1, 1]`. A constant series is perfectly coherent (all ones);
/// a lag whose leading or trailing segment sits exactly on the mean scores 0.
pub fn autocorrelation(series: &[f64], max_lag: usize) -> Result<Acf> {
    let n = series.len();
    if max_lag == 0 || n <= max_lag {
        return Err(Error::SeriesTooShort { len: n, max_lag });
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let dev: Vec<f64> = series.iter().map(|v| v - mean).collect();
    if dev.iter().all(|&d| d == 0.0) {
        return Ok(Acf { values: alloc::vec![1.0; max_lag], summary: 1.0 });
    }
    // prefix sums of squared deviations give each segment norm in O(1)
    let mut sq = Vec::with_capacity(n + 1);
    sq.push(0.0);
    let mut acc = 0.0;
    for d in &dev {
        acc += d * d;
        sq.push(acc);
    }
    let values: Vec<f64> = (1..=max_lag)
        .map(|lag| {
            let num: f64 = dev[..n - lag].iter().zip(&dev[lag..]).map(|(a, b)| a * b).sum();
            let head = sq[n - lag];
            let tail = sq[n] - sq[lag];
            if head > 0.0 && tail > 0.0 {
                (num / (libm::sqrt(head) * libm::sqrt(tail))).clamp(-1.0, 1.0)
            } else {
                0.0
            }
        })
        .collect();
    let summary = values.iter().sum::<f64>() / max_lag as f64;
    Ok(Acf { values, summary })
}
