//! Horizon-graph banding of non-negative values.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Band split of one value: `full_bands` complete bands below a top band
/// filled to `top_fill` (a fraction in `(0, 1]`, or 0 when the value is 0).
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Band {
    pub full_bands: u32,
    pub top_fill: f64,
}

impl Band {
    /// Index of the top band, or `None` for a zero value.
    pub fn top_index(&self) -> Option<u32> {
        (self.top_fill > 0.0).then_some(self.full_bands)
    }

    pub fn reconstruct(&self, bandwidth: f64) -> f64 {
        bandwidth * self.full_bands as f64 + bandwidth * self.top_fill
    }
}

/// Colors of the bands: band 0 gray, higher bands from white to red.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandRamp {
    pub first_band: [u8; 3],
    pub low: [u8; 3],
    pub high: [u8; 3],
}

impl Default for BandRamp {
    fn default() -> Self {
        Self { first_band: [160, 160, 160], low: [255, 255, 255], high: [200, 0, 0] }
    }
}

impl BandRamp {
    /// Color of band `index` when `band_count` bands are in use.
    pub fn color(&self, index: u32, band_count: u32) -> [u8; 3] {
        if index == 0 {
            return self.first_band;
        }
        let t = if band_count > 2 { (index - 1) as f64 / (band_count - 2) as f64 } else { 1.0 };
        let t = t.clamp(0.0, 1.0);
        core::array::from_fn(|c| libm::round(self.low[c] as f64 + t * (self.high[c] as f64 - self.low[c] as f64)) as u8)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HorizonSeries {
    pub bandwidth: f64,
    /// Number of bands needed for the largest value.
    pub band_count: u32,
    pub bands: Vec<Band>,
    pub ramp: BandRamp,
}

/// Splits `v >= 0` into bands of height `bandwidth`. An exact multiple
/// `v = k · bandwidth > 0` fills the `k`-th band completely.
pub fn band_of(v: f64, bandwidth: f64) -> Result<Band> {
    if v < 0.0 || v.is_nan() {
        return Err(Error::NegativeValue(v));
    }
    if !(bandwidth > 0.0) {
        return Err(Error::InvalidConfig("bandwidth must be positive"));
    }
    let q = v / bandwidth;
    let full = libm::floor(q);
    let rest = v - full * bandwidth;
    if full > 0.0 && rest <= 0.0 {
        return Ok(Band { full_bands: full as u32 - 1, top_fill: 1.0 });
    }
    Ok(Band { full_bands: full as u32, top_fill: (rest / bandwidth).min(1.0) })
}

pub fn horizon_bands(values: &[f64], bandwidth: f64) -> Result<HorizonSeries> {
    let bands = values.iter().map(|&v| band_of(v, bandwidth)).collect::<Result<Vec<_>>>()?;
    let band_count = bands.iter().filter_map(Band::top_index).map(|i| i + 1).max().unwrap_or(0);
    Ok(HorizonSeries { bandwidth, band_count, bands, ramp: BandRamp::default() })
}
