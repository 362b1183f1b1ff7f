//! `curve.sfc`: a small header followed by the voxel order.
//!
//! Layout (little-endian): `b"SFC1"`, kind `u8`, dims `3 x u32`, alpha `f64`,
//! distance `u8`, reference point `3 x f64`, then `V` `u32` voxel indices.

use std::fs;
use std::path::Path;

use sensvol_core::sfc::DistanceKind;
use sensvol_core::{CurveKind, GridDims, SfcConfig, SfcCurve};

use super::raw;
use crate::error::{Error, Result};

pub const CURVE_FILE: &str = "curve.sfc";
const MAGIC: &[u8; 4] = b"SFC1";
const HEADER_LEN: usize = 4 + 1 + 12 + 8 + 1 + 24;

pub fn encode_curve(curve: &SfcCurve) -> Vec<u8> {
    let cfg = curve.config();
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * curve.len());
    out.extend_from_slice(MAGIC);
    out.push(curve.kind().code());
    for n in curve.dims().as_array() {
        out.extend_from_slice(&(n as u32).to_le_bytes());
    }
    out.extend_from_slice(&cfg.alpha.to_le_bytes());
    out.push(cfg.distance.code());
    for c in cfg.ref_point {
        out.extend_from_slice(&c.to_le_bytes());
    }
    for &v in curve.order() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(b[at..at + 4].try_into().unwrap())
}

fn f64_at(b: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(b[at..at + 8].try_into().unwrap())
}

/// Parses and fully re-validates a curve.
pub fn decode_curve(bytes: &[u8], path: &Path) -> Result<SfcCurve> {
    if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
        return Err(Error::malformed(path, "not an SFC1 file"));
    }
    let kind = CurveKind::from_code(bytes[4]).ok_or_else(|| Error::malformed(path, "unknown curve kind"))?;
    let dims = GridDims::new(u32_at(bytes, 5) as usize, u32_at(bytes, 9) as usize, u32_at(bytes, 13) as usize)
        .map_err(|e| Error::malformed(path, e))?;
    let alpha = f64_at(bytes, 17);
    let distance = DistanceKind::from_code(bytes[25]).ok_or_else(|| Error::malformed(path, "unknown distance"))?;
    let ref_point = [f64_at(bytes, 26), f64_at(bytes, 34), f64_at(bytes, 42)];
    let body = &bytes[HEADER_LEN..];
    let expected = (HEADER_LEN + 4 * dims.voxel_count()) as u64;
    if body.len() != 4 * dims.voxel_count() {
        return Err(Error::SizeMismatch { path: path.to_path_buf(), expected, found: bytes.len() as u64 });
    }
    let order = body.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect();
    let cfg = SfcConfig { alpha, distance, ref_point };
    SfcCurve::new(kind, dims, cfg, order).map_err(|e| Error::malformed(path, e))
}

pub fn write_curve(curve: &SfcCurve, path: &Path) -> Result<()> {
    raw::write(path, &encode_curve(curve))
}

pub fn read_curve(path: &Path) -> Result<SfcCurve> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_curve(&bytes, path)
}
