//! Headerless little-endian volume files.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Reads exactly `count` float32 values.
pub fn read_f32(path: &Path, count: usize) -> Result<Vec<f32>> {
    let bytes = read_exact_len(path, count as u64 * 4)?;
    Ok(bytes.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect())
}

pub fn write_f32(path: &Path, values: &[f32]) -> Result<()> {
    let mut bytes = Vec::with_capacity(values.len() * 4);
    for v in values {
        bytes.extend_from_slice(&v.to_le_bytes());
    }
    write(path, &bytes)
}

/// Reads exactly `count` bytes.
pub fn read_u8(path: &Path, count: usize) -> Result<Vec<u8>> {
    read_exact_len(path, count as u64)
}

pub fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn read_exact_len(path: &Path, expected: u64) -> Result<Vec<u8>> {
    let found = fs::metadata(path).map_err(|e| Error::io(path, e))?.len();
    if found != expected {
        return Err(Error::SizeMismatch { path: path.to_path_buf(), expected, found });
    }
    fs::read(path).map_err(|e| Error::io(path, e))
}
