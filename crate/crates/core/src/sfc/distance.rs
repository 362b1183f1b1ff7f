//! Distances between per-voxel sensitivity vectors.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum DistanceKind {
    /// Sum of absolute differences.
    #[default]
    L1,
    /// Euclidean distance.
    L2,
    /// Largest absolute difference.
    LInf,
    /// Sum of squared differences.
    Ssd,
    /// One minus the cosine similarity.
    Cosine,
}

impl DistanceKind {
    pub const ALL: [DistanceKind; 5] =
        [DistanceKind::L1, DistanceKind::L2, DistanceKind::LInf, DistanceKind::Ssd, DistanceKind::Cosine];

    pub fn as_str(&self) -> &'static str {
        match self {
            DistanceKind::L1 => "l1",
            DistanceKind::L2 => "l2",
            DistanceKind::LInf => "linf",
            DistanceKind::Ssd => "ssd",
            DistanceKind::Cosine => "cosine",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.as_str().eq_ignore_ascii_case(s))
    }

    pub fn code(&self) -> u8 {
        *self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    /// Whether raw distances are rescaled by their maximum over the dual graph.
    pub fn is_normalized_globally(&self) -> bool {
        !matches!(self, DistanceKind::Cosine)
    }
}

/// Raw distance between two vectors of equal length.
pub fn vector_distance(kind: DistanceKind, a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    Ok(distance_unchecked(kind, a, b))
}

pub(crate) fn distance_unchecked(kind: DistanceKind, a: &[f64], b: &[f64]) -> f64 {
    let pairs = a.iter().zip(b);
    match kind {
        DistanceKind::L1 => pairs.map(|(x, y)| (y - x).abs()).sum(),
        DistanceKind::L2 => libm::sqrt(pairs.map(|(x, y)| (y - x) * (y - x)).sum()),
        DistanceKind::LInf => pairs.map(|(x, y)| (y - x).abs()).fold(0.0, f64::max),
        DistanceKind::Ssd => pairs.map(|(x, y)| (y - x) * (y - x)).sum(),
        DistanceKind::Cosine => {
            let (mut dot, mut na, mut nb) = (0.0, 0.0, 0.0);
            for (x, y) in pairs {
                dot += x * y;
                na += x * x;
                nb += y * y;
            }
            match (na > 0.0, nb > 0.0) {
                (false, false) => 0.0,
                (true, true) => 1.0 - dot / (libm::sqrt(na) * libm::sqrt(nb)),
                _ => 1.0,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_examples() {
        assert_eq!(vector_distance(DistanceKind::L1, &[0.0, 0.0], &[1.0, 1.0]), Ok(2.0));
        assert_eq!(vector_distance(DistanceKind::L2, &[3.0, 4.0], &[0.0, 0.0]), Ok(5.0));
        assert_eq!(vector_distance(DistanceKind::LInf, &[3.0, 4.0], &[0.0, 0.0]), Ok(4.0));
        assert_eq!(vector_distance(DistanceKind::Ssd, &[3.0, 4.0], &[0.0, 0.0]), Ok(25.0));
        let d = vector_distance(DistanceKind::Cosine, &[0.2, 0.5, 0.1], &[0.4, 1.0, 0.2]).unwrap();
        assert!(d.abs() < 1e-12);
    }

    #[test]
    fn cosine_zero_vectors() {
        assert_eq!(vector_distance(DistanceKind::Cosine, &[0.0, 0.0], &[0.0, 0.0]), Ok(0.0));
        assert_eq!(vector_distance(DistanceKind::Cosine, &[0.0, 0.0], &[0.0, 3.0]), Ok(1.0));
    }

    #[test]
    fn length_mismatch() {
        assert_eq!(
            vector_distance(DistanceKind::L1, &[1.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn names_round_trip() {
        for k in DistanceKind::ALL {
            assert_eq!(DistanceKind::parse(k.as_str()), Some(k));
            assert_eq!(DistanceKind::from_code(k.code()), Some(k));
        }
    }
}
