//! Spatially resolved global sensitivity analysis for simulation ensembles.
//!
//! The crate is `no_std` with `alloc`. It covers the whole numerical pipeline:
//!
//! - [`ensemble`], [`sampling`], [`synthetic`]: the ensemble data model,
//!   Saltelli sampling and the synthetic three-kernel benchmark ensemble.
//! - [`sensitivity`]: per-voxel first-order Sobol indices, the moment
//!   independent δ measure and distance-based generalized sensitivity
//!   analysis (DGSA), each mapped over a whole volume.
//! - [`sfc`]: data-driven, Hilbert and scanline space-filling curves.
//! - [`evaluation`]: curve coherency metrics and convergence studies.
//! - [`viewdata`]: the payloads rendered by the linked views (parallel
//!   coordinates, horizon graphs, parameter dependency heatmaps, meshes).
//!
//! File formats, the CLI and the HTTP service live in the `sensvol` crate.
//! The `parallel` feature (on by default through `std`) maps volume-level
//! computations over voxels with rayon.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod ensemble;
pub mod error;
pub mod evaluation;
pub mod grid;
mod par;
pub mod sampling;
pub mod sensitivity;
pub mod sfc;
pub mod synthetic;
pub mod viewdata;

pub use ensemble::{AuxField, Ensemble, ParameterSpace, ParameterSpec, SampleLayout};
pub use error::{Error, Result};
pub use grid::GridDims;
pub use sensitivity::{Measure, SensitivityFieldSet};
pub use sfc::{CurveKind, SfcConfig, SfcCurve};
