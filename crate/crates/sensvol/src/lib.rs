//! File formats, preprocessing commands and the HTTP service on top of
//! `sensvol-core`.
//!
//! The preprocessing commands in [`cli`] write everything the service needs
//! (sensitivity volumes, the curve); [`service`] only resamples that data
//! into view payloads and never computes sensitivities itself.

pub mod cli;
pub mod error;
pub mod io;
pub mod service;
pub mod timing;

pub use error::{Error, Result};
