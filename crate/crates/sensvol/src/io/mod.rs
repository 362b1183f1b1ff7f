//! On-disk formats.

pub mod curve;
pub mod dataset;
pub mod fields;
pub mod manifest;
pub mod raw;
pub mod report;

pub use curve::{read_curve, write_curve};
pub use dataset::DatasetDir;
pub use fields::{read_fields, write_fields};
pub use manifest::{load_ensemble, write_ensemble};
pub use report::{read_report, write_report, Report};
