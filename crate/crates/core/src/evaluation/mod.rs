//! Quality metrics for curves and sensitivity estimators.

pub mod acf;
pub mod coherency;
pub mod convergence;

pub use acf::{autocorrelation, Acf};
pub use coherency::{
    coherency_report, positional_coherency, value_coherency, value_coherency_of, CoherencyReport, DEFAULT_MAX_LAG,
};
pub use convergence::{
    convergence_from_fields, convergence_study, ConvergenceReport, ConvergenceStep, ConvergenceTracker,
};
