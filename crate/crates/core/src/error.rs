use crate::grid::GridDims;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid grid dimensions {0:?}")]
    InvalidDims([usize; 3]),
    #[error("index {index} out of bounds for length {len}")]
    IndexOutOfBounds { index: usize, len: usize },
    #[error("expected {expected} values, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("run {run}, parameter {param}: value {value} outside the declared range")]
    RangeViolation { run: usize, param: usize, value: f64 },
    #[error("expected {expected} parameters, found {found}")]
    WrongParamCount { expected: usize, found: usize },
    #[error("run {run}, parameter {param}: value {value} outside [0, 1]")]
    ParamOutOfRange { run: usize, param: usize, value: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("Saltelli base size must be at least 2, got {0}")]
    InvalidBaseN(usize),
    #[error("output has zero variance")]
    VarianceZero,
    #[error("Saltelli layout expects {expected} rows, found {found}")]
    LayoutMismatch { expected: usize, found: usize },
    #[error("ensemble was not sampled with the Saltelli layout")]
    NotSaltelliLayout,
    #[error("a slice would hold {slice_size} samples, at least 2 are required")]
    TooFewSamples { slice_size: usize },
    #[error("invalid cluster count {k} for {distinct} distinct values")]
    InvalidK { k: usize, distinct: usize },
    #[error("{distinct} distinct values cannot be clustered into at least {k_min} clusters")]
    DegenerateData { distinct: usize, k_min: usize },
    #[error("cluster is empty")]
    EmptyCluster,
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("grid {0} has an odd dimension")]
    OddDimension(GridDims),
    #[error("dual graph is disconnected")]
    Disconnected,
    #[error("invalid curve: {0}")]
    InvalidCurve(&'static str),
    #[error("unsupported grid {0} for this curve")]
    UnsupportedDims(GridDims),
    #[error("series of length {len} is too short for max lag {max_lag}")]
    SeriesTooShort { len: usize, max_lag: usize },
    #[error("grid mismatch: {0} vs {1}")]
    DimsMismatch(GridDims, GridDims),
    #[error("ensembles of a convergence study must share grid and parameters")]
    GridMismatch,
    #[error("negative value {0} cannot be banded")]
    NegativeValue(f64),
    #[error("every axis was removed by the filter")]
    AllAxesFiltered,
    #[error("selection is empty")]
    EmptySelection,
    #[error("parameter index {0} out of range")]
    BadParamIndex(usize),
    #[error("grid has no filled cell")]
    AllEmpty,
}
