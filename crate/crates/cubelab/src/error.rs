use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {n} out of range (expected {min}..={max})")]
    DimensionOutOfRange { n: usize, min: usize, max: usize },

    #[error("coordinate {j} out of range for n = {n} (coordinates are 1..=n)")]
    CoordinateOutOfRange { j: usize, n: usize },

    #[error("point index {index} out of range for n = {n}")]
    PointOutOfRange { index: u64, n: usize },

    #[error("value length {got} does not match {expected} = d * 2^n")]
    ValueLengthMismatch { got: usize, expected: usize },

    #[error("vector length {got} does not match space dimension {expected}")]
    VectorDimensionMismatch { got: usize, expected: usize },

    #[error("expected a boolean function (d = 1, values in {{-1,+1}})")]
    NotBoolean,

    #[error("time must be {bound}, got {t}")]
    InvalidTime { t: f64, bound: &'static str },

    #[error("exponent {p} out of range ({expected})")]
    InvalidExponent { p: f64, expected: &'static str },

    #[error("parameter {name} = {value} out of range ({expected})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("hypercontractivity parameters refused: e^(-2t) = {actual:.6e} > (p-1)/(q-1) = {limit:.6e}")]
    HypercontractivityRegion { actual: f64, limit: f64 },

    #[error("exact mode needs n <= {max}, got n = {n}; supply a sample budget instead")]
    ExactModeTooLarge { n: usize, max: usize },

    #[error("quadrature failed to converge: error estimate {error:.3e} after {panels} panels (target {target:.3e})")]
    QuadratureNoConvergence {
        error: f64,
        target: f64,
        panels: usize,
    },

    #[error("integral diverges or exceeds cap {cap:.3e} (partial value {value:.3e})")]
    DivergentIntegral { value: f64, cap: f64 },

    #[error("weight function invalid: {0}")]
    InvalidWeight(String),

    #[error("input vectors are all zero")]
    AllZeroVectors,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("probabilities sum to {sum} (expected 1 within 1e-12)")]
    ProbabilityNotNormalized { sum: f64 },

    #[error("normalizer is zero: {0}")]
    ZeroNormalizer(&'static str),

    #[error("metric space invalid: {0}")]
    InvalidMetric(String),

    #[error("value at point {index} is not a valid metric index: {value}")]
    MetricIndexOutOfRange { index: usize, value: f64 },

    #[error("function is not monotone (offending edge at point {point}, coordinate {coordinate})")]
    NotMonotone { point: u64, coordinate: usize },

    #[error("file format error in {path} at {field}: {message}")]
    FileFormat {
        path: String,
        field: String,
        message: String,
    },

    #[error("suite config error: {0}")]
    Config(String),

    #[error("unknown zoo function spec: {0}")]
    UnknownZooSpec(String),

    #[error("unknown weight label: {0}")]
    UnknownWeightLabel(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
