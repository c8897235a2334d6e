use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid pmf: {0}")]
    InvalidPmf(String),

    #[error("parameter `{name}` out of range: {value} ({expected})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("zero weight at index {0}")]
    ZeroWeight(usize),

    #[error("length mismatch: {0} weights vs {1} probabilities")]
    LengthMismatch(usize, usize),

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("fft round-off produced a negative mass {value:e} at index {index}")]
    FftNegative { index: usize, value: f64 },

    #[error("quadrature did not converge within {panels} panels (error estimate {estimate:e}, target {target:e})")]
    QuadratureBudget {
        panels: usize,
        estimate: f64,
        target: f64,
    },

    #[error("guard exceeded: {what} = {value} > {limit}")]
    Guard {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("empty set P_C(M): C = {c} exceeds |M| = {size}")]
    EmptyPolytope { c: String, size: usize },

    #[error("{count} sign changes found at {points:?}; single-crossing violated")]
    MultipleCrossings { count: usize, points: Vec<f64> },

    #[error("crossings at {0:e} and {1:e} are closer than the resolution; tangency and double crossing are indistinguishable")]
    IndeterminateCrossing(f64, f64),

    #[error("monotonicity violated at s = {s}: phi dropped by {drop:e} (tolerance {tolerance:e})")]
    NotMonotone { s: f64, drop: f64, tolerance: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    ok: bool,
    expected: &'static str,
) -> Result<()> {
    if ok && !value.is_nan() {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected,
        })
    }
}
