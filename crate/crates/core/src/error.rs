//! Crate-wide error type.

use std::fmt;

#[derive(Debug)]
pub enum Error {
    /// Quadrature error estimate stagnated above the requested tolerance.
    NonConvergence { achieved: f64, tol: f64 },
    /// A rate plus shift was exactly zero in `integrate_shifted`; valid
    /// eigenvalue tables never produce this, so it signals misuse.
    ResonantRate { rate: String },
    /// An eigenvalue-table invariant failed; indicates an implementation bug.
    InvariantViolation { entry: String, invariant: String },
    /// Initial data with non-positive mass or second moment.
    DegenerateData(String),
    /// A projection or moment quadrature could not certify the requested accuracy.
    QuadratureFailure(String),
    /// Coefficient magnitudes left the representable range at the working precision.
    PrecisionExhausted(String),
    /// Corrupt or incompatible serialized data.
    Format(String),
    /// Grids or table shapes do not line up.
    ShapeMismatch(String),
    /// Adaptive stepper could not meet its tolerance above the minimum step.
    StepSizeUnderflow { t: f64 },
    /// The linear norm vanished where a ratio was requested.
    DivisionByZero(String),
    /// Invalid arguments supplied to a public entry point.
    Usage(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonConvergence { achieved, tol } => write!(
                f,
                "quadrature did not converge: error estimate {achieved:.3e} above tolerance {tol:.3e}"
            ),
            Error::ResonantRate { rate } => {
                write!(f, "resonant rate: {rate} + shift is exactly zero")
            }
            Error::InvariantViolation { entry, invariant } => {
                write!(f, "invariant violation at {entry}: {invariant}")
            }
            Error::DegenerateData(msg) => write!(f, "degenerate initial data: {msg}"),
            Error::QuadratureFailure(msg) => write!(f, "quadrature failure: {msg}"),
            Error::PrecisionExhausted(msg) => write!(f, "precision exhausted: {msg}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::StepSizeUnderflow { t } => write!(f, "step size underflow at t = {t}"),
            Error::DivisionByZero(msg) => write!(f, "division by zero: {msg}"),
            Error::Usage(msg) => write!(f, "invalid arguments: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
