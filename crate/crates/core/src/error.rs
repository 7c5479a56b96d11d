//! Crate-wide error type with stable machine-readable codes.

use std::fmt;

use crate::integrate::IntegralEstimate;

/// Errors produced by operations in this crate.
#[derive(Debug, Clone)]
pub enum Error {
    /// An argument or arithmetic result was NaN or infinite.
    NonFinite { context: &'static str },
    /// Inversion or division by zero or by a zero-divisor (real part zero).
    ZeroDivisor,
    /// Text failed to parse as a dual literal or as an expression.
    Parse { offset: usize, message: String },
    /// Evaluation left the domain of a primitive (logarithm, division,
    /// negative power of a zero-divisor).
    Domain { expr: String, message: String },
    /// Interval endpoints are not strictly ordered under the requested order.
    InvalidInterval { message: String },
    /// Neighborhood radius must be a positive finite real.
    InvalidRadius,
    /// An integrability tolerance must be strictly positive in the chosen
    /// order and must have a nonzero product of components.
    InvalidEpsilon,
    /// The refinement loop hit its depth limit before reaching the gap
    /// tolerance. Carries the deepest estimate computed.
    MaxDepthExceeded { estimate: Box<IntegralEstimate> },
    /// A verifier precondition did not hold (for example pointwise
    /// dominance before a monotonicity check).
    PreconditionFailed { message: String },
    /// Certified cell bounds regressed across a refinement step. This
    /// indicates a defect in the bound propagation and is never expected.
    RefinementRegression { depth: usize },
    /// Rejection sampling failed to find an admissible point.
    SamplingExhausted { context: &'static str },
    /// The operation requires an expression-backed function.
    Unsupported { message: String },
    /// A count or size argument was out of range.
    InvalidArgument { message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable identifier for each error class, used by the command-line
    /// front end and safe to match on in scripts.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "E_NONFINITE",
            Error::ZeroDivisor => "E_ZERO_DIVISOR",
            Error::Parse { .. } => "E_PARSE",
            Error::Domain { .. } => "E_DOMAIN",
            Error::InvalidInterval { .. } => "E_INVALID_INTERVAL",
            Error::InvalidRadius => "E_INVALID_RADIUS",
            Error::InvalidEpsilon => "E_INVALID_EPSILON",
            Error::MaxDepthExceeded { .. } => "E_MAX_DEPTH",
            Error::PreconditionFailed { .. } => "E_PRECONDITION",
            Error::RefinementRegression { .. } => "E_REFINEMENT",
            Error::SamplingExhausted { .. } => "E_SAMPLING",
            Error::Unsupported { .. } => "E_UNSUPPORTED",
            Error::InvalidArgument { .. } => "E_INVALID_ARGUMENT",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { context } => {
                write!(f, "non-finite value in {context}")
            }
            Error::ZeroDivisor => {
                write!(f, "inverse of zero or of a zero-divisor does not exist")
            }
            Error::Parse { offset, message } => {
                write!(f, "parse error at byte {offset}: {message}")
            }
            Error::Domain { expr, message } => {
                write!(f, "domain error in `{expr}`: {message}")
            }
            Error::InvalidInterval { message } => {
                write!(f, "invalid interval: {message}")
            }
            Error::InvalidRadius => {
                write!(f, "neighborhood radius must be positive and finite")
            }
            Error::InvalidEpsilon => write!(
                f,
                "integrability tolerance must be order-positive with \
                 nonzero real and zero-divisor parts"
            ),
            Error::MaxDepthExceeded { estimate } => write!(
                f,
                "gap {:.3e} above tolerance after {} refinement levels",
                estimate.gap_norm, estimate.depth
            ),
            Error::PreconditionFailed { message } => {
                write!(f, "precondition failed: {message}")
            }
            Error::RefinementRegression { depth } => {
                write!(f, "certified bounds regressed at refinement level {depth}")
            }
            Error::SamplingExhausted { context } => {
                write!(f, "could not sample an admissible point for {context}")
            }
            Error::Unsupported { message } => write!(f, "unsupported: {message}"),
            Error::InvalidArgument { message } => {
                write!(f, "invalid argument: {message}")
            }
        }
    }
}

impl std::error::Error for Error {}
