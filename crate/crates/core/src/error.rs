use thiserror::Error;

/// Crate-wide error type. Dimension and site mismatches in low-level matrix
/// arithmetic are panics (caller bugs); everything a caller can plausibly
/// trigger with valid-looking input is an `Error`.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("cannot parse scalar from {0:?}, expected \"p\" or \"p/r\"")]
    ParseScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid deformation parameter: {0}")]
    InvalidQ(String),
    #[error("polynomial variables do not match")]
    VarMismatch,
    #[error("evaluation of an identically zero operator polynomial")]
    EmptyPolynomial,
    #[error("site index {site} out of range for {total} sites")]
    SiteOutOfRange { site: usize, total: usize },
    #[error("site index {0} listed twice")]
    DuplicateSite(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("operator does not act as a scalar on the component: {0}")]
    NotScalar(String),
    #[error("interpolation denominator vanishes at q^{0}; q is too degenerate")]
    DegenerateInterpolation(i64),
    #[error("no nonzero highest weight vector for weight {0}")]
    NoHighestWeight(String),
    #[error("highest weight space for weight {0} has dimension {1}, expected 1")]
    AmbiguousHighestWeight(String, usize),
    #[error("not a partition: {0}")]
    InvalidShape(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("computation exceeds configured size caps: {0}")]
    ScaleExceeded(String),
    #[error("the two construction routes disagree: {0}")]
    RouteMismatch(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
