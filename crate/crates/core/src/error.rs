use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zeta has a pole at s = 1")]
    PoleAt1,
    #[error("|Im s| = {0} exceeds the validated range 1e5")]
    RangeExceeded(f64),
    #[error("target error {target:e} unreachable (best bound {achieved:e})")]
    PrecisionUnreachable { target: f64, achieved: f64 },
    #[error("gamma has a pole at the non-positive integer {0}")]
    PoleAtNonPositiveInteger(f64),
    #[error("chi has a pole at the odd positive integer {0}")]
    PoleHit(f64),
    #[error("value overflows double precision at s = {0}")]
    Overflow(Complex64),
    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expression is constant; at least one exponent must be nonzero")]
    ConstantExpression,

    #[error("no nonzero Dirichlet coefficient found up to n = {0}")]
    LeadingIndexNotFound(usize),
    #[error("lattice expansion unstable: {0}")]
    TruncationUnstable(String),
    #[error("zero-free half-plane not certifiable for sigma <= 60")]
    NotCertifiable,
    #[error("left zero-free scan inconclusive: |F| not dominated at {0}")]
    ScanInconclusive(Complex64),

    #[error("F nearly vanishes on the contour near {at}")]
    BoundaryZeroSuspected { at: Complex64, edge: Edge },
    #[error("argument change {0} is not close to a multiple of 2π")]
    QuadratureUnstable(f64),
    #[error("rectangle contains the pole at s = 1")]
    PoleInRectangle,
    #[error("zero near {0} could not be certified by a winding check")]
    CertificationFailed(Complex64),

    #[error("condition Σ_{{j∈J}} c_j ≠ 0 violated (|sumJ| = {0:e})")]
    ConditionViolated(f64),
    #[error("at least {need} zeros are required, got {got}")]
    TooFewZeros { need: usize, got: usize },
}

/// Which side of a contour a near-zero was detected on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Bottom,
    Right,
    Top,
    Left,
    Circle,
}

/// Coarse classification used for CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::PoleAt1
            | Error::RangeExceeded(_)
            | Error::PoleAtNonPositiveInteger(_)
            | Error::PoleHit(_)
            | Error::InvalidRequest(_)
            | Error::Syntax { .. }
            | Error::ConstantExpression
            | Error::PoleInRectangle
            | Error::ConditionViolated(_)
            | Error::TooFewZeros { .. } => ErrorKind::Input,
            _ => ErrorKind::Numerical,
        }
    }
}
