//! Error type shared across the reconstruction toolchain.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A pivot was non-positive during Cholesky factorization.
    NotPositiveDefinite,
    /// Reference volume of a relative metric is identically zero.
    ZeroReference,
    /// Volume dims are not divisible by 2^j_max.
    DimsNotDivisible { dims: (usize, usize, usize), j_max: usize },
    /// Coefficient field does not match the expected subband layout.
    MalformedField { expected: usize, got: usize },
    /// Acquisition geometry is inconsistent (R, dims, coil count, ...).
    GeometryMismatch(String),
    /// No voxel exceeded the sensitivity support threshold.
    EmptyMask,
    /// Not enough noise samples to estimate a covariance.
    TooFewSamples { needed: usize, got: usize },
    /// Operands do not share a common shape.
    ShapeMismatch(String),
    /// The solver criterion became non-finite.
    Diverged { iteration: usize },
    /// Coil profile generation failed to produce a full-rank geometry.
    RankDeficientGeometry,
    /// Solver or estimator configuration is invalid.
    InvalidConfig(String),
    /// On-disk container is malformed.
    BadFile(String),
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPositiveDefinite => write!(f, "matrix is not positive definite"),
            Error::ZeroReference => write!(f, "reference volume is identically zero"),
            Error::DimsNotDivisible { dims, j_max } => write!(
                f,
                "dims {}x{}x{} not divisible by 2^{}",
                dims.0, dims.1, dims.2, j_max
            ),
            Error::MalformedField { expected, got } => {
                write!(f, "coefficient field has {} entries, expected {}", got, expected)
            }
            Error::GeometryMismatch(msg) => write!(f, "geometry mismatch: {}", msg),
            Error::EmptyMask => write!(f, "support mask is empty"),
            Error::TooFewSamples { needed, got } => {
                write!(f, "need at least {} noise samples, got {}", needed, got)
            }
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {}", msg),
            Error::Diverged { iteration } => {
                write!(f, "criterion became non-finite at iteration {}", iteration)
            }
            Error::RankDeficientGeometry => {
                write!(f, "coil profiles remained rank deficient after regeneration attempts")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {}", msg),
            Error::BadFile(msg) => write!(f, "bad file: {}", msg),
            Error::Io(msg) => write!(f, "i/o error: {}", msg),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
