use thiserror::Error;

/// Errors surfaced by the exact computation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("exterior power index {index} out of range for dimension {dim}")]
    ExteriorIndex { index: usize, dim: usize },
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series constant term must be 1")]
    ConstantTermNotOne,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("rational function has a pole at z = 0")]
    PoleAtZero,
    #[error("rational function numerator vanishes at z = 0, reciprocal undefined")]
    ZeroAtOrigin,
    #[error("no rational fit of degree <= {dmax} matches the series")]
    NoPadeFit { dmax: usize },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("generator {index} is not invertible")]
    NonInvertibleGenerator { index: usize },
    #[error("group order exceeds cap {cap}; holonomy is not finite or misconfigured")]
    OrderCap { cap: usize },
    #[error("no intertwiner: the linear part is not compatible with holonomy element {element}")]
    NoIntertwiner { element: usize },
    #[error("character is not multiplicative on the holonomy group")]
    NonMultiplicativeCharacter,
    #[error("averaged value {value} is not an integer: input is not a consistent infra-nilmanifold map datum")]
    NonIntegerAverage { value: String },
    #[error("degenerate: infinite or non-isolated fixed-point set (det(I - D^k) = 0)")]
    DegenerateFixedPointSet,
    #[error("spectral character undecidable: {0}")]
    Undecidable(String),
    #[error("exactness certificate failed: {0}")]
    CertificateFailure(String),
    #[error("expected integer coefficients: {0}")]
    NonIntegerCoefficients(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown catalog entry '{0}'")]
    UnknownCatalog(String),
    #[error("unknown map '{0}' in input data")]
    UnknownMap(String),
    #[error("missing L(f_+^k) value for an index-2 positive part")]
    MissingPlusValue,
    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
