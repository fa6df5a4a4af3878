use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("affine substitution x -> s*x + t needs s != 0")]
    DegenerateAffine,
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
    #[error("not representable as a quasi-rational function: {0}")]
    Representation(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("no degree-homogeneous decomposition: {0}")]
    Decomposition(String),
    #[error("unexpected subspace shape: {0}")]
    Shape(String),
    #[error("not a factorization eigenfunction, residual {0}")]
    NotEigenfunction(String),
    #[error("factorization gauge must be nonzero")]
    ZeroGauge,
    #[error("factorization identity failed: {0}")]
    Factorization(String),
    #[error("shape invariance violated: {0}")]
    ShapeInvariance(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("degenerate eigenspace: {0}")]
    Degeneracy(String),
    #[error("quadrature failed: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
