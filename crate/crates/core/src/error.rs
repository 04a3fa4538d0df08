use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("no invertible {n}x{n} matrix found after {attempts} draws")]
    Sampling { n: usize, attempts: usize },
    #[error("polynomials are defined over different variable tables")]
    TableMismatch,
    #[error("variable {0} is not in the table")]
    UnknownVariable(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("point does not lie on the variety (generator {0} is nonzero)")]
    NotOnVariety(String),
    #[error("one-parameter limit does not exist: coordinate {0} has a negative power of t")]
    LimitDoesNotExist(String),
    #[error("point is outside the chart domain: pivot minor {0} vanishes")]
    ChartDomain(String),
    #[error("polynomial is not a homogeneous quadric")]
    NotQuadratic,
    #[error("coordinate map is invalid: {0}")]
    CoordMap(String),
}

pub type Result<T> = std::result::Result<T, Error>;
