use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator `{name}` needs n >= {min}, got {got}")]
    GeneratorSize { name: String, min: usize, got: usize },

    #[error("form degree {p} out of range (complex has degrees 0..{limit})")]
    DegreeOutOfRange { p: usize, limit: usize },

    #[error("matrix is not symmetric: |M[{row},{col}] - M[{col},{row}]| = {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("right-hand side has a harmonic component of norm {harmonic_norm:e}; not in the range of the operator")]
    Unsolvable { harmonic_norm: f64 },

    #[error("f(0) must vanish, got |f(0)| = {0:e}")]
    FunctionNotZeroAtOrigin(f64),

    #[error("simplex {0:?} is not in the complex")]
    NotInComplex(Vec<usize>),

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("cover does not contain vertices {0:?}")]
    NotCovering(Vec<usize>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
