//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the algebra kernel and the verification pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution is singular: variable `{0}` maps to zero under a negative power")]
    SubstitutionSingular(String),
    #[error("pole at the evaluation point")]
    PoleAtPoint,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vertex relation violated at vertex {vertex}")]
    VertexRelationViolated { vertex: usize },
    #[error("form is not log-canonical on pair ({first}, {second}): residual {residual}")]
    NotLogCanonical {
        first: String,
        second: String,
        residual: String,
    },
    #[error("two-form is degenerate")]
    DegenerateForm,
    #[error("vertex {0} is not a vertex of the quiver")]
    BadVertex(usize),
    #[error("({0}, {1}) is not a diagonal of the triangulation")]
    NotADiagonal(usize, usize),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("no orientation assignment yields triangular Stokes matrices")]
    OrientationInvalid,
    #[error("triangularity violated for Stokes matrix {0}")]
    TriangularityViolated(String),
    #[error("eigenvalues of the local monodromy coincide")]
    ResonantEigenvalues,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
