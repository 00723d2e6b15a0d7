use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes of the pencil analyses.
///
/// The variants mirror the hypotheses of the theory: regularity of the
/// pencil, consistency of the initial datum and decomposability of the
/// state space.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid pencil: {0}")]
    InvalidPencil(String),

    #[error("sE - A is numerically singular at s = {s} (smallest singular value {sigma_min:e})")]
    SingularAtS { s: Complex64, sigma_min: f64 },

    #[error("no point of the resolvent set found among the probed values")]
    EmptyResolventSet,

    #[error("state space does not split as ker E + ran R^E: {0}")]
    NotDecomposable(String),

    #[error("restriction of A to ker E is numerically singular (smallest singular value {0:e})")]
    DegenerateA0(f64),

    #[error("limit s R^E(s, A) did not converge: successive estimates differ by {difference:e}")]
    NoConvergence { difference: f64 },

    #[error("initial datum is not in ran E: relative Z0 component {residual:e}")]
    InconsistentIC { residual: f64 },

    #[error("block shapes do not conform: {0}")]
    ShapeMismatch(String),

    #[error("A4 block is numerically singular")]
    SingularA4,

    #[error("Schur complement S1(mu) is numerically singular at mu = {0}")]
    SingularSchur(Complex64),

    #[error("grid point {0} lies outside the open interval (0, pi)")]
    GridOutOfRange(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Text-format error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    DimensionMismatch,
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
            kind: ParseErrorKind::Syntax,
        }
    }

    pub(crate) fn dimension(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
            kind: ParseErrorKind::DimensionMismatch,
        }
    }
}
