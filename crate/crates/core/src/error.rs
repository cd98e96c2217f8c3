use thiserror::Error;

/// Errors raised by the exact algebra layers and the command-line front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("smith normal form requires integer entries")]
    RationalEntries,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("composite of differentials is nonzero: {0}")]
    CompositeNonzero(String),

    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),

    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("invalid multicomplex: {0}")]
    InvalidMulticomplex(String),

    #[error("invalid mixed complex: {0}")]
    InvalidMixed(String),

    #[error("window error: {0}")]
    Window(String),

    #[error("presentation is not smooth (has relations); {0}")]
    NonSmooth(String),

    #[error("operation requires rational coefficients: {0}")]
    RequiresRationals(String),

    #[error("relation reduction failure: {0}")]
    UnsupportedRelations(String),

    #[error(
        "inhomogeneous relation {relation}: term `{term}` has weight {found}, expected {expected}"
    )]
    Inhomogeneous {
        relation: usize,
        term: String,
        found: i64,
        expected: i64,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
