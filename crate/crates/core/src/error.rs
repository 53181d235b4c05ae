use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarSetMismatch { left: String, right: String },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("image of `{0}` is not a unit but the variable occurs with a negative exponent")]
    NonInvertibleImage(String),
    #[error("`{0}` is not a unit of the Laurent ring")]
    NotAUnit(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("braid word is not pure")]
    NotPure,
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("g-basis matrix is not reducible: {0}")]
    NotReducible(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
