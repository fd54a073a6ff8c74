use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("missing value for variable `{0}`")]
    MissingVariable(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("invalid superalgebra: {0}")]
    InvalidAlgebra(String),

    #[error("algebra `{0}` has uninstantiated parameters: {1}")]
    Uninstantiated(String, String),

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("every even basis vector lies in the square of the even part; no admissible sample")]
    DegenerateSampling,

    #[error("derivation family is not simultaneously triangular in the standard basis")]
    UnsupportedShape,

    #[error("invalid family specification: {0}")]
    InvalidSpec(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
