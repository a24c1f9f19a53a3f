use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid set data: {0}")]
    InvalidSet(String),
    #[error("negative point {0} is outside the half-line")]
    NegativePoint(String),
    #[error("set class mismatch: {0}")]
    ClassMismatch(String),
    #[error("entourage variants differ: {0}")]
    MixedEntourages(String),
    #[error("precondition A ≺ B does not hold")]
    PrecFails,
    #[error("A is not contained in B")]
    NotNested,
    #[error("sets are not asymptotically disjoint")]
    NotDisjoint,
    #[error("no interpolating set exists: {0}")]
    NotNormal(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
