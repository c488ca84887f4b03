use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which resource cap was exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    PairDegree,
    BasisSize,
    JetOrder,
    Factorization,
}

impl std::fmt::Display for Resource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Resource::PairDegree => "S-pair degree",
            Resource::BasisSize => "basis size",
            Resource::JetOrder => "jet order",
            Resource::Factorization => "factorization search",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("line {line}: {msg}")]
    Dsl { line: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("polynomial has degree zero in `{0}`")]
    DegreeZero(String),

    #[error("zero polynomial not allowed here")]
    ZeroInput,

    #[error("{resource} cap exceeded (limit {limit})")]
    ResourceExceeded { resource: Resource, limit: usize },

    #[error("invalid germ: {0}")]
    InvalidGerm(String),

    #[error("not an isolated singularity: {0}")]
    NonIsolated(String),

    #[error("germ is not A-finite: {0}")]
    NotAFinite(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_))
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceExceeded { .. })
    }
}
