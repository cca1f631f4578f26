use thiserror::Error;

/// Errors raised anywhere in the algebra kernel.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient mismatch")]
    AmbientMismatch,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("budget: step budget of {limit} exceeded ({used} steps used{partial})")]
    Budget { limit: u64, used: u64, partial: String },
    #[error("inhomogeneous relation: {0}")]
    InhomogeneousRelation(String),
    #[error("inhomogeneous image: {0}")]
    InhomogeneousImage(String),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("trivial ring: relations of `{0}` generate the unit ideal")]
    TrivialRing(String),
    #[error("not a proper root: exponent {0} must be at least 2")]
    NotProperRoot(u32),
    #[error("piece too large: degree piece has {dim} monomials, bound is {bound}")]
    PieceTooLarge { dim: usize, bound: usize },
    #[error("inexact division")]
    InexactDivision,
    #[error("alphas not distinct")]
    AlphasNotDistinct,
    #[error("unstable: no stabilization up to t = {t_max}; ranks {ranks:?}")]
    Unstable { t_max: u32, ranks: Vec<usize> },
    #[error("unsupported: non-CM factor")]
    NonCohenMacaulay,
    #[error("singular: {0}")]
    Singular(String),
    #[error("presentation file: {0}")]
    PresentationFormat(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
