use thiserror::Error;

use crate::codes::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(ValidationReport),

    #[error("crossing index {index} out of range for a {n}-crossing diagram")]
    CrossingOutOfRange { index: usize, n: usize },

    #[error("diagram has nugatory crossings {0:?}; reduce it first")]
    NotReduced(Vec<usize>),

    #[error("diagram is not alternating")]
    NotAlternating,

    #[error("{n} crossings exceeds the naive evaluator limit of {limit}")]
    NaiveLimit { n: usize, limit: usize },

    #[error("state has {got} entries, diagram has {n} crossings")]
    StateLength { got: usize, n: usize },

    #[error("zero polynomial has no degrees")]
    ZeroPolynomial,

    #[error("exponent {exponent} is not divisible by 4")]
    NonIntegerExponent { exponent: i64 },

    #[error("move not applicable: {0}")]
    InapplicableMove(String),

    #[error("invalid flype site: {0}")]
    InvalidFlypeSite(String),

    #[error("flype orbit exceeded limit of {limit} diagrams ({} found so far)", .partial.len())]
    OrbitLimit { limit: usize, partial: Vec<crate::codes::Diagram> },

    #[error("rewrite produced an invalid diagram: {0}")]
    Internal(String),

    #[error("{0}")]
    Construction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
