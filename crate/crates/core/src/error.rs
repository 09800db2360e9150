use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter mismatch between operands")]
    ParamMismatch,

    #[error("action is not transitive ({orbits} orbits on {degree} points)")]
    NotTransitive { degree: usize, orbits: usize },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("size guard exceeded: {what} = {value} > {limit}")]
    Guard {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("inexact division in {0}")]
    InexactDivision(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
