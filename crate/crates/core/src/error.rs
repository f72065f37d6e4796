use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("balanced coefficient in column {0}; resolve it before eliminating")]
    BalancedCoefficient(usize),
    #[error("no signed coefficient keeps every sampled hull point feasible")]
    Unresolvable,
    #[error("halfspace system describes an unbounded set")]
    Unbounded,
    #[error("halfspace system is not tropically convex: {0}")]
    NonConvex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
