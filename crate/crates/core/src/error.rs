use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A single broken metric axiom found while validating a distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Negative { i: usize, j: usize, value: f64 },
    NonZeroDiagonal { i: usize, value: f64 },
    Asymmetric { i: usize, j: usize, dij: f64, dji: f64 },
    /// `dist(i, k) > dist(i, j) + dist(j, k)` beyond tolerance.
    Triangle { i: usize, j: usize, k: usize, excess: f64 },
    NotFinite { i: usize, j: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Negative { i, j, value } => write!(f, "negative distance d({i},{j}) = {value}"),
            Violation::NonZeroDiagonal { i, value } => write!(f, "d({i},{i}) = {value} is not zero"),
            Violation::Asymmetric { i, j, dij, dji } => {
                write!(f, "asymmetric: d({i},{j}) = {dij} but d({j},{i}) = {dji}")
            }
            Violation::Triangle { i, j, k, excess } => write!(
                f,
                "triangle inequality broken on ({i},{j},{k}): d({i},{k}) exceeds d({i},{j}) + d({j},{k}) by {excess}"
            ),
            Violation::NotFinite { i, j } => write!(f, "d({i},{j}) is not a finite number"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("metric validation failed with {} violation(s); first: {}", .0.len(), .0[0])]
    Validation(Vec<Violation>),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("structural error: {0}")]
    Structure(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
