use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not contained in the larger space")]
    NotContained,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("relation is not square ({dim_x} -> {dim_y})")]
    NonSquareRelation { dim_x: usize, dim_y: usize },
    #[error("minor order {order} out of range for a {rows}x{cols} pencil")]
    OrderOutOfRange {
        order: usize,
        rows: usize,
        cols: usize,
    },
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("root search exceeds the supported coefficient size")]
    RootSearchTooLarge,
    #[error("pencil is not regular")]
    NotRegular,
    #[error("{0} is not a resolvent point")]
    NotResolventPoint(String),
    #[error("relation has no resolvent point (spanning pencil is singular)")]
    NoResolventPoint,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no valid draw after {0} attempts")]
    RetryExhausted(usize),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
