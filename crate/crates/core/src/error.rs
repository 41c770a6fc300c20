use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("direction vector must be nonzero")]
    ZeroDirection,
    #[error("point set is not centrally symmetric: {0}")]
    NotSymmetric(String),
    #[error("origin is not an interior point of the body")]
    OriginNotInterior,
    #[error("unknown builtin body `{0}`")]
    UnknownBody(String),
    #[error("lambda {lambda} is below lambda_0 = {lambda_zero}")]
    LambdaTooSmall { lambda: String, lambda_zero: String },
    #[error("lambda {lambda} must be smaller than mu {mu}")]
    LambdaOrder { lambda: String, mu: String },
    #[error("point does not lie on the parameter sphere: {0}")]
    PointNotOnSphere(String),
    #[error("point lies on the line spanned by the direction")]
    CollinearPoint,
    #[error("cell complex is empty")]
    EmptyComplex,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
