use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {0} is vertical or at infinity and has no dual point")]
    VerticalLineNotDualizable(String),
    #[error("duplicate point ({0}) in the input family")]
    DuplicatePoint(String),
    #[error("the family is empty")]
    EmptyFamily,
    #[error("expected {expected} point sets, got {got}")]
    WrongSetCount { expected: usize, got: usize },
    #[error("the query point coincides with input point ({0})")]
    QCoincidesWithInputPoint(String),
    #[error("no bisecting pair found")]
    NoSolutionFound,
    #[error("input has {got} points, above the oracle cap of {cap}")]
    InputTooLarge { got: usize, cap: usize },
    #[error("all conic coefficients are zero")]
    ZeroConic,
    #[error("conic is not degenerate; its zero set is not a pair of lines")]
    NonDegenerateConic,
    #[error("conic does not split into lines")]
    NotALinePair,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("solver did not converge after {restarts} restarts (best relative residual {best:e})")]
    ConvergenceFailure { restarts: usize, best: f64 },
    #[error("invalid line: all coefficients are zero")]
    ZeroLine,
    #[error("zone line {0}")]
    ZoneDegenerate(String),
    #[error("could not parse number `{0}`")]
    ParseNumber(String),
}
