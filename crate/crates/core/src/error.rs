use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter |t| = {0} is outside [0, 1)")]
    ParamOutOfRange(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("the zero polynomial has no (bi)degree")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial does not lie in the span of the given basis")]
    NotInSpan,

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("k = {k} exceeds the exact-arithmetic limit {limit}")]
    ExactLimitExceeded { k: u32, limit: u32 },

    #[error("symmetrization requires u_j l_j > 0, got {product} at j = {j}")]
    NotSymmetrizable { j: usize, product: f64 },

    #[error("bisection did not converge to tolerance {tol} within {iterations} iterations")]
    NoConvergence { tol: f64, iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
