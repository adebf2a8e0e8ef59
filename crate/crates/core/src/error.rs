use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite argument")]
    NonFinite,

    #[error("argument {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },

    /// Initial curvature data (0, 0) generates the straight line, which has no (a, b).
    #[error("degenerate initial data: (kappa, kappa') = (0, 0) is the straight line")]
    Degenerate,

    #[error("the straight line has no (sigma1, sigma2, j) type")]
    StraightLine,

    /// Coinciding endpoints.
    #[error("A = B: there are no closed Willmore curves")]
    NoClosedCurves,

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(value: f64, domain: &'static str) -> Error {
    Error::Domain { value, domain }
}
