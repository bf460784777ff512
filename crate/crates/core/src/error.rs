use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("weight has a pole at the endpoint z = {0}")]
    PoleAtEndpoint(f64),
    #[error("point {re}{im:+}i lies outside the region where log h is analytic")]
    OutsideAnalyticRegion { re: f64, im: f64 },
    #[error("h has non-positive real part on the ellipse rho = {rho} (sample value {value})")]
    NonPositiveWeight { rho: f64, value: f64 },
    #[error("trapezoidal rule did not converge: M = {m_used}, residual = {residual:e}")]
    NoConvergence { m_used: usize, residual: f64 },
    #[error("evaluation point is within {distance:e} of the integration contour")]
    ContourTooClose { distance: f64 },
    #[error("need {needed} series coefficients, only {available} available")]
    InsufficientCoefficients { needed: usize, available: usize },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("invalid degree {0}")]
    InvalidDegree(usize),
    #[error("point is inside an endpoint disk")]
    InsideDisk,
    #[error("point is outside the requested endpoint disk")]
    OutsideDisk,
    #[error("truncated expansion for gamma_n^2 is not positive at n = {0}")]
    NegativeSquare(usize),
    #[error("Newton iteration stalled at node {index} (last step {step:e})")]
    NewtonStall { index: usize, step: f64 },
    #[error("nodes {index} and {other} converged to the same root")]
    DuplicateRoot { index: usize, other: usize },
    #[error("degree {n} exceeds recurrence table length {len}")]
    DegreeExceedsTable { n: usize, len: usize },
    #[error("tridiagonal eigensolver failed to converge")]
    EigenFailure,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
