//! Floating-point solvers: univariate roots, small polynomial systems,
//! Newton correction and path tracking.

pub mod cubic;
pub mod family;
pub mod linalg;
pub mod lines;
pub mod newton;
pub mod roots;
pub mod singular;
pub mod ternary;
pub mod tracker;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("Newton iteration did not converge after {0} steps")]
    NoConvergence(usize),
    #[error("Jacobian is singular or too ill-conditioned")]
    SingularJacobian,
    #[error("path failed near parameter {last_good}")]
    PathFailure { last_good: f64 },
    #[error("two paths converged to the same endpoint")]
    PathCrossing,
    #[error("the solution set is not finite")]
    NonIsolated,
    #[error("the hypersurface is singular at the point")]
    SingularPoint,
    #[error("point is off the hypersurface (residual {0:e})")]
    NotOnCubic(f64),
    #[error("expected {expected} solutions, found {found}")]
    UnexpectedCount { expected: usize, found: usize },
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}
