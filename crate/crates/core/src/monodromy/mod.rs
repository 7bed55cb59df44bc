//! Numerical monodromy of the line coverings of a cubic threefold and the
//! fiber probe on the degeneration X₀.

pub mod experiments;
pub mod perm;
pub mod probe;

use thiserror::Error;

use crate::fermat::FermatError;
use crate::numeric::NumericError;

pub use experiments::{run_cl, run_cl_second, run_six_lines, GroupReport, MonodromyConfig, Verdict};
pub use perm::{group_generate, PermGroup, Permutation};
pub use probe::{marked_fiber, ram3fold_probe, FiberReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MonodromyError {
    #[error("permutation of degree {found} where {expected} was expected")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("image array {0:?} is not a bijection")]
    NotABijection(Vec<usize>),
    #[error("expected {expected} lines in the fiber, found {found}")]
    UnexpectedFiber { expected: usize, found: usize },
    #[error("no suitable base point after {0} attempts")]
    NoBasePoint(usize),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Fermat(#[from] FermatError),
}
