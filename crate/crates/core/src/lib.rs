//! Line geometry of cubic hypersurfaces with exact and numerical tools.

pub mod algebra;
pub mod config;
pub mod fermat;
pub mod geometry;
pub mod monodromy;
pub mod numeric;

pub use algebra::{AlgebraError, CubicExt, ExactMatrix, Field, FieldElem, MultiPoly};
pub use config::{Caps, ExperimentConfig, Tolerances};
pub use geometry::{Line, LineType, Plane};
pub use monodromy::{GroupReport, Permutation, Verdict};
pub use numeric::cubic::CubicForm;
pub use numeric::lines::NumLine;
