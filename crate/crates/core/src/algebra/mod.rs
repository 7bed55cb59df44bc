//! Exact arithmetic over Q(ω) and the polynomial and linear algebra built on it.

pub mod binary;
pub mod cubic_ext;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod univariate;

pub use binary::{binary_form_factor, BinaryFactorization, BinaryRoot};
pub use cubic_ext::CubicExt;
pub use field::{AlgebraError, ExactField, Field, FieldElem};
pub use matrix::{ExactMatrix, Matrix};
pub use poly::{MultiPoly, Poly};
pub use univariate::{BinaryForm, UniPoly};
