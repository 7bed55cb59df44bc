//! Lines and planes on cubic hypersurfaces: containment, first/second type,
//! tangent planes along a line, the residual line of a tangent plane, and
//! the system cutting out the lines through a point.

pub mod line;
pub mod lines;

use thiserror::Error;

use crate::algebra::AlgebraError;

pub use line::{Line, Plane};
pub use lines::{
    contains_line, eckardt_test, gauss_ramification, intersect_line_hypersurface, line_type, lines_through_point_system,
    restricted_quadrics, tangent_spans, voisin_residual, Intersection, IntersectionPoint, LineType, PointSystem,
    RamificationPoints, Residual, TangentSpan,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("spanning vectors do not have rank 2")]
    DegenerateLine,
    #[error("spanning vectors do not have rank 3")]
    DegeneratePlane,
    #[error("the line does not lie on the cubic")]
    NotOnCubic,
    #[error("the point does not lie on the cubic")]
    PointNotOnCubic,
    #[error("the line is of first type")]
    NotSecondType,
    #[error("the plane lies inside the cubic")]
    PlaneInCubic,
    #[error("the plane is not tangent along the line")]
    NotTangent,
    #[error("the line does not lie in the plane")]
    LineNotInPlane,
    #[error("the cubic is singular at the point")]
    SingularPoint,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
