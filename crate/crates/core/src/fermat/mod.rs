//! The Fermat cubic threefold and fourfold: Eckardt points, the components
//! of the second-type locus, rulings and their tangent-plane geometry, and
//! the degenerations used to probe ramification.

pub mod components;
pub mod experiments;
pub mod tangents;
pub mod threefold;
pub mod x0;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{CubicExt, Field, FieldElem, MultiPoly};
use crate::geometry::GeometryError;
use crate::numeric::linalg::{random_complex, CVec, C};
use crate::numeric::NumericError;

pub use components::{ruling_line, second_type_line_through, FermatComponent, RulingParams};
pub use tangents::{adjoint_line, count_360, tangent_lines_from, Count360};
pub use threefold::{threefold_cones, Cone};
pub use x0::{x0_construction, MarkedCubic};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FermatError {
    #[error("parameters do not lie on the component's curve or surface")]
    ParamsOffCurve,
    #[error("point violates the genericity condition")]
    DegeneratePoint,
    #[error("point is a flex of its plane cubic")]
    FlexPoint,
    #[error("point lies on the curve")]
    PointOnCurve,
    #[error("point is not general: {0}")]
    NonGenericPoint(String),
    #[error("expected {expected} lines in the fiber, found {found}")]
    UnexpectedFiber { expected: usize, found: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Σ xᵢ³ in n + 2 variables.
pub fn fermat_form(n: usize) -> MultiPoly {
    let vars: Vec<usize> = (0..n + 2).collect();
    MultiPoly::sum_of_cubes(n + 2, &vars)
}

/// The cube root of −1 labelled by μ ∈ {1, 2, 3}.
pub fn rho(mu: u8) -> FieldElem {
    FieldElem::cube_roots_of_minus_one()[(mu - 1) as usize].clone()
}

/// p⁽μ⁾ᵢⱼ = eᵢ + ρ_μ eⱼ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EckardtPoint {
    pub point: Vec<FieldElem>,
    pub i: usize,
    pub j: usize,
    pub mu: u8,
}

impl EckardtPoint {
    pub fn new(n_vars: usize, i: usize, j: usize, mu: u8) -> Self {
        let mut point = vec![FieldElem::zero(); n_vars];
        point[i] = FieldElem::one();
        point[j] = rho(mu);
        Self { point, i, j, mu }
    }

    /// The hyperplane xⱼ = ρ xᵢ, as a linear form, whose section is the cone
    /// with this vertex.
    pub fn hyperplane(&self) -> Vec<FieldElem> {
        let mut h = vec![FieldElem::zero(); self.point.len()];
        h[self.i] = -rho(self.mu);
        h[self.j] = FieldElem::one();
        h
    }

    pub fn to_complex(&self) -> CVec {
        self.point.iter().map(|x| x.to_complex()).collect()
    }
}

/// All p⁽μ⁾ᵢⱼ for i < j: 45 on the fourfold, 30 on the threefold.
pub fn eckardt_points(n: usize) -> Vec<EckardtPoint> {
    let m = n + 2;
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for mu in 1..=3 {
                out.push(EckardtPoint::new(m, i, j, mu));
            }
        }
    }
    out
}

/// A cube root of d over Q(ω) if one exists with small height, else the
/// generator of Q(ω)(∛d).
pub fn cube_root(d: &FieldElem) -> CubicExt {
    let z = d.to_complex();
    for k in 0..3 {
        let w = z.powf(1.0 / 3.0) * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0);
        if let Some(r) = FieldElem::recognize(w, 10_000, 1e-9) {
            if r.pow(3) == *d {
                return CubicExt::base(r);
            }
        }
    }
    CubicExt::generator(d.clone())
}

/// A point [x₀ : … : x_{k−1} : α] of the Fermat cubic in k + 1 variables
/// with α³ = −Σ xᵢ³.
pub fn fermat_point_exact(head: &[FieldElem]) -> Vec<CubicExt> {
    let d = -head.iter().fold(FieldElem::zero(), |acc, x| acc + x.pow(3));
    let mut v: Vec<CubicExt> = head.iter().cloned().map(CubicExt::base).collect();
    v.push(cube_root(&d));
    v
}

/// A small random rational number p/q with |p| ≤ 40, 1 ≤ q ≤ 12.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> FieldElem {
    FieldElem::frac(rng.random_range(-40..=40), rng.random_range(1..=12))
}

/// A random point of the Fermat cubic in k variables: Gaussian head and a
/// random choice of cube root for the last coordinate.
pub fn fermat_point_numeric<R: Rng + ?Sized>(rng: &mut R, k: usize) -> CVec {
    let mut v: CVec = (0..k - 1).map(|_| random_complex(rng)).collect();
    let d: C = -v.iter().map(|x| x * x * x).sum::<C>();
    let branch = rng.random_range(0..3);
    let root = d.powf(1.0 / 3.0) * C::from_polar(1.0, 2.0 * std::f64::consts::PI * branch as f64 / 3.0);
    v.push(root);
    v
}

/// Embeds a vector given on the coordinates `block` into n_vars coordinates.
pub fn embed<F: Clone>(zero: F, n_vars: usize, block: &[usize], v: &[F]) -> Vec<F> {
    let mut out = vec![zero; n_vars];
    for (k, &i) in block.iter().enumerate() {
        out[i] = v[k].clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::eckardt_test;

    #[test]
    fn fermat_form_vanishes_at_antipodal_point() {
        let f = fermat_form(4);
        assert_eq!(f.num_terms(), 6);
        let mut x = vec![FieldElem::zero(); 6];
        x[0] = FieldElem::one();
        x[1] = -FieldElem::one();
        assert!(f.eval(&x).is_zero());
        assert_eq!(fermat_form(3).n_vars(), 5);
    }

    #[test]
    fn eckardt_census() {
        for (n, count) in [(3, 30), (4, 45)] {
            let f = fermat_form(n);
            let pts = eckardt_points(n);
            assert_eq!(pts.len(), count);
            for p in &pts {
                assert_eq!(p.point.iter().filter(|x| !x.is_zero()).count(), 2);
                assert_eq!(p.point[p.j].pow(3), -FieldElem::one());
                assert!(eckardt_test(&f, &p.point).unwrap());
            }
        }
    }

    #[test]
    fn exact_points_lie_on_the_curve() {
        let p = fermat_point_exact(&[FieldElem::one(), FieldElem::frac(2, 3)]);
        let s = p.iter().fold(CubicExt::zero(), |acc, x| acc + x.pow(3));
        assert!(s.is_zero());
        // α³ = 7 is not a cube, while 3³ + 4³ + 5³ = 6³
        let q = fermat_point_exact(&[FieldElem::one(), FieldElem::from_i64(-2)]);
        assert!(q[2].in_base_field().is_none());
        let r = fermat_point_exact(&[FieldElem::from_i64(-3), FieldElem::from_i64(-4), FieldElem::from_i64(-5)]);
        assert_eq!(r[3].in_base_field(), Some(&FieldElem::from_i64(6)));
    }
}
