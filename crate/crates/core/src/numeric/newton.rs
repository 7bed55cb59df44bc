//! Square polynomial systems, homotopies and Newton's method.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::linalg::{axpy, condition, max_abs, norm, solve, CVec, C};
use super::NumericError;

/// A square system F: Cⁿ → Cⁿ with its Jacobian.
pub trait System: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, z: &[C]) -> CVec;
    fn jacobian(&self, z: &[C]) -> DMatrix<C>;
}

/// A square system depending on a real path parameter t ∈ [0, 1].
pub trait Homotopy: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, z: &[C], t: f64) -> CVec;
    fn jac_z(&self, z: &[C], t: f64) -> DMatrix<C>;
    fn jac_t(&self, z: &[C], t: f64) -> CVec;
}

/// A homotopy frozen at one parameter value.
pub struct AtParameter<'a, H: ?Sized> {
    pub homotopy: &'a H,
    pub t: f64,
}

impl<H: Homotopy + ?Sized> System for AtParameter<'_, H> {
    fn dim(&self) -> usize {
        self.homotopy.dim()
    }
    fn eval(&self, z: &[C]) -> CVec {
        self.homotopy.eval(z, self.t)
    }
    fn jacobian(&self, z: &[C]) -> DMatrix<C> {
        self.homotopy.jac_z(z, self.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Multiplicity {
    Simple,
    Cluster(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericSolution {
    pub z: CVec,
    pub residual: f64,
    pub multiplicity: Multiplicity,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Largest acceptable Jacobian condition number.
    pub cond_cap: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self { tol: 1e-12, max_iter: 50, cond_cap: 1e12 }
    }
}

/// Newton's method until ‖F(z)‖∞ < tol.
pub fn newton_correct<S: System + ?Sized>(sys: &S, z: &[C], opts: &NewtonOptions) -> Result<NumericSolution, NumericError> {
    let mut z = z.to_vec();
    for _ in 0..=opts.max_iter {
        let f = sys.eval(&z);
        let res = max_abs(&f);
        if res < opts.tol {
            return Ok(NumericSolution { z, residual: res, multiplicity: Multiplicity::Simple });
        }
        let j = sys.jacobian(&z);
        if condition(&j) > opts.cond_cap {
            return Err(NumericError::SingularJacobian);
        }
        let rhs: CVec = f.iter().map(|v| -v).collect();
        let dz = solve(&j, &rhs).ok_or(NumericError::SingularJacobian)?;
        z = axpy(&z, C::new(1.0, 0.0), &dz);
        if !z.iter().all(|v| v.is_finite()) {
            return Err(NumericError::NoConvergence(opts.max_iter));
        }
    }
    Err(NumericError::NoConvergence(opts.max_iter))
}

/// Central finite-difference Jacobian, for checking analytic Jacobians.
pub fn finite_difference_jacobian<S: System + ?Sized>(sys: &S, z: &[C], h: f64) -> DMatrix<C> {
    let n = sys.dim();
    let mut j = DMatrix::<C>::zeros(n, z.len());
    for k in 0..z.len() {
        let mut zp = z.to_vec();
        let mut zm = z.to_vec();
        zp[k] += h;
        zm[k] -= h;
        let (fp, fm) = (sys.eval(&zp), sys.eval(&zm));
        for i in 0..n {
            j[(i, k)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    j
}

/// Relative Frobenius error between the analytic and finite-difference
/// Jacobians at z.
pub fn jacobian_error<S: System + ?Sized>(sys: &S, z: &[C], h: f64) -> f64 {
    let a = sys.jacobian(z);
    let fd = finite_difference_jacobian(sys, z, h);
    (&a - &fd).norm() / a.norm().max(1e-300)
}

/// Relative size of a correction step.
pub fn relative_step(dz: &[C], z: &[C]) -> f64 {
    norm(dz) / (1.0 + norm(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Linear;
    impl System for Linear {
        fn dim(&self) -> usize {
            2
        }
        fn eval(&self, z: &[C]) -> CVec {
            vec![z[0] * 2.0 + z[1] - 1.0, z[1] * 3.0 - 2.0]
        }
        fn jacobian(&self, _: &[C]) -> DMatrix<C> {
            DMatrix::from_row_slice(2, 2, &[C::new(2.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(3.0, 0.0)])
        }
    }

    struct DoubleRoot;
    impl System for DoubleRoot {
        fn dim(&self) -> usize {
            2
        }
        fn eval(&self, z: &[C]) -> CVec {
            vec![z[0] * z[0], z[1] - 1.0]
        }
        fn jacobian(&self, z: &[C]) -> DMatrix<C> {
            DMatrix::from_row_slice(2, 2, &[z[0] * 2.0, C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)])
        }
    }

    #[test]
    fn linear_system_converges_in_one_step() {
        let opts = NewtonOptions { max_iter: 1, ..Default::default() };
        let s = newton_correct(&Linear, &[C::new(5.0, 1.0), C::new(-3.0, 0.0)], &opts).unwrap();
        assert!(s.residual < 1e-12);
    }

    #[test]
    fn singular_root_is_reported() {
        let opts = NewtonOptions { tol: 1e-40, ..Default::default() };
        let r = newton_correct(&DoubleRoot, &[C::new(1e-3, 0.0), C::new(1.0, 0.0)], &opts);
        assert_eq!(r.unwrap_err(), NumericError::SingularJacobian);
    }

    #[test]
    fn finite_differences_match() {
        let z = [C::new(0.3, 0.1), C::new(-1.0, 2.0)];
        assert!(jacobian_error(&Linear, &z, 1e-7) < 1e-6);
    }
}
