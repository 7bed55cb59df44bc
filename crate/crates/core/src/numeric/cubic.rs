//! Cubic forms as symmetric 3-tensors over C.
//!
//! With f(x) = Σ T_ijk xᵢxⱼxₖ one has ∇f(x)·y = 3T(x,x,y), H(x) = 6Σₖ T_··k xₖ,
//! and ½ yᵀH(x)y = ∇f(y)·x.

use num_complex::Complex64;
use rand::Rng;

use super::linalg::{dot, random_complex, CVec, C, ZERO};
use crate::algebra::{MultiPoly, Poly};

#[derive(Clone, Debug)]
pub struct CubicForm {
    n: usize,
    t: Vec<C>,
}

fn sorted3(e: &[u32]) -> [usize; 3] {
    let mut idx = [0usize; 3];
    let mut k = 0;
    for (i, &p) in e.iter().enumerate() {
        for _ in 0..p {
            idx[k] = i;
            k += 1;
        }
    }
    idx
}

impl CubicForm {
    pub fn n_vars(&self) -> usize {
        self.n
    }

    /// Largest entry of the symmetric tensor.
    pub fn max_abs_coeff(&self) -> f64 {
        self.t.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn at(&self, i: usize, j: usize, k: usize) -> C {
        self.t[(i * self.n + j) * self.n + k]
    }

    /// From a homogeneous cubic with complex coefficients.
    pub fn from_complex_poly(p: &Poly<Complex64>) -> Self {
        let n = p.n_vars();
        let mut t = vec![ZERO; n * n * n];
        for (e, c) in p.terms() {
            assert_eq!(e.iter().sum::<u32>(), 3, "cubic form must be homogeneous of degree 3");
            let [a, b, d] = sorted3(e);
            let mut perms = vec![[a, b, d], [a, d, b], [b, a, d], [b, d, a], [d, a, b], [d, b, a]];
            perms.sort();
            perms.dedup();
            let share = c / perms.len() as f64;
            for [i, j, k] in perms {
                t[(i * n + j) * n + k] += share;
            }
        }
        Self { n, t }
    }

    pub fn from_poly(p: &MultiPoly) -> Self {
        Self::from_complex_poly(&p.to_complex())
    }

    /// A cubic with independent complex Gaussian coefficients.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        let mut p = Poly::<Complex64>::zero(n);
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let mut e = vec![0u32; n];
                    e[i] += 1;
                    e[j] += 1;
                    e[k] += 1;
                    p.add_term(e, random_complex(rng));
                }
            }
        }
        Self::from_complex_poly(&p)
    }

    /// T(x, y, z)
    pub fn trilinear(&self, x: &[C], y: &[C], z: &[C]) -> C {
        let mut s = ZERO;
        for i in 0..self.n {
            if x[i] == ZERO {
                continue;
            }
            for j in 0..self.n {
                let xy = x[i] * y[j];
                for k in 0..self.n {
                    s += self.at(i, j, k) * xy * z[k];
                }
            }
        }
        s
    }

    pub fn eval(&self, x: &[C]) -> C {
        self.trilinear(x, x, x)
    }

    /// The matrix Σₖ T_ijk zₖ.
    pub fn contract(&self, z: &[C]) -> Vec<CVec> {
        (0..self.n).map(|i| (0..self.n).map(|j| (0..self.n).map(|k| self.at(i, j, k) * z[k]).sum()).collect()).collect()
    }

    pub fn gradient(&self, x: &[C]) -> CVec {
        self.contract(x).iter().map(|row| dot(row, x) * 3.0).collect()
    }

    pub fn hessian(&self, x: &[C]) -> Vec<CVec> {
        self.contract(x).into_iter().map(|row| row.into_iter().map(|v| v * 6.0).collect()).collect()
    }

    /// Coefficients of the quadric y ↦ 3T(x, y, y) and the cubic y ↦ T(y, y, y)
    /// after the substitution y = Σ wₐ uₐ, as polynomials in the u's.
    pub fn restricted_forms(&self, x: &[C], w: &[CVec]) -> (Poly<Complex64>, Poly<Complex64>) {
        let k = w.len();
        let m = self.contract(x);
        let mut quad = Poly::<Complex64>::zero(k);
        for a in 0..k {
            let ma: CVec = (0..self.n).map(|i| dot(&m[i], &w[a])).collect();
            for b in a..k {
                let v = dot(&ma, &w[b]) * 3.0 * if a == b { 1.0 } else { 2.0 };
                let mut e = vec![0u32; k];
                e[a] += 1;
                e[b] += 1;
                quad.add_term(e, v);
            }
        }
        let mut cubic = Poly::<Complex64>::zero(k);
        for a in 0..k {
            for b in a..k {
                for c in b..k {
                    let mut perms = vec![[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]];
                    perms.sort();
                    perms.dedup();
                    let v = self.trilinear(&w[a], &w[b], &w[c]) * perms.len() as f64;
                    let mut e = vec![0u32; k];
                    e[a] += 1;
                    e[b] += 1;
                    e[c] += 1;
                    cubic.add_term(e, v);
                }
            }
        }
        (quad, cubic)
    }
}

/// Largest coefficient modulus, used to scale residuals.
pub fn coefficient_scale(p: &Poly<Complex64>) -> f64 {
    p.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max)
}
