//! Best-effort search for singular points of a cubic hypersurface.
//!
//! In a random affine chart of Pⁿ⁺¹, n + 1 random combinations of the
//! partials form a square system of quadrics whose 2ⁿ⁺¹ solutions are found
//! with a total-degree homotopy. Singular points of V(f) are among them and
//! are recognised by all partials vanishing.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cubic::CubicForm;
use super::linalg::{max_abs, norm, null_space, random_complex, random_vector, to_matrix, CVec, C, ONE, ZERO};
use super::newton::Homotopy;
use super::tracker::{track_path, TrackOptions};

struct GradientHomotopy<'a> {
    f: &'a CubicForm,
    base: CVec,
    dirs: Vec<CVec>,
    mix: Vec<CVec>,
    gamma: C,
}

impl GradientHomotopy<'_> {
    fn point(&self, z: &[C]) -> CVec {
        let mut x = self.base.clone();
        for (k, d) in self.dirs.iter().enumerate() {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += z[k] * di;
            }
        }
        x
    }

    fn target(&self, z: &[C]) -> CVec {
        let g = self.f.gradient(&self.point(z));
        self.mix.iter().map(|m| m.iter().zip(&g).map(|(a, b)| a * b).sum()).collect()
    }

    fn start(&self, z: &[C]) -> CVec {
        z.iter().map(|v| v * v - ONE).collect()
    }
}

impl Homotopy for GradientHomotopy<'_> {
    fn dim(&self) -> usize {
        self.dirs.len()
    }

    fn eval(&self, z: &[C], t: f64) -> CVec {
        let (g, f) = (self.start(z), self.target(z));
        g.iter().zip(&f).map(|(a, b)| self.gamma * a * (1.0 - t) + b * t).collect()
    }

    fn jac_z(&self, z: &[C], t: f64) -> DMatrix<C> {
        let n = self.dim();
        let h = self.f.hessian(&self.point(z));
        // d(∇f)/dz_k = H·dir_k
        let hd: Vec<CVec> = self.dirs.iter().map(|d| h.iter().map(|row| row.iter().zip(d).map(|(a, b)| a * b).sum()).collect()).collect();
        DMatrix::from_fn(n, n, |r, k| {
            let target: C = self.mix[r].iter().zip(&hd[k]).map(|(a, b)| a * b).sum();
            let start = if r == k { z[k] * 2.0 } else { ZERO };
            self.gamma * start * (1.0 - t) + target * t
        })
    }

    fn jac_t(&self, z: &[C], _: f64) -> CVec {
        let (g, f) = (self.start(z), self.target(z));
        g.iter().zip(&f).map(|(a, b)| b - self.gamma * a).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SingularSearch {
    pub paths: usize,
    pub failed_paths: usize,
    /// Endpoints at which every partial vanishes, unit-normalized.
    pub singular_points: Vec<CVec>,
}

impl SingularSearch {
    /// No singular point found and every path reached t = 1.
    pub fn smooth(&self) -> bool {
        self.failed_paths == 0 && self.singular_points.is_empty()
    }
}

/// Total-degree homotopy for the partials of f in a random affine chart.
/// An endpoint counts as singular when every partial is below `tol` at its
/// unit representative.
pub fn find_singular_points(f: &CubicForm, seed: u64, tol: f64) -> SingularSearch {
    let n = f.n_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chart = random_vector(&mut rng, n);
    let cn = norm(&chart).powi(2);
    let base: CVec = chart.iter().map(|c| c.conj() / cn).collect();
    // directions with chart·d = 0
    let dirs = null_space(&to_matrix(&[chart]), 1e-12);
    let mix: Vec<CVec> = (0..n - 1).map(|_| random_vector(&mut rng, n)).collect();
    let h = GradientHomotopy { f, base, dirs, mix, gamma: random_complex(&mut rng) };
    let m = n - 1;
    let starts: Vec<CVec> = (0..1usize << m)
        .map(|bits| (0..m).map(|k| if bits >> k & 1 == 1 { -ONE } else { ONE }).collect())
        .collect();
    let opts = TrackOptions::default();
    let mut report = SingularSearch { paths: starts.len(), failed_paths: 0, singular_points: Vec::new() };
    for s in &starts {
        match track_path(&h, s, &opts) {
            Ok(z) => {
                let x = h.point(&z);
                let xn = norm(&x);
                let x: CVec = x.iter().map(|v| v / xn).collect();
                if max_abs(&f.gradient(&x)) < tol {
                    report.singular_points.push(x);
                }
            }
            Err(_) => report.failed_paths += 1,
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, FieldElem, MultiPoly};

    #[test]
    fn fermat_is_smooth() {
        let f = CubicForm::from_poly(&MultiPoly::sum_of_cubes(4, &[0, 1, 2, 3]));
        let r = find_singular_points(&f, 3, 1e-8);
        assert_eq!(r.paths, 8);
        assert!(r.smooth(), "{r:?}");
    }

    #[test]
    fn nodal_cubic_surface_is_detected() {
        // the Cayley-type cubic x0x1x2 + x0x1x3 + x0x2x3 + x1x2x3 has four nodes
        let mut p = MultiPoly::zero(4);
        for skip in 0..4 {
            let mut e = vec![1u32; 4];
            e[skip] = 0;
            p.add_term(e, FieldElem::from_i64(1));
        }
        let r = find_singular_points(&CubicForm::from_poly(&p), 5, 1e-8);
        assert!(!r.smooth());
        assert_eq!(r.singular_points.len(), 4, "{r:?}");
    }
}
