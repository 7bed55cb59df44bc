//! Small dense complex linear algebra on `Vec<Complex64>` vectors.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C = Complex64;
pub type CVec = Vec<Complex64>;

pub const ZERO: C = C::new(0.0, 0.0);
pub const ONE: C = C::new(1.0, 0.0);

/// Bilinear pairing Σ aᵢbᵢ (no conjugation).
pub fn dot(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Hermitian product Σ conj(aᵢ)bᵢ.
pub fn hdot(a: &[C], b: &[C]) -> C {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(a: &[C]) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn scale(a: &[C], s: C) -> CVec {
    a.iter().map(|x| x * s).collect()
}

pub fn add(a: &[C], b: &[C]) -> CVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[C], b: &[C]) -> CVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// a + s·b
pub fn axpy(a: &[C], s: C, b: &[C]) -> CVec {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn normalize(a: &[C]) -> CVec {
    let n = norm(a);
    scale(a, C::new(1.0 / n, 0.0))
}

/// Unit representative of a projective point, with its largest coordinate
/// real and positive; equal points get equal representatives.
pub fn projective_normalize(a: &[C]) -> CVec {
    let k = (0..a.len()).max_by(|&i, &j| a[i].norm().partial_cmp(&a[j].norm()).unwrap()).unwrap();
    let phase = a[k].conj() / a[k].norm();
    normalize(&scale(a, phase))
}

/// sin of the angle between two projective points.
pub fn projective_distance(a: &[C], b: &[C]) -> f64 {
    // residual of projecting a onto the line through b, relative to |a|
    let c = hdot(b, a) / hdot(b, b);
    norm(&axpy(a, -c, b)) / norm(a)
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> C {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Vector of standard complex Gaussians.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVec {
    (0..n).map(|_| random_complex(rng)).collect()
}

/// Gram–Schmidt; drops vectors dependent on the earlier ones.
pub fn orthonormalize(vs: &[CVec]) -> Vec<CVec> {
    let mut out: Vec<CVec> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = hdot(u, &w);
                w = axpy(&w, -c, u);
            }
        }
        let n = norm(&w);
        if n > 1e-10 * norm(v).max(1e-300) {
            out.push(scale(&w, C::new(1.0 / n, 0.0)));
        }
    }
    out
}

/// Random unitary matrix (columns orthonormal), as a list of columns.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<CVec> {
    loop {
        let cols: Vec<CVec> = (0..n).map(|_| random_vector(rng, n)).collect();
        let q = orthonormalize(&cols);
        if q.len() == n {
            return q;
        }
    }
}

pub fn to_matrix(rows: &[CVec]) -> DMatrix<C> {
    let r = rows.len();
    let c = rows.first().map_or(0, |x| x.len());
    DMatrix::from_fn(r, c, |i, j| rows[i][j])
}

pub fn singular_values(m: &DMatrix<C>) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

/// Orthonormal basis of {v : M v = 0}, from the right singular vectors
/// whose singular values fall below `rel_tol` times the largest.
pub fn null_space(m: &DMatrix<C>, rel_tol: f64) -> Vec<CVec> {
    let (r, c) = m.shape();
    // pad to at least square so the SVD returns a full right basis
    let mut a = DMatrix::<C>::zeros(r.max(c), c);
    a.view_mut((0, 0), (r, c)).copy_from(m);
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    (0..c)
        .filter(|&k| svd.singular_values[k] <= rel_tol * smax.max(1e-300))
        .map(|k| (0..c).map(|j| vt[(k, j)].conj()).collect())
        .collect()
}

/// Solves the square system A x = b by LU; `None` if A is singular.
pub fn solve(a: &DMatrix<C>, b: &[C]) -> Option<CVec> {
    let lu = a.clone().lu();
    lu.solve(&DVector::from_column_slice(b)).map(|x| x.iter().copied().collect())
}

/// Condition number estimate σ_max / σ_min.
pub fn condition(a: &DMatrix<C>) -> f64 {
    let s = singular_values(a);
    let last = *s.last().unwrap_or(&0.0);
    if last == 0.0 {
        f64::INFINITY
    } else {
        s[0] / last
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det(rows: Vec<CVec>) -> C {
    let n = rows.len();
    let mut m = rows;
    let mut d = ONE;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| m[i][c].norm().partial_cmp(&m[j][c].norm()).unwrap()).unwrap();
        if m[p][c].norm() == 0.0 {
            return ZERO;
        }
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for i in c + 1..n {
            let f = m[i][c] / m[c][c];
            if f.norm() == 0.0 {
                continue;
            }
            for j in c..n {
                let t = m[c][j];
                m[i][j] -= f * t;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unitary_columns_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = random_unitary(&mut rng, 4);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((hdot(&q[i], &q[j]) - C::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn null_space_of_rank_one_row() {
        let m = to_matrix(&[vec![ONE, C::new(2.0, 0.0), ZERO]]);
        let k = null_space(&m, 1e-10);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(&m.row(0).iter().copied().collect::<Vec<_>>(), v).norm() < 1e-12);
        }
    }

    #[test]
    fn determinant_matches_nalgebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rows: Vec<CVec> = (0..4).map(|_| random_vector(&mut rng, 4)).collect();
        let d1 = det(rows.clone());
        let d2 = to_matrix(&rows).determinant();
        assert!((d1 - d2).norm() < 1e-10 * d2.norm().max(1.0));
    }

    #[test]
    fn projective_distance_ignores_scale() {
        let a = vec![ONE, C::new(0.0, 2.0), C::new(-1.0, 0.5)];
        let b = scale(&a, C::new(0.3, -4.0));
        assert!(projective_distance(&a, &b) < 1e-14);
        assert!((sub(&projective_normalize(&a), &projective_normalize(&b))).iter().all(|x| x.norm() < 1e-12));
    }
}
