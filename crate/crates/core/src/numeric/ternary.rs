//! Common zeros of two ternary forms by elimination.
//!
//! After a random unitary change of coordinates, the resultant with respect
//! to the last variable is sampled at roots of unity and interpolated; its
//! roots give the first affine coordinate, the second comes from the roots of
//! the lower-degree form. Points are then Newton-polished and clustered.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cubic::coefficient_scale;
use super::linalg::{det, max_abs, projective_distance, projective_normalize, random_unitary, solve, CVec, C, ONE, ZERO};
use super::roots::{poly_roots, trim};
use super::NumericError;
use crate::algebra::{ExactField, Field, Matrix, Poly, UniPoly};

/// A point of V(a, b) in P² and its multiplicity as detected by clustering.
#[derive(Clone, Debug, PartialEq)]
pub struct PlanePoint {
    pub point: CVec,
    pub multiplicity: usize,
    /// max(|a|, |b|) at the unit representative, coefficients scaled to 1.
    pub residual: f64,
}

/// Coefficients, as polynomials in the second variable, of the powers of
/// the third variable, after setting the first variable to one.
fn coefficient_table<F: Field>(p: &Poly<F>) -> Vec<Vec<(u32, F)>> {
    let d = p.homogeneous_degree().unwrap_or(0) as usize;
    let mut table = vec![Vec::new(); d + 1];
    for (e, c) in p.terms() {
        table[e[2] as usize].push((e[1], c.clone()));
    }
    table
}

fn univariate_at<F: Field>(table: &[Vec<(u32, F)>], w1: &F) -> Vec<F> {
    table.iter().map(|row| row.iter().fold(F::zero(), |acc, (k, c)| acc + c.clone() * w1.pow(*k))).collect()
}

/// Sylvester matrix of two polynomials given by coefficients (constant
/// term first) with formal degrees len − 1.
fn sylvester<F: Field>(a: &[F], b: &[F]) -> Vec<Vec<F>> {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![F::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![F::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            r[i + k] = c.clone();
        }
        rows.push(r);
    }
    rows
}

fn transform<F: Field>(p: &Poly<F>, cols: &[Vec<F>]) -> Poly<F> {
    p.restrict(cols).expect("three coordinates")
}

/// Whether a and b share a curve component, decided exactly: the resultant
/// is identically zero in coordinates where neither form loses degree.
pub fn exact_common_component<F: ExactField>(a: &Poly<F>, b: &Poly<F>) -> bool {
    if a.is_zero() || b.is_zero() {
        return true;
    }
    let i = |x: i64| F::from_i64(x);
    let mut shift = 1;
    let cols = loop {
        let cols = vec![vec![i(1), i(0), i(0)], vec![i(0), i(1), i(0)], vec![i(shift), i(2 * shift + 1), i(1)]];
        if !a.eval(&cols[2]).is_zero() && !b.eval(&cols[2]).is_zero() {
            break cols;
        }
        shift += 1;
    };
    let (a2, b2) = (transform(a, &cols), transform(b, &cols));
    let (ta, tb) = (coefficient_table(&a2), coefficient_table(&b2));
    let n = ta.len().saturating_sub(1) * tb.len().saturating_sub(1) + 1;
    let nodes: Vec<F> = (0..n).map(|k| F::node(k, n)).collect();
    let vals: Vec<F> = nodes
        .iter()
        .map(|w| Matrix::from_rows(sylvester(&univariate_at(&ta, w), &univariate_at(&tb, w))).determinant())
        .collect();
    UniPoly::interpolate(&nodes, &vals).is_zero()
}

fn normalized(p: &Poly<Complex64>) -> Poly<Complex64> {
    let s = coefficient_scale(p);
    if s == 0.0 {
        p.clone()
    } else {
        p.scale(&C::new(1.0 / s, 0.0))
    }
}

fn residual(a: &Poly<Complex64>, b: &Poly<Complex64>, x: &[C]) -> f64 {
    let u = projective_normalize(x);
    a.eval(&u).norm().max(b.eval(&u).norm())
}

/// Newton in the chart where the largest coordinate is one. Returns the
/// refined point only if the Jacobian is well conditioned and the residual
/// does not grow.
fn polish(a: &Poly<Complex64>, b: &Poly<Complex64>, x: &[C]) -> Option<CVec> {
    let mut x = projective_normalize(x);
    let k = (0..3).max_by(|&i, &j| x[i].norm().partial_cmp(&x[j].norm()).unwrap()).unwrap();
    x = x.iter().map(|v| v / x[k]).collect();
    let free: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let (ga, gb) = (a.gradient(), b.gradient());
    let start_res = residual(a, b, &x);
    for _ in 0..8 {
        let f = [a.eval(&x), b.eval(&x)];
        if f[0].norm().max(f[1].norm()) < 1e-15 {
            break;
        }
        let j = DMatrix::from_fn(2, 2, |r, c| if r == 0 { ga[free[c]].eval(&x) } else { gb[free[c]].eval(&x) });
        if super::linalg::condition(&j) > 1e8 {
            return None;
        }
        let dx = solve(&j, &[-f[0], -f[1]])?;
        for (c, &i) in free.iter().enumerate() {
            x[i] += dx[c];
        }
        if max_abs(&dx) < 1e-15 {
            break;
        }
    }
    (residual(a, b, &x) <= start_res.max(1e-14)).then_some(x)
}

/// All points of V(a) ∩ V(b) ⊂ P² for ternary forms of degrees d₁, d₂, with
/// multiplicities summing to d₁d₂ (Bézout) when the intersection is finite.
pub fn solve_ternary(a: &Poly<Complex64>, b: &Poly<Complex64>, seed: u64, cluster_tol: f64) -> Result<Vec<PlanePoint>, NumericError> {
    let (a, b) = (normalized(a), normalized(b));
    if a.is_zero() || b.is_zero() {
        return Err(NumericError::NonIsolated);
    }
    let (da, db) = (a.homogeneous_degree().unwrap() as usize, b.homogeneous_degree().unwrap() as usize);
    let expected = da * db;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7e12_a5c3);
    for _attempt in 0..8 {
        let cols = random_unitary(&mut rng, 3);
        let (a2, b2) = (transform(&a, &cols), transform(&b, &cols));
        let (ta, tb) = (coefficient_table(&a2), coefficient_table(&b2));
        let n = expected + 1;
        let nodes: Vec<C> = (0..n).map(|k| <C as Field>::node(k, n)).collect();
        let vals: Vec<C> = nodes.iter().map(|w| det(sylvester(&univariate_at(&ta, w), &univariate_at(&tb, w)))).collect();
        // inverse DFT: coefficient j = mean of vals·ω^{−jk}
        let coeffs: CVec = (0..n)
            .map(|j| nodes.iter().zip(&vals).map(|(w, v)| v * w.powi(-(j as i32))).sum::<C>() / n as f64)
            .collect();
        let scale = max_abs(&coeffs);
        if scale < 1e-11 {
            return Err(NumericError::NonIsolated);
        }
        let core = trim(&coeffs, 1e-9);
        if core.len() != n {
            // a solution near the line at infinity of this chart
            continue;
        }
        let mut pts: Vec<CVec> = Vec::with_capacity(expected);
        for w1 in poly_roots(core) {
            let ua = univariate_at(&ta, &w1);
            let ub = univariate_at(&tb, &w1);
            let (lift_from, check) = if da <= db { (&ua, &ub) } else { (&ub, &ua) };
            let cands = poly_roots(trim(lift_from, 1e-12));
            let best = cands
                .into_iter()
                .min_by(|x, y| {
                    let fx = super::roots::horner(check, *x).norm() / (1.0 + x.norm()).powi(check.len() as i32 - 1);
                    let fy = super::roots::horner(check, *y).norm() / (1.0 + y.norm()).powi(check.len() as i32 - 1);
                    fx.partial_cmp(&fy).unwrap()
                })
                .unwrap_or(ZERO);
            let w = [ONE, w1, best];
            let x: CVec = (0..3).map(|i| (0..3).map(|k| w[k] * cols[k][i]).sum()).collect();
            let x = polish(&a, &b, &x).unwrap_or(x);
            pts.push(projective_normalize(&x));
        }
        return Ok(cluster(&a, &b, pts, cluster_tol));
    }
    Err(NumericError::Degenerate("no generic coordinate chart found".into()))
}

/// Merges points within `tol` of each other (transitively) into one point
/// with multiplicity; the representative is the phase-aligned mean.
pub fn cluster(a: &Poly<Complex64>, b: &Poly<Complex64>, pts: Vec<CVec>, tol: f64) -> Vec<PlanePoint> {
    let mut used = vec![false; pts.len()];
    let mut out = Vec::new();
    for i in 0..pts.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut members = vec![i];
        let mut k = 0;
        while k < members.len() {
            let p = &pts[members[k]];
            for j in 0..pts.len() {
                if !used[j] && projective_distance(p, &pts[j]) < tol {
                    used[j] = true;
                    members.push(j);
                }
            }
            k += 1;
        }
        // align each member's phase with the first before averaging
        let first = &pts[members[0]];
        let aligned: Vec<CVec> = members
            .iter()
            .map(|&m| {
                let h = super::linalg::hdot(first, &pts[m]);
                let phase = if h.norm() > 0.0 { h.conj() / h.norm() } else { ONE };
                pts[m].iter().map(|v| v * phase).collect()
            })
            .collect();
        let mean: CVec = (0..3).map(|c| aligned.iter().map(|p| p[c]).sum::<C>() / members.len() as f64).collect();
        let point = projective_normalize(&mean);
        out.push(PlanePoint { residual: residual(a, b, &point), point, multiplicity: members.len() });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldElem, MultiPoly};

    fn cpoly(n: usize, terms: &[(&[u32], f64)]) -> Poly<Complex64> {
        Poly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), C::new(*c, 0.0)))).unwrap()
    }

    #[test]
    fn conic_and_cubic_meet_in_six_points() {
        // x² + y² − z² and x³ − 2y³ + z³ + xyz
        let a = cpoly(3, &[(&[2, 0, 0], 1.0), (&[0, 2, 0], 1.0), (&[0, 0, 2], -1.0)]);
        let b = cpoly(3, &[(&[3, 0, 0], 1.0), (&[0, 3, 0], -2.0), (&[0, 0, 3], 1.0), (&[1, 1, 1], 1.0)]);
        let sols = solve_ternary(&a, &b, 0, 1e-6).unwrap();
        assert_eq!(sols.len(), 6);
        for s in &sols {
            assert_eq!(s.multiplicity, 1);
            assert!(s.residual < 1e-10, "residual {}", s.residual);
        }
    }

    #[test]
    fn tangency_gives_a_double_point() {
        // conic y z − x² and the cubic y·(y − z)·(y + z) + ... tangent at [0:0:1]:
        // the line y = 0 is tangent to the conic at [0:0:1]
        let a = cpoly(3, &[(&[0, 1, 1], 1.0), (&[2, 0, 0], -1.0)]);
        let b = cpoly(3, &[(&[0, 1, 2], 1.0), (&[0, 3, 0], 1.0), (&[1, 2, 0], 2.0), (&[3, 0, 0], 0.5)]);
        let sols = solve_ternary(&a, &b, 1, 1e-6).unwrap();
        let total: usize = sols.iter().map(|s| s.multiplicity).sum();
        assert_eq!(total, 6);
        assert!(sols.iter().any(|s| s.multiplicity == 2));
    }

    #[test]
    fn common_component_detected() {
        let line = cpoly(3, &[(&[1, 0, 0], 1.0), (&[0, 1, 0], 1.0)]);
        let other = cpoly(3, &[(&[1, 0, 0], 1.0), (&[0, 0, 1], 2.0)]);
        let a = line.mul(&other);
        let b = line.mul(&cpoly(3, &[(&[2, 0, 0], 1.0), (&[0, 1, 1], 3.0)]));
        assert_eq!(solve_ternary(&a, &b, 0, 1e-6), Err(NumericError::NonIsolated));
        let ea = MultiPoly::from_terms(3, [(vec![1, 1, 0], FieldElem::one()), (vec![0, 2, 0], FieldElem::one())]).unwrap();
        let eb = MultiPoly::from_terms(3, [(vec![1, 2, 0], FieldElem::one()), (vec![0, 3, 0], FieldElem::one())]).unwrap();
        assert!(exact_common_component(&ea, &eb));
        let ec = MultiPoly::sum_of_cubes(3, &[0, 1, 2]);
        assert!(!exact_common_component(&ea, &ec));
    }
}
