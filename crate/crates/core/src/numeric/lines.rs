//! Floating-point lines on a cubic and the lines through a point.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cubic::CubicForm;
use super::linalg::{
    dot, max_abs, norm, null_space, orthonormalize, projective_distance, projective_normalize, random_vector, singular_values,
    to_matrix, CVec, C, ZERO,
};
use super::newton::Multiplicity;
use super::ternary::{exact_common_component, solve_ternary};
use super::NumericError;
use crate::algebra::{FieldElem, MultiPoly};
use crate::geometry::{contains_line, lines_through_point_system, Line, LineType};

/// Below this ratio σ₃/σ₁ of the restricted Gauss matrix a line is second type.
pub const SECOND_TYPE_THRESHOLD: f64 = 1e-6;
/// Above this ratio it is first type; in between the sample is rejected.
pub const FIRST_TYPE_THRESHOLD: f64 = 1e-3;

/// A line span(p, q) with p, q orthonormal.
#[derive(Clone, Debug, PartialEq)]
pub struct NumLine {
    pub p: CVec,
    pub q: CVec,
}

impl NumLine {
    /// The line through two points, or `None` if they coincide projectively.
    pub fn through(a: &[C], b: &[C]) -> Option<Self> {
        let basis = orthonormalize(&[a.to_vec(), b.to_vec()]);
        (basis.len() == 2).then(|| Self { p: basis[0].clone(), q: basis[1].clone() })
    }

    pub fn from_exact(l: &Line) -> Self {
        let rows = l.to_complex();
        Self::through(&rows[0], &rows[1]).expect("exact lines have rank 2")
    }

    pub fn ambient_dim(&self) -> usize {
        self.p.len()
    }

    /// s·p + t·q
    pub fn point(&self, s: C, t: C) -> CVec {
        self.p.iter().zip(&self.q).map(|(a, b)| a * s + b * t).collect()
    }

    /// Unit Plücker vector with a canonical phase.
    pub fn plucker(&self) -> CVec {
        let n = self.p.len();
        let mut v = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                v.push(self.p[i] * self.q[j] - self.p[j] * self.q[i]);
            }
        }
        projective_normalize(&v)
    }

    /// sin of the angle between the Plücker points.
    pub fn distance(&self, other: &Self) -> f64 {
        projective_distance(&self.plucker(), &other.plucker())
    }

    /// sin of the angle between x and the line.
    pub fn point_distance(&self, x: &[C]) -> f64 {
        let cp = super::linalg::hdot(&self.p, x);
        let cq = super::linalg::hdot(&self.q, x);
        let r: CVec = (0..x.len()).map(|i| x[i] - self.p[i] * cp - self.q[i] * cq).collect();
        norm(&r) / norm(x)
    }

    /// Largest coefficient of f restricted to the line.
    pub fn containment_residual(&self, f: &CubicForm) -> f64 {
        let (p, q) = (&self.p, &self.q);
        let c = [f.eval(p), f.trilinear(p, p, q) * 3.0, f.trilinear(p, q, q) * 3.0, f.eval(q)];
        max_abs(&c)
    }

    /// Columns: the s², st, t² coefficients of ∇f(s·p + t·q).
    pub fn restricted_gauss(&self, f: &CubicForm) -> DMatrix<C> {
        let gp = f.gradient(&self.p);
        let gq = f.gradient(&self.q);
        let m = f.contract(&self.p);
        let hpq: CVec = m.iter().map(|row| dot(row, &self.q) * 6.0).collect();
        let n = self.p.len();
        DMatrix::from_fn(n, 3, |i, j| [gp[i], hpq[i], gq[i]][j])
    }

    /// σ₃/σ₁ of the restricted Gauss matrix.
    pub fn type_ratio(&self, f: &CubicForm) -> f64 {
        let s = singular_values(&self.restricted_gauss(f));
        s[2] / s[0].max(1e-300)
    }

    pub fn numeric_type(&self, f: &CubicForm) -> Result<LineType, NumericError> {
        let r = self.type_ratio(f);
        if r < SECOND_TYPE_THRESHOLD {
            Ok(LineType::Second)
        } else if r > FIRST_TYPE_THRESHOLD {
            Ok(LineType::First)
        } else {
            Err(NumericError::Degenerate(format!("ambiguous line type (ratio {r:e})")))
        }
    }

    /// Exact line over Q(ω) with the same coordinates, if every entry of the
    /// row-reduced basis is recognizable and f vanishes on the result.
    pub fn promote(&self, f: &MultiPoly, max_den: i64, tol: f64) -> Option<Line> {
        let rows = numeric_rref(&self.p, &self.q, 1e-8)?;
        let exact: Option<Vec<Vec<FieldElem>>> =
            rows.iter().map(|r| r.iter().map(|z| FieldElem::recognize(*z, max_den, tol)).collect()).collect();
        let line = Line::from_rows(exact?).ok()?;
        contains_line(f, &line).ok()?.then_some(line)
    }
}

/// Residual line of the plane span(L, r): X ∩ Π = 2L + L′.
#[derive(Clone, Debug)]
pub struct NumResidual {
    pub line: NumLine,
    /// Largest coefficient that tangency along L forces to vanish.
    pub tangency: f64,
}

impl NumLine {
    /// With f(a·p + b·q + c·r) = c²·(λ₁a + λ₂b + λ₃c) when Π is tangent
    /// along L, the residual line is {λ = 0}.
    pub fn voisin_residual(&self, f: &CubicForm, r: &[C]) -> Result<NumResidual, NumericError> {
        let (p, q) = (&self.p, &self.q);
        let basis = orthonormalize(&[p.clone(), q.clone(), r.to_vec()]);
        if basis.len() < 3 {
            return Err(NumericError::Degenerate("the point lies on the line".into()));
        }
        let r = &basis[2];
        let tangency = max_abs(&[f.trilinear(p, p, r) * 3.0, f.trilinear(p, q, r) * 6.0, f.trilinear(q, q, r) * 3.0]);
        let lam = [f.trilinear(p, r, r) * 3.0, f.trilinear(q, r, r) * 3.0, f.eval(r)];
        if max_abs(&lam) < 1e-12 {
            return Err(NumericError::Degenerate("the plane lies in the cubic or meets it in a triple line".into()));
        }
        let ker = null_space(&to_matrix(&[lam.to_vec()]), 1e-12);
        let pts: Vec<CVec> = ker.iter().map(|k| (0..p.len()).map(|i| k[0] * p[i] + k[1] * q[i] + k[2] * r[i]).collect()).collect();
        let line = NumLine::through(&pts[0], &pts[1]).expect("kernel vectors are independent");
        Ok(NumResidual { line, tangency })
    }

    /// Coefficients (s³, s²t, st², t³) of a cubic form restricted to the line.
    pub fn restrict_cubic(&self, g: &CubicForm) -> [C; 4] {
        let (p, q) = (&self.p, &self.q);
        [g.eval(p), g.trilinear(p, p, q) * 3.0, g.trilinear(p, q, q) * 3.0, g.eval(q)]
    }

    /// Distinct common zeros [s : t] on the line of the given cubic forms,
    /// or `None` if all of them vanish identically on it.
    ///
    /// The restricted coefficients carry absolute noise of about ε·‖g‖, and
    /// a double root splits by the square root of the relative noise; roots
    /// closer than a multiple of that are merged.
    pub fn common_zeros(&self, forms: &[CubicForm], tol: f64) -> Option<Vec<[C; 2]>> {
        let restricted: Vec<[C; 4]> = forms.iter().map(|g| self.restrict_cubic(g)).collect();
        let scale = restricted.iter().map(|c| max_abs(c)).fold(0.0, f64::max).max(1e-300);
        let size = forms.iter().map(CubicForm::max_abs_coeff).fold(0.0, f64::max);
        let merge = (100.0 * (f64::EPSILON * size / scale).sqrt()).max(1e-6);
        let lead = restricted.iter().find(|c| max_abs(*c) > 1e-12 * scale)?;
        let eval = |c: &[C; 4], z: &[C; 2]| {
            let (s, t) = (z[0], z[1]);
            c[0] * s * s * s + c[1] * s * s * t + c[2] * s * t * t + c[3] * t * t * t
        };
        let mut out: Vec<[C; 2]> = Vec::new();
        for root in super::roots::binary_roots(lead) {
            let n = (root[0].norm_sqr() + root[1].norm_sqr()).sqrt();
            let z = [root[0] / n, root[1] / n];
            if restricted.iter().all(|c| eval(c, &z).norm() <= tol * scale)
                && out.iter().all(|w| projective_distance(w, &z) > merge)
            {
                out.push(z);
            }
        }
        Some(out)
    }
}

/// Reduced row echelon form of a 2-row matrix with leftmost pivots.
fn numeric_rref(p: &[C], q: &[C], tol: f64) -> Option<[CVec; 2]> {
    let mut a = p.to_vec();
    let mut b = q.to_vec();
    let n = a.len();
    let c0 = (0..n).find(|&j| a[j].norm().max(b[j].norm()) > tol)?;
    if b[c0].norm() > a[c0].norm() {
        std::mem::swap(&mut a, &mut b);
    }
    let inv = a[c0].inv();
    a.iter_mut().for_each(|v| *v *= inv);
    let f = b[c0];
    for j in 0..n {
        b[j] -= f * a[j];
    }
    let c1 = (c0 + 1..n).find(|&j| b[j].norm() > tol)?;
    let inv = b[c1].inv();
    b.iter_mut().for_each(|v| *v *= inv);
    let f = a[c1];
    for j in 0..n {
        a[j] -= f * b[j];
    }
    a[c1] = ZERO;
    b[c0] = ZERO;
    Some([a, b])
}

/// Keeps the first of every group of lines closer than `tol`.
pub fn dedup_lines(lines: Vec<NumLine>, tol: f64) -> Vec<NumLine> {
    let mut out: Vec<NumLine> = Vec::with_capacity(lines.len());
    for l in lines {
        if out.iter().all(|m| m.distance(&l) >= tol) {
            out.push(l);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberOptions {
    pub cluster_tol: f64,
    /// |f(x)| allowed at the base point, for unit x.
    pub on_cubic_tol: f64,
}

impl Default for FiberOptions {
    fn default() -> Self {
        Self { cluster_tol: 1e-6, on_cubic_tol: 1e-8 }
    }
}

#[derive(Clone, Debug)]
pub struct LineSolution {
    pub line: NumLine,
    pub multiplicity: Multiplicity,
    pub residual: f64,
    pub exact: Option<Line>,
}

/// Orthonormal basis of the tangent directions at x, Hermitian-orthogonal to x.
fn tangent_directions(f: &CubicForm, x: &[C]) -> Result<Vec<CVec>, NumericError> {
    let grad = f.gradient(x);
    if max_abs(&grad) < 1e-10 {
        return Err(NumericError::SingularPoint);
    }
    let xc: CVec = x.iter().map(|v| v.conj()).collect();
    Ok(null_space(&to_matrix(&[grad, xc]), 1e-10))
}

/// The lines on V(f) through x, with multiplicities from the (2,3) system
/// in the space of tangent directions. For n + 2 > 5 variables the direction
/// space is cut down to a plane by random hyperplanes first, so the result
/// is the finite set of lines through x meeting a random linear space.
pub fn solve_lines_through_point(f: &CubicForm, x: &[C], seed: u64, opts: &FiberOptions) -> Result<Vec<LineSolution>, NumericError> {
    let x = super::linalg::normalize(x);
    let fx = f.eval(&x).norm();
    if fx > opts.on_cubic_tol {
        return Err(NumericError::NotOnCubic(fx));
    }
    let mut w = tangent_directions(f, &x)?;
    if w.len() > 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x51ce);
        let cuts: Vec<CVec> = (0..w.len() - 3).map(|_| random_vector(&mut rng, w.len())).collect();
        let sub = null_space(&to_matrix(&cuts), 1e-10);
        w = sub.iter().map(|c| (0..x.len()).map(|i| (0..c.len()).map(|a| c[a] * w[a][i]).sum()).collect()).collect();
    }
    let (quad, cubic) = f.restricted_forms(&x, &w);
    let pts = solve_ternary(&quad, &cubic, seed, opts.cluster_tol)?;
    Ok(pts
        .into_iter()
        .map(|pt| {
            let y: CVec = (0..x.len()).map(|i| (0..3).map(|a| pt.point[a] * w[a][i]).sum()).collect();
            let line = NumLine::through(&x, &y).expect("tangent directions are independent of x");
            let multiplicity = if pt.multiplicity == 1 { Multiplicity::Simple } else { Multiplicity::Cluster(pt.multiplicity) };
            LineSolution { residual: line.containment_residual(f), line, multiplicity, exact: None }
        })
        .collect())
}

/// As [`solve_lines_through_point`] for an exact point of an exact cubic:
/// infinitely many lines (on a threefold) are detected exactly, and lines
/// whose coordinates are recognizably in Q(ω) are promoted.
pub fn solve_lines_through_exact_point(f: &MultiPoly, x: &[FieldElem], seed: u64, opts: &FiberOptions) -> Result<Vec<LineSolution>, NumericError> {
    let sys = lines_through_point_system(f, x).map_err(|e| match e {
        crate::geometry::GeometryError::SingularPoint => NumericError::SingularPoint,
        other => NumericError::Degenerate(other.to_string()),
    })?;
    if sys.basis.len() == 3 && exact_common_component(&sys.quadric, &sys.cubic) {
        return Err(NumericError::NonIsolated);
    }
    let fc = CubicForm::from_poly(f);
    let xc: CVec = x.iter().map(|v| v.to_complex()).collect();
    let mut sols = solve_lines_through_point(&fc, &xc, seed, opts)?;
    for s in &mut sols {
        s.exact = s.line.promote(f, 10_000, 1e-9);
    }
    Ok(sols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MultiPoly;

    fn fermat3() -> MultiPoly {
        MultiPoly::sum_of_cubes(5, &[0, 1, 2, 3, 4])
    }

    fn fe(v: &[i64]) -> Vec<FieldElem> {
        v.iter().map(|&a| FieldElem::from_ints(a, 0)).collect()
    }

    #[test]
    fn six_lines_through_a_rational_point() {
        // 3³ + 4³ + 5³ = 6³
        let sols = solve_lines_through_exact_point(&fermat3(), &fe(&[3, 4, 5, -6, 0]), 7, &FiberOptions::default()).unwrap();
        assert_eq!(sols.len(), 6);
        let fc = CubicForm::from_poly(&fermat3());
        for s in &sols {
            assert_eq!(s.multiplicity, Multiplicity::Simple);
            assert!(s.residual < 1e-10, "residual {:e}", s.residual);
            assert_eq!(s.line.numeric_type(&fc).unwrap(), LineType::First);
        }
    }

    #[test]
    fn eckardt_point_has_infinitely_many_lines() {
        let r = solve_lines_through_exact_point(&fermat3(), &fe(&[1, -1, 0, 0, 0]), 0, &FiberOptions::default());
        assert_eq!(r.unwrap_err(), NumericError::NonIsolated);
        let fc = CubicForm::from_poly(&fermat3());
        let x = [C::new(1.0, 0.0), C::new(-1.0, 0.0), ZERO, ZERO, ZERO];
        assert_eq!(solve_lines_through_point(&fc, &x, 0, &FiberOptions::default()).unwrap_err(), NumericError::NonIsolated);
    }

    #[test]
    fn block_lines_are_promoted() {
        let target = Line::new(fe(&[1, -1, 0, 0, 0]), fe(&[0, 0, 1, -1, 0])).unwrap();
        let rows = target.to_complex();
        let mix = |a: C, b: C| -> CVec { rows[0].iter().zip(&rows[1]).map(|(x, y)| x * a + y * b).collect() };
        let l = NumLine::through(&mix(C::new(0.3, 1.1), C::new(-2.0, 0.5)), &mix(C::new(1.0, 0.0), C::new(0.7, -0.2))).unwrap();
        assert_eq!(l.promote(&fermat3(), 100, 1e-9), Some(target));
        let off = NumLine::through(&mix(C::new(1.0, 0.0), ZERO), &[C::new(0.1, 0.0), ZERO, ZERO, ZERO, C::new(1.0, 0.0)]).unwrap();
        assert_eq!(off.promote(&fermat3(), 100, 1e-9), None);
    }

    #[test]
    fn plucker_distance_is_basis_independent() {
        let a = vec![C::new(1.0, 0.0), C::new(2.0, 1.0), ZERO, C::new(0.0, -1.0)];
        let b = vec![ZERO, C::new(1.0, 0.0), C::new(3.0, 0.0), C::new(1.0, 1.0)];
        let l1 = NumLine::through(&a, &b).unwrap();
        let a2: CVec = a.iter().zip(&b).map(|(x, y)| x * C::new(2.0, 1.0) + y).collect();
        let l2 = NumLine::through(&b, &a2).unwrap();
        assert!(l1.distance(&l2) < 1e-12);
        assert_eq!(dedup_lines(vec![l1, l2], 1e-6).len(), 1);
    }
}
