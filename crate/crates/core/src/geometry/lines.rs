//! Exact operations on lines of a cubic hypersurface V(f).
//!
//! Conventions: a line L = span(p, q) is parametrized by s·p + t·q, binary
//! quadrics are stored as coefficient rows (s², st, t²), and points are
//! coordinate vectors of length n + 2.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::line::{Line, Plane};
use super::GeometryError;
use crate::algebra::binary::{binary_form_factor, numeric_roots_of};
use crate::algebra::matrix::{extend_independent, unit_vector};
use crate::algebra::{BinaryForm, ExactField, Field, FieldElem, Matrix, MultiPoly, Poly};
use crate::numeric::roots::cluster_roots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineType {
    First,
    Second,
}

type Result<T> = std::result::Result<T, GeometryError>;

pub fn contains_line<F: ExactField>(f: &Poly<F>, l: &Line<F>) -> Result<bool> {
    Ok(f.restrict(l.rows())?.is_zero())
}

fn ensure_on<F: ExactField>(f: &Poly<F>, l: &Line<F>) -> Result<()> {
    if contains_line(f, l)? {
        Ok(())
    } else {
        Err(GeometryError::NotOnCubic)
    }
}

fn quadric_row<F: ExactField>(q: &Poly<F>) -> Vec<F> {
    vec![q.coeff(&[2, 0]), q.coeff(&[1, 1]), q.coeff(&[0, 2])]
}

/// The (n+2)×3 matrix whose i-th row is ∂f/∂xᵢ restricted to L.
pub fn restricted_quadrics<F: ExactField>(f: &Poly<F>, l: &Line<F>) -> Result<Matrix<F>> {
    let rows = f.gradient().iter().map(|g| g.restrict(l.rows()).map(|r| quadric_row(&r))).collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows))
}

/// First or second type by the rank of the restricted partials.
///
/// The Gauss map restricted to L is x ↦ (∂f/∂xᵢ(x))ᵢ, a map P¹ → P^{n+1} given
/// by binary quadrics. If they span all three quadrics the map is an
/// isomorphism onto a conic. If they span only a pencil, the map factors
/// through P¹ → P¹ given by two quadrics without common zero (a common zero
/// would be a singular point of X on L), which has degree 2.
pub fn line_type<F: ExactField>(f: &Poly<F>, l: &Line<F>) -> Result<LineType> {
    ensure_on(f, l)?;
    Ok(if restricted_quadrics(f, l)?.rank() <= 2 { LineType::Second } else { LineType::First })
}

/// The two points where the restricted Gauss map of a second-type line
/// ramifies.
#[derive(Clone, Debug, PartialEq)]
pub enum RamificationPoints {
    Exact([Vec<FieldElem>; 2]),
    /// When the ramification points are not defined over Q(ω).
    Numeric([Vec<Complex64>; 2]),
}

/// Wronskian Q₁ₛQ₂ₜ − Q₁ₜQ₂ₛ of two binary quadrics.
pub fn wronskian<F: Field>(a: &[F], b: &[F]) -> [F; 3] {
    let two = F::from_i64(2);
    let four = F::from_i64(4);
    [
        two.clone() * (a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()),
        four * (a[0].clone() * b[2].clone() - a[2].clone() * b[0].clone()),
        two * (a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone()),
    ]
}

pub fn gauss_ramification(f: &MultiPoly, l: &Line) -> Result<RamificationPoints> {
    ensure_on(f, l)?;
    let m = restricted_quadrics(f, l)?;
    let basis = m.row_space_basis();
    if basis.len() != 2 {
        return Err(GeometryError::NotSecondType);
    }
    let w = BinaryForm::new(wronskian(&basis[0], &basis[1]).to_vec());
    let fac = binary_form_factor(&w)?;
    let exact: Vec<Vec<FieldElem>> = fac
        .roots
        .iter()
        .flat_map(|r| std::iter::repeat_n(l.point(&r.point[0], &r.point[1]), r.multiplicity))
        .collect();
    if exact.len() == 2 {
        return Ok(RamificationPoints::Exact([exact[0].clone(), exact[1].clone()]));
    }
    let rows = l.to_complex();
    let to_point = |st: [Complex64; 2]| -> Vec<Complex64> {
        rows[0].iter().zip(&rows[1]).map(|(p, q)| st[0] * p + st[1] * q).collect()
    };
    let mut pts: Vec<Vec<Complex64>> =
        fac.roots.iter().map(|r| to_point([r.point[0].to_complex(), r.point[1].to_complex()])).collect();
    pts.extend(numeric_roots_of(&fac.unsplit).into_iter().map(to_point));
    Ok(RamificationPoints::Numeric([pts[0].clone(), pts[1].clone()]))
}

/// Directions v with span(L, v) tangent to X along L (or inside X).
#[derive(Clone, Debug, PartialEq)]
pub struct TangentSpan<F = FieldElem> {
    pub ambient_dim: usize,
    /// Basis of the full solution space, which contains the span of L.
    pub solution_basis: Vec<Vec<F>>,
    /// Solution directions completing L's basis to a basis of the solutions.
    pub directions: Vec<Vec<F>>,
    pub quotient_dim: usize,
}

/// The u¹ coefficient of f(s·p + t·q + u·v) is Σᵢ vᵢ ∂f/∂xᵢ(s·p + t·q), so the
/// solution space is the left kernel of the restricted-quadric matrix.
pub fn tangent_spans<F: ExactField>(f: &Poly<F>, l: &Line<F>) -> Result<TangentSpan<F>> {
    ensure_on(f, l)?;
    let m = restricted_quadrics(f, l)?;
    let solution_basis = m.transpose().kernel();
    let directions = extend_independent(l.rows(), &solution_basis);
    Ok(TangentSpan {
        ambient_dim: l.ambient_dim(),
        quotient_dim: directions.len(),
        solution_basis,
        directions,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residual<F = FieldElem> {
    pub line: Line<F>,
    /// X ∩ Π = 3L; the residual is L itself.
    pub triple: bool,
}

/// The residual line ℓ′ in X ∩ Π = 2ℓ + ℓ′.
pub fn voisin_residual<F: ExactField>(f: &Poly<F>, l: &Line<F>, plane: &Plane<F>) -> Result<Residual<F>> {
    if !plane.contains_line(l) {
        return Err(GeometryError::LineNotInPlane);
    }
    ensure_on(f, l)?;
    let r = plane.complement_of(l).expect("plane strictly contains the line");
    let basis = [l.rows()[0].clone(), l.rows()[1].clone(), r];
    // variables (s, t, u) with L = {u = 0}
    let g = f.restrict(&basis)?;
    if g.is_zero() {
        return Err(GeometryError::PlaneInCubic);
    }
    let monomials_off_u2: [[u32; 3]; 7] = [[3, 0, 0], [2, 1, 0], [1, 2, 0], [0, 3, 0], [2, 0, 1], [1, 1, 1], [0, 2, 1]];
    if monomials_off_u2.iter().any(|e| !g.coeff(e).is_zero()) {
        return Err(GeometryError::NotTangent);
    }
    let lambda = [g.coeff(&[1, 0, 2]), g.coeff(&[0, 1, 2]), g.coeff(&[0, 0, 3])];
    if lambda[0].is_zero() && lambda[1].is_zero() {
        return Ok(Residual { line: l.clone(), triple: true });
    }
    let ker = Matrix::from_rows(vec![lambda.to_vec()]).kernel();
    let pts: Vec<Vec<F>> = ker
        .iter()
        .map(|c| {
            (0..basis[0].len())
                .map(|i| basis.iter().zip(c).fold(F::zero(), |acc, (b, ci)| acc + ci.clone() * b[i].clone()))
                .collect()
        })
        .collect();
    Ok(Residual { line: Line::from_rows(pts)?, triple: false })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionPoint {
    /// Parameters [s : t] on the line.
    pub param: [Complex64; 2],
    pub exact: Option<[FieldElem; 2]>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Intersection {
    Infinite,
    Points(Vec<IntersectionPoint>),
}

impl Intersection {
    pub fn distinct(&self) -> Option<usize> {
        match self {
            Intersection::Infinite => None,
            Intersection::Points(p) => Some(p.len()),
        }
    }
}

/// L ∩ V(g) with multiplicities; roots outside Q(ω) are found numerically.
pub fn intersect_line_hypersurface(l: &Line, g: &MultiPoly) -> Result<Intersection> {
    let r = g.restrict(l.rows())?;
    if r.is_zero() {
        return Ok(Intersection::Infinite);
    }
    let d = r.homogeneous_degree().expect("restriction of a form is homogeneous");
    let fac = binary_form_factor(&BinaryForm::from_poly(&r, d))?;
    let mut out: Vec<IntersectionPoint> = fac
        .roots
        .iter()
        .map(|x| IntersectionPoint {
            param: [x.point[0].to_complex(), x.point[1].to_complex()],
            exact: Some(x.point.clone()),
            multiplicity: x.multiplicity,
        })
        .collect();
    // roots of the unsplit part are finite: its t-leading coefficient is nonzero
    let u: Vec<Complex64> = fac.unsplit.coeffs.iter().map(|c| c.to_complex()).collect();
    if u.len() > 1 {
        let roots: Vec<Complex64> = numeric_roots_of(&fac.unsplit).into_iter().map(|p| p[1] / p[0]).collect();
        for c in cluster_roots(&u, &roots, 1e-6) {
            out.push(IntersectionPoint {
                param: [Complex64::new(1.0, 0.0), c.value],
                exact: None,
                multiplicity: c.multiplicity,
            });
        }
    }
    Ok(Intersection::Points(out))
}

/// The lines through x on X: writing y = u·x + Σ yᵢ wᵢ with (wᵢ) a basis of
/// the tangent hyperplane modulo x, a line span(x, y) lies on X iff the
/// quadric and the cubic below vanish at (yᵢ).
#[derive(Clone, Debug, PartialEq)]
pub struct PointSystem<F = FieldElem> {
    pub point: Vec<F>,
    pub basis: Vec<Vec<F>>,
    pub quadric: Poly<F>,
    pub cubic: Poly<F>,
}

impl<F: ExactField> PointSystem<F> {
    /// Ambient direction Σ yᵢ wᵢ.
    pub fn direction(&self, y: &[F]) -> Vec<F> {
        let n = self.point.len();
        (0..n).map(|j| self.basis.iter().zip(y).fold(F::zero(), |acc, (w, c)| acc + c.clone() * w[j].clone())).collect()
    }
}

pub fn lines_through_point_system<F: ExactField>(f: &Poly<F>, x: &[F]) -> Result<PointSystem<F>> {
    let n = f.n_vars();
    if x.len() != n {
        return Err(crate::algebra::AlgebraError::DimensionMismatch { expected: n, found: x.len() }.into());
    }
    if !f.eval(x).is_zero() {
        return Err(GeometryError::PointNotOnCubic);
    }
    let grad: Vec<F> = f.gradient().iter().map(|g| g.eval(x)).collect();
    if grad.iter().all(|g| g.is_zero()) {
        return Err(GeometryError::SingularPoint);
    }
    let tangent = Matrix::from_rows(vec![grad]).kernel();
    let basis = extend_independent(&[x.to_vec()], &tangent);
    let mut all = vec![x.to_vec()];
    all.extend(basis.iter().cloned());
    let g = f.restrict(&all)?;
    Ok(PointSystem { point: x.to_vec(), basis, quadric: g.coefficient_of(0, 1), cubic: g.coefficient_of(0, 0) })
}

fn symmetric_matrix<F: ExactField>(q: &Poly<F>) -> Matrix<F> {
    let k = q.n_vars();
    let half = F::from_i64(2).inv().unwrap();
    let mut m = Matrix::zeros(k, k);
    for (e, c) in q.terms() {
        let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &p)| std::iter::repeat_n(i, p as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m.set(i, i, c.clone());
        } else {
            m.set(i, j, c.clone() * half.clone());
            m.set(j, i, c.clone() * half.clone());
        }
    }
    m
}

/// Linear forms ℓ (as coefficient vectors) over Q(ω) dividing the quadric.
fn linear_factors(q: &MultiPoly) -> Result<Vec<Vec<FieldElem>>> {
    let k = q.n_vars();
    let a = symmetric_matrix(q);
    let rank = a.rank();
    if rank == 0 || rank > 2 {
        return Ok(Vec::new());
    }
    let kernel = a.kernel();
    if rank == 1 {
        // q = c·ℓ² with ℓ vanishing on the kernel
        return Ok(Matrix::from_rows(kernel).kernel());
    }
    let units: Vec<Vec<FieldElem>> = (0..k).map(|i| unit_vector(k, i)).collect();
    let comp = extend_independent(&kernel, &units);
    let mut out = Vec::new();
    let binary = q.restrict(&comp)?;
    let fac = binary_form_factor(&BinaryForm::from_poly(&binary, 2))?;
    for r in &fac.roots {
        let d: Vec<FieldElem> =
            (0..k).map(|j| r.point[0].clone() * comp[0][j].clone() + r.point[1].clone() * comp[1][j].clone()).collect();
        let mut rows = kernel.clone();
        rows.push(d);
        out.extend(Matrix::from_rows(rows).kernel());
    }
    Ok(out)
}

/// Whether X has a positive-dimensional family of lines through x filling a
/// component of codimension one in the direction space: the quadric divides
/// the cubic, or some linear factor of the quadric over Q(ω) does.
pub fn eckardt_test(f: &MultiPoly, x: &[FieldElem]) -> Result<bool> {
    let sys = lines_through_point_system(f, x)?;
    let (q, c) = (&sys.quadric, &sys.cubic);
    if q.is_zero() || c.is_zero() {
        return Ok(true);
    }
    let k = q.n_vars();
    // c = q·(Σ lᵢ yᵢ): a linear system in the lᵢ over the cubic monomials
    let products: Vec<MultiPoly> = (0..k).map(|i| q.mul(&Poly::var(k, i))).collect();
    let mut monos: Vec<Vec<u32>> = products.iter().flat_map(|p| p.terms().map(|(e, _)| e.clone())).collect();
    monos.extend(c.terms().map(|(e, _)| e.clone()));
    monos.sort();
    monos.dedup();
    let m = Matrix::from_rows(monos.iter().map(|e| products.iter().map(|p| p.coeff(e)).collect()).collect());
    let rhs: Vec<FieldElem> = monos.iter().map(|e| c.coeff(e)).collect();
    if m.solve(&rhs).is_some() {
        return Ok(true);
    }
    for l in linear_factors(q)? {
        let hyper = Matrix::from_rows(vec![l]).kernel();
        if c.restrict(&hyper)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}
