//! Families of line fibers over a parameter space and their monodromy.
//!
//! A line through x is recorded by a direction y with g·y = 0 and h·y = 1
//! for fixed random g, h; it lies on V(f) iff ∇f(x)·y = 0, T(x,y,y) = 0 and
//! f(y) = 0. The point x moves either along a fixed line (x = a + λb) or
//! over the cubic itself in an affine chart where one coordinate s is an
//! extra unknown solving f(x) = 0.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::cubic::CubicForm;
use super::linalg::{add, dot, norm, random_vector, scale, sub, CVec, C, ONE, ZERO};
use super::lines::NumLine;
use super::newton::{Homotopy, System};
use super::tracker::{track_segment, TrackOptions};
use super::NumericError;

/// A family of square systems over a complex parameter space; `segment`
/// is the homotopy along the straight path between two parameter values.
pub trait FiberFamily: Sync {
    fn param_dim(&self) -> usize;
    fn segment<'a>(&'a self, from: &[C], to: &[C]) -> Box<dyn Homotopy + 'a>;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Chart {
    /// x = a + λ·b
    OnLine { a: CVec, b: CVec },
    /// x[pivot] = 1, x[free] = parameters, x[solved] = s
    OnCubic { pivot: usize, solved: usize, free: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct LineFamily {
    f: CubicForm,
    g: CVec,
    h: CVec,
    chart: Chart,
}

impl LineFamily {
    /// Points x = a + λb of a line on the cubic.
    pub fn on_line<R: Rng + ?Sized>(f: CubicForm, a: CVec, b: CVec, rng: &mut R) -> Self {
        let n = f.n_vars();
        Self { g: random_vector(rng, n), h: random_vector(rng, n), chart: Chart::OnLine { a, b }, f }
    }

    /// Points of the cubic near `x`, in the chart where the largest
    /// coordinate of x is 1 and the coordinate with the largest partial
    /// derivative among the rest is solved for. Returns the family and the
    /// parameters of x.
    pub fn on_cubic<R: Rng + ?Sized>(f: CubicForm, x: &[C], rng: &mut R) -> (Self, CVec) {
        let n = f.n_vars();
        let argmax = |v: &[C], skip: Option<usize>| {
            (0..n).filter(|&i| Some(i) != skip).max_by(|&i, &j| v[i].norm().partial_cmp(&v[j].norm()).unwrap()).unwrap()
        };
        let pivot = argmax(x, None);
        let grad = f.gradient(x);
        let solved = argmax(&grad, Some(pivot));
        let free: Vec<usize> = (0..n).filter(|&i| i != pivot && i != solved).collect();
        let params = free.iter().map(|&i| x[i] / x[pivot]).collect();
        let fam = Self { g: random_vector(rng, n), h: random_vector(rng, n), chart: Chart::OnCubic { pivot, solved, free }, f };
        (fam, params)
    }

    pub fn cubic(&self) -> &CubicForm {
        &self.f
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    fn n(&self) -> usize {
        self.f.n_vars()
    }

    /// Number of unknowns of a fiber element.
    pub fn unknowns(&self) -> usize {
        match self.chart {
            Chart::OnLine { .. } => self.n(),
            Chart::OnCubic { .. } => self.n() + 1,
        }
    }

    /// The point over `params`; `z` supplies s in the cubic chart.
    pub fn point(&self, params: &[C], z: &[C]) -> CVec {
        match &self.chart {
            Chart::OnLine { a, b } => add(a, &scale(b, params[0])),
            Chart::OnCubic { pivot, solved, free } => {
                let mut x = vec![ZERO; self.n()];
                x[*pivot] = ONE;
                x[*solved] = z[self.n()];
                for (k, &i) in free.iter().enumerate() {
                    x[i] = params[k];
                }
                x
            }
        }
    }

    /// Unknowns describing `line` through the point x over `params`.
    pub fn encode(&self, x: &[C], line: &NumLine) -> Option<CVec> {
        // w is the basis vector of the line farthest from x
        let w = if projective_cos(x, &line.p) < projective_cos(x, &line.q) { &line.p } else { &line.q };
        let y = sub(&scale(w, dot(&self.g, x)), &scale(x, dot(&self.g, w)));
        let hy = dot(&self.h, &y);
        if hy.norm() < 1e-12 * norm(&y) {
            return None;
        }
        let mut z = scale(&y, hy.inv());
        if let Chart::OnCubic { pivot, solved, .. } = &self.chart {
            z.push(x[*solved] / x[*pivot]);
        }
        Some(z)
    }

    /// The line encoded by z over `params`.
    pub fn decode(&self, params: &[C], z: &[C]) -> NumLine {
        let x = self.point(params, z);
        NumLine::through(&x, &z[..self.n()]).expect("g·y = 0 keeps y away from x")
    }

    /// The fiber system at fixed parameters.
    pub fn at<'a>(&'a self, params: &[C]) -> impl System + 'a {
        FrozenFiber { seg: LineSegment { fam: self, from: params.to_vec(), to: params.to_vec() } }
    }
}

fn projective_cos(a: &[C], b: &[C]) -> f64 {
    super::linalg::hdot(a, b).norm() / (norm(a) * norm(b))
}

impl FiberFamily for LineFamily {
    fn param_dim(&self) -> usize {
        match &self.chart {
            Chart::OnLine { .. } => 1,
            Chart::OnCubic { free, .. } => free.len(),
        }
    }

    fn segment<'a>(&'a self, from: &[C], to: &[C]) -> Box<dyn Homotopy + 'a> {
        Box::new(LineSegment { fam: self, from: from.to_vec(), to: to.to_vec() })
    }
}

struct LineSegment<'a> {
    fam: &'a LineFamily,
    from: CVec,
    to: CVec,
}

struct Parts {
    x: CVec,
    y: CVec,
    /// T(x, x, ·)
    mxx: CVec,
    /// T(x, y, ·)
    mxy: CVec,
    /// ∇f(y) = 3T(y, y, ·)
    gy: CVec,
}

impl LineSegment<'_> {
    fn params(&self, t: f64) -> CVec {
        self.from.iter().zip(&self.to).map(|(a, b)| a + (b - a) * t).collect()
    }

    fn parts(&self, z: &[C], t: f64) -> Parts {
        let n = self.fam.n();
        let x = self.fam.point(&self.params(t), z);
        let y = z[..n].to_vec();
        let m = self.fam.f.contract(&x);
        let mxx = m.iter().map(|r| dot(r, &x)).collect();
        let mxy = m.iter().map(|r| dot(r, &y)).collect();
        let gy = self.fam.f.gradient(&y);
        Parts { x, y, mxx, mxy, gy }
    }

    /// dx/dt along the segment, s held fixed.
    fn dx_dt(&self) -> CVec {
        let d = sub(&self.to, &self.from);
        match &self.fam.chart {
            Chart::OnLine { b, .. } => scale(b, d[0]),
            Chart::OnCubic { free, .. } => {
                let mut v = vec![ZERO; self.fam.n()];
                for (k, &i) in free.iter().enumerate() {
                    v[i] = d[k];
                }
                v
            }
        }
    }

    /// Directional derivatives of the equations in x along v.
    fn dx_eqs(&self, p: &Parts, v: &[C]) -> CVec {
        let mut out = vec![ZERO, ZERO, dot(&p.mxy, v) * 6.0, dot(&p.gy, v), ZERO];
        if matches!(self.fam.chart, Chart::OnCubic { .. }) {
            out.push(dot(&p.mxx, v) * 3.0);
        }
        out
    }
}

impl Homotopy for LineSegment<'_> {
    fn dim(&self) -> usize {
        self.fam.unknowns()
    }

    fn eval(&self, z: &[C], t: f64) -> CVec {
        let p = self.parts(z, t);
        let mut out = vec![
            dot(&self.fam.g, &p.y),
            dot(&self.fam.h, &p.y) - ONE,
            dot(&p.mxx, &p.y) * 3.0,
            dot(&p.mxy, &p.y) * 3.0,
            self.fam.f.eval(&p.y),
        ];
        if matches!(self.fam.chart, Chart::OnCubic { .. }) {
            out.push(dot(&p.mxx, &p.x));
        }
        out
    }

    fn jac_z(&self, z: &[C], t: f64) -> DMatrix<C> {
        let p = self.parts(z, t);
        let n = self.fam.n();
        let dim = self.dim();
        let mut j = DMatrix::<C>::zeros(dim, dim);
        for c in 0..n {
            j[(0, c)] = self.fam.g[c];
            j[(1, c)] = self.fam.h[c];
            j[(2, c)] = p.mxx[c] * 3.0;
            j[(3, c)] = p.mxy[c] * 6.0;
            j[(4, c)] = p.gy[c];
        }
        if let Chart::OnCubic { solved, .. } = &self.fam.chart {
            let col = self.dx_eqs(&p, &super::linalg::scale(&unit(n, *solved), ONE));
            for r in 0..dim {
                j[(r, n)] = col[r];
            }
        }
        j
    }

    fn jac_t(&self, z: &[C], t: f64) -> CVec {
        let p = self.parts(z, t);
        self.dx_eqs(&p, &self.dx_dt())
    }
}

fn unit(n: usize, i: usize) -> CVec {
    let mut v = vec![ZERO; n];
    v[i] = ONE;
    v
}

struct FrozenFiber<'a> {
    seg: LineSegment<'a>,
}

impl System for FrozenFiber<'_> {
    fn dim(&self) -> usize {
        self.seg.dim()
    }
    fn eval(&self, z: &[C]) -> CVec {
        self.seg.eval(z, 0.0)
    }
    fn jacobian(&self, z: &[C]) -> DMatrix<C> {
        self.seg.jac_z(z, 0.0)
    }
}

/// A closed piecewise-linear loop in parameter space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopPath {
    pub waypoints: Vec<CVec>,
}

impl LoopPath {
    pub fn constant(base: &[C]) -> Self {
        Self { waypoints: vec![base.to_vec(), base.to_vec()] }
    }

    /// base → base + scale·g₁ → base + scale·g₂ → base with complex
    /// Gaussian g₁, g₂.
    pub fn random_triangle<R: Rng + ?Sized>(rng: &mut R, base: &[C], scale_: f64) -> Self {
        let d = base.len();
        let v1 = add(base, &scale(&random_vector(rng, d), C::new(scale_, 0.0)));
        let v2 = add(base, &scale(&random_vector(rng, d), C::new(scale_, 0.0)));
        Self { waypoints: vec![base.to_vec(), v1, v2, base.to_vec()] }
    }

    /// A loop around `center` by a regular polygon of the given radius,
    /// reached from the base by a straight spoke (a lasso), for a
    /// one-dimensional parameter.
    pub fn lasso(base: C, center: C, radius: f64, sides: usize) -> Self {
        let dir = (base - center) / (base - center).norm();
        let mut w = vec![vec![base]];
        for k in 0..=sides {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / sides as f64;
            w.push(vec![center + dir * radius * C::from_polar(1.0, ang)]);
        }
        w.push(vec![base]);
        Self { waypoints: w }
    }

    pub fn is_closed(&self) -> bool {
        self.waypoints.first() == self.waypoints.last()
    }

    /// This loop followed by `other`; both must start at the same point.
    pub fn then(&self, other: &Self) -> Self {
        let mut w = self.waypoints.clone();
        w.extend(other.waypoints.iter().skip(1).cloned());
        Self { waypoints: w }
    }

    /// The same loop traversed backwards.
    pub fn reversed(&self) -> Self {
        Self { waypoints: self.waypoints.iter().rev().cloned().collect() }
    }

    /// Smallest distance from the path to any of `points`.
    pub fn distance_to(&self, points: &[CVec]) -> f64 {
        let mut best = f64::INFINITY;
        for seg in self.waypoints.windows(2) {
            let d = sub(&seg[1], &seg[0]);
            let dd = dot_h(&d, &d).re;
            for p in points {
                let s = if dd == 0.0 { 0.0 } else { (dot_h(&d, &sub(p, &seg[0])).re / dd).clamp(0.0, 1.0) };
                let q = add(&seg[0], &scale(&d, C::new(s, 0.0)));
                best = best.min(norm(&sub(p, &q)));
            }
        }
        best
    }
}

fn dot_h(a: &[C], b: &[C]) -> C {
    super::linalg::hdot(a, b)
}

/// Index j with `z` ≈ `fiber[j]`, if exactly one fiber point is close.
fn match_point(z: &[C], fiber: &[CVec], tol: f64) -> Option<usize> {
    let close: Vec<usize> = (0..fiber.len()).filter(|&j| norm(&sub(z, &fiber[j])) < tol * (1.0 + norm(&fiber[j]))).collect();
    (close.len() == 1).then(|| close[0])
}

/// Tracks `fiber` around `path` and returns the induced permutation
/// (image of start index i is the index of the fiber point reached).
///
/// If the end points are not a permutation of the start points (in the
/// cubic chart the solved coordinate can land on another sheet) the loop
/// is repeated, up to three times in all.
pub fn monodromy_loop<F: FiberFamily + ?Sized>(
    family: &F,
    fiber: &[CVec],
    path: &LoopPath,
    opts: &TrackOptions,
    match_tol: f64,
) -> Result<Vec<usize>, NumericError> {
    if !path.is_closed() {
        return Err(NumericError::Degenerate("loop is not closed".into()));
    }
    let mut current = fiber.to_vec();
    for _ in 0..3 {
        for seg in path.waypoints.windows(2) {
            if seg[0] == seg[1] {
                continue;
            }
            current = track_segment(&*family.segment(&seg[0], &seg[1]), &current, opts)?;
        }
        let images: Option<Vec<usize>> = current.iter().map(|z| match_point(z, fiber, match_tol)).collect();
        if let Some(images) = images {
            let mut seen = vec![false; images.len()];
            for &j in &images {
                seen[j] = true;
            }
            if seen.iter().all(|&b| b) {
                return Ok(images);
            }
        }
    }
    Err(NumericError::Degenerate("loop endpoints do not match the start fiber".into()))
}
