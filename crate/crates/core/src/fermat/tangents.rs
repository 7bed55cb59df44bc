//! Tangent lines of Fermat plane cubics, adjoint lines of join rulings, and
//! the lines through a general point of the fourfold that are residual to
//! second-type lines.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::components::FermatComponent;
use super::{embed, fermat_form, rho, FermatError};
use crate::algebra::{MultiPoly, Poly};
use crate::numeric::cubic::CubicForm;
use crate::numeric::linalg::{dot, max_abs, norm, normalize, CVec, C, ZERO};
use crate::numeric::lines::{dedup_lines, NumLine};
use crate::numeric::ternary::{solve_ternary, PlanePoint};
use crate::geometry::LineType;

const N_VARS: usize = 6;

fn cube_sum(v: &[C]) -> C {
    v.iter().map(|x| x * x * x).sum()
}

/// Points t of the Fermat plane cubic whose tangent line passes through e:
/// the intersection of the curve with the polar conic Σ eᵢxᵢ² = 0.
pub fn tangent_lines_from(e: &[C], seed: u64) -> Result<Vec<PlanePoint>, FermatError> {
    if cube_sum(e).norm() <= 1e-10 * norm(e).powi(3) {
        return Err(FermatError::PointOnCurve);
    }
    let mut conic = Poly::<Complex64>::zero(3);
    for (i, ei) in e.iter().enumerate() {
        let mut ex = vec![0u32; 3];
        ex[i] = 2;
        conic.add_term(ex, *ei);
    }
    let cubic = MultiPoly::sum_of_cubes(3, &[0, 1, 2]).to_complex();
    Ok(solve_ternary(&conic, &cubic, seed, 1e-6)?)
}

fn cross(a: &[C], b: &[C]) -> CVec {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// The third intersection p′ of the tangent line at p with the plane cubic.
///
/// With w ≠ p on the tangent line, c(s·p + t·w) = t²(3s·T(p,w,w) + t·c(w)),
/// so p′ = c(w)·p − (∇c(w)·p)·w. It equals p exactly when p is a flex.
pub fn tangent_residual(p: &[C]) -> Result<CVec, FermatError> {
    let grad: CVec = p.iter().map(|x| x * x * 3.0).collect();
    let conj: CVec = p.iter().map(|x| x.conj()).collect();
    let w = cross(&grad, &conj);
    let gw: CVec = w.iter().map(|x| x * x * 3.0).collect();
    let a = dot(&gw, p);
    if a.norm() <= 1e-10 * norm(&gw) * norm(p) {
        return Err(FermatError::FlexPoint);
    }
    let b = cube_sum(&w);
    Ok(normalize(&p.iter().zip(&w).map(|(pi, wi)| pi * b - wi * a).collect::<CVec>()))
}

/// For the ruling span(p, q) of a join, p and q given in block coordinates,
/// the line through their tangent residuals.
pub fn adjoint_line(c: &FermatComponent, p: &[C], q: &[C]) -> Result<NumLine, FermatError> {
    let (first, second) = c.blocks();
    if first.len() != 3 {
        return Err(FermatError::ParamsOffCurve);
    }
    let pp = embed(ZERO, N_VARS, &first, &tangent_residual(p)?);
    let qq = embed(ZERO, N_VARS, &second, &tangent_residual(q)?);
    Ok(NumLine::through(&pp, &qq).expect("disjoint supports"))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentCount {
    pub component: FermatComponent,
    pub tangents_first: usize,
    pub tangents_second: usize,
    pub lines: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Count360 {
    #[serde(skip)]
    pub lines: Vec<NumLine>,
    pub count: usize,
    pub per_component: Vec<ComponentCount>,
    /// Lines on cone-piece spans through the point.
    pub cone_piece_lines: usize,
    pub first_type: usize,
    pub max_containment_residual: f64,
    pub max_point_distance: f64,
    pub max_tangency_residual: f64,
}

/// Guards against points on the loci where the construction degenerates.
fn check_general(p: &[C], tol: f64) -> Result<(), FermatError> {
    let scale = norm(p).powi(3);
    for c in FermatComponent::all() {
        let (first, _) = c.blocks();
        let part: Vec<C> = first.iter().map(|&i| p[i]).collect();
        if cube_sum(&part).norm() < tol * scale {
            return Err(FermatError::NonGenericPoint(format!("on the locus of {c:?}")));
        }
    }
    Ok(())
}

fn cone_piece_lines_through(p: &[C], tol: f64) -> usize {
    let mut count = 0;
    for i in 0..N_VARS {
        for j in i + 1..N_VARS {
            for mu in 1..=3 {
                if (p[j] - p[i] * rho(mu).to_complex()).norm() < tol * norm(p) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Lines through p residual to rulings of the ten joins: for every pair of
/// tangent lines from the block projections of p to the two curves, the
/// ruling ℓ through the tangency points and the plane Π = ⟨ℓ, p⟩ give
/// X ∩ Π = 2ℓ + ℓ′ with p ∈ ℓ′.
pub fn count_360(p: &[C], seed: u64, dedup_tol: f64) -> Result<Count360, FermatError> {
    let f = CubicForm::from_poly(&fermat_form(4));
    let p = normalize(p);
    if f.eval(&p).norm() > 1e-10 {
        return Err(FermatError::NonGenericPoint("not on the cubic".into()));
    }
    check_general(&p, 1e-8)?;
    let joins: Vec<FermatComponent> =
        FermatComponent::all().into_iter().filter(|c| matches!(c, FermatComponent::JoinOfCurves { .. })).collect();
    type PerJoin = Result<(ComponentCount, Vec<(NumLine, f64)>), FermatError>;
    let per: Vec<PerJoin> = joins
        .par_iter()
        .enumerate()
        .map(|(k, c)| {
            let (first, second) = c.blocks();
            let x: CVec = first.iter().map(|&i| p[i]).collect();
            let y: CVec = second.iter().map(|&i| p[i]).collect();
            let ts = tangent_lines_from(&x, seed.wrapping_add(2 * k as u64))?;
            let us = tangent_lines_from(&y, seed.wrapping_add(2 * k as u64 + 1))?;
            if ts.iter().chain(&us).any(|t| t.multiplicity > 1) {
                return Err(FermatError::NonGenericPoint("tangent points collide".into()));
            }
            let mut lines = Vec::with_capacity(36);
            for t in &ts {
                for u in &us {
                    let a = embed(ZERO, N_VARS, &first, &t.point);
                    let b = embed(ZERO, N_VARS, &second, &u.point);
                    let ruling = NumLine::through(&a, &b).expect("disjoint supports");
                    let res = ruling.voisin_residual(&f, &p)?;
                    lines.push((res.line, res.tangency));
                }
            }
            let distinct = dedup_lines(lines.iter().map(|(l, _)| l.clone()).collect(), dedup_tol).len();
            let cc = ComponentCount { component: *c, tangents_first: ts.len(), tangents_second: us.len(), lines: distinct };
            Ok((cc, lines))
        })
        .collect();
    let mut per_component = Vec::new();
    let mut all = Vec::new();
    let mut max_tangency: f64 = 0.0;
    for r in per {
        let (cc, lines) = r?;
        per_component.push(cc);
        for (l, tang) in lines {
            max_tangency = max_tangency.max(tang);
            all.push(l);
        }
    }
    let lines = dedup_lines(all, dedup_tol);
    let max_containment = lines.iter().map(|l| l.containment_residual(&f)).fold(0.0, f64::max);
    let max_point = lines.iter().map(|l| l.point_distance(&p)).fold(0.0, f64::max);
    let first_type = lines.iter().filter(|l| l.numeric_type(&f) == Ok(LineType::First)).count();
    Ok(Count360 {
        count: lines.len(),
        per_component,
        cone_piece_lines: cone_piece_lines_through(&p, 1e-8),
        first_type,
        max_containment_residual: max_containment,
        max_point_distance: max_point,
        max_tangency_residual: max_tangency,
        lines,
    })
}

/// Largest |Σ eᵢ tᵢ² | over the tangency points, i.e. how far e is from
/// each tangent line.
pub fn tangency_defect(e: &[C], pts: &[PlanePoint]) -> f64 {
    pts.iter().map(|t| dot(&t.point.iter().map(|x| x * x).collect::<CVec>(), e).norm()).fold(0.0, f64::max) / max_abs(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::fermat_point_numeric;
    use crate::numeric::linalg::{singular_values, to_matrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(v: &[f64]) -> CVec {
        v.iter().map(|&x| C::new(x, 0.0)).collect()
    }

    #[test]
    fn six_tangents_from_a_general_point() {
        let e = c(&[2.0, -1.0, 3.0]);
        let pts = tangent_lines_from(&e, 0).unwrap();
        assert_eq!(pts.len(), 6);
        for t in &pts {
            assert_eq!(t.multiplicity, 1);
            assert!(cube_sum(&t.point).norm() < 1e-12);
            // the line span(e, t) meets C doubly at t
            let l = NumLine::through(&e, &t.point).unwrap();
            let g: CVec = t.point.iter().map(|x| x * x).collect();
            assert!(dot(&g, &l.p).norm() < 1e-10 && dot(&g, &l.q).norm() < 1e-10);
        }
        assert!(tangency_defect(&e, &pts) < 1e-10);
    }

    #[test]
    fn point_on_a_flex_tangent_sees_a_double_tangency() {
        // the tangent at the flex [1 : −1 : 0] is x₀ + x₁ = 0
        let pts = tangent_lines_from(&c(&[1.0, -1.0, 2.0]), 3).unwrap();
        assert_eq!(pts.iter().map(|t| t.multiplicity).sum::<usize>(), 6);
        let flex = c(&[1.0, -1.0, 0.0]);
        let at_flex = pts.iter().find(|t| crate::numeric::linalg::projective_distance(&t.point, &flex) < 1e-6).unwrap();
        assert_eq!(at_flex.multiplicity, 2);
    }

    #[test]
    fn point_on_curve_is_rejected() {
        assert_eq!(tangent_lines_from(&c(&[1.0, -1.0, 0.0]), 0).unwrap_err(), FermatError::PointOnCurve);
    }

    #[test]
    fn flex_has_no_adjoint() {
        let comp = FermatComponent::JoinOfCurves { i: 0, j: 1, k: 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let q = fermat_point_numeric(&mut rng, 3);
        assert_eq!(adjoint_line(&comp, &c(&[1.0, -1.0, 0.0]), &q).unwrap_err(), FermatError::FlexPoint);
    }

    #[test]
    fn adjoint_is_a_skew_ruling() {
        let f = CubicForm::from_poly(&fermat_form(4));
        let comp = FermatComponent::JoinOfCurves { i: 0, j: 1, k: 2 };
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let p = fermat_point_numeric(&mut rng, 3);
            let q = fermat_point_numeric(&mut rng, 3);
            let adj = adjoint_line(&comp, &p, &q).unwrap();
            assert!(adj.containment_residual(&f) < 1e-10);
            assert_eq!(adj.numeric_type(&f).unwrap(), LineType::Second);
            let l = NumLine::through(&embed(ZERO, 6, &[0, 1, 2], &p), &embed(ZERO, 6, &[3, 4, 5], &q)).unwrap();
            let s = singular_values(&to_matrix(&[l.p.clone(), l.q.clone(), adj.p.clone(), adj.q.clone()]));
            assert!(s[3] > 1e-6, "adjoint meets the ruling");
        }
    }

    #[test]
    fn three_hundred_sixty_lines() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = fermat_point_numeric(&mut rng, 6);
        let r = count_360(&p, 1, 1e-6).unwrap();
        assert_eq!(r.count, 360);
        assert!(r.per_component.iter().all(|c| c.lines == 36));
        assert_eq!(r.cone_piece_lines, 0);
        assert_eq!(r.first_type, 360);
        assert!(r.max_containment_residual < 1e-8);
        assert!(r.max_point_distance < 1e-8);
    }
}
