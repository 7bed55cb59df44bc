//! The thirty cones of the Fermat threefold and degree bookkeeping.
//!
//! The hyperplane xⱼ = ρxᵢ cuts the Fermat threefold in the cone with
//! vertex p⁽μ⁾ᵢⱼ over the Fermat plane cubic on the remaining coordinates.
//! Every ruling of such a cone is of second type.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{eckardt_points, embed, fermat_form, fermat_point_exact, fermat_point_numeric, random_rational, EckardtPoint, FermatError};
use crate::algebra::{CubicExt, Field, FieldElem, Matrix, MultiPoly};
use crate::geometry::Line;
use crate::numeric::cubic::CubicForm;
use crate::numeric::linalg::{null_space, random_vector, to_matrix, CVec, C, ZERO};
use crate::numeric::lines::{solve_lines_through_point, FiberOptions, NumLine};
use crate::numeric::newton::Multiplicity;
use crate::numeric::roots::{binary_roots, cluster_roots};
use crate::numeric::ternary::solve_ternary;
use crate::geometry::LineType;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    pub vertex: EckardtPoint,
    /// The three coordinates of the base plane cubic.
    pub base: [usize; 3],
}

pub fn threefold_cones() -> Vec<Cone> {
    eckardt_points(3)
        .into_iter()
        .map(|v| {
            let rest: Vec<usize> = (0..5).filter(|&k| k != v.i && k != v.j).collect();
            Cone { base: [rest[0], rest[1], rest[2]], vertex: v }
        })
        .collect()
}

impl Cone {
    /// Whether the vertex and the base plane span the hyperplane xⱼ = ρxᵢ
    /// and the cubic restricted to it is the base cubic, so the hyperplane
    /// section is exactly this cone.
    pub fn is_hyperplane_section(&self) -> bool {
        let mut rows = vec![self.vertex.point.clone()];
        for &b in &self.base {
            rows.push(crate::algebra::matrix::unit_vector(5, b));
        }
        let h = self.vertex.hyperplane();
        let in_h = rows.iter().all(|r| r.iter().zip(&h).fold(FieldElem::from_i64(0), |acc, (a, b)| acc + a.clone() * b.clone()).is_zero());
        let restricted = fermat_form(3).restrict(&rows).expect("five coordinates");
        in_h && Matrix::from_rows(rows).rank() == 4 && restricted == MultiPoly::sum_of_cubes(4, &[1, 2, 3])
    }

    /// The exact ruling through the vertex and [1 : u : α] on the base.
    pub fn ruling_exact<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Line<CubicExt>, FermatError> {
        let g = fermat_point_exact(&[FieldElem::from_i64(1), random_rational(rng)]);
        let v: Vec<CubicExt> = self.vertex.point.iter().cloned().map(CubicExt::base).collect();
        Ok(Line::new(v, embed(CubicExt::base(FieldElem::from_i64(0)), 5, &self.base, &g))?)
    }

    /// A random point of the cone away from the vertex, and the base point
    /// of its ruling.
    pub fn point_numeric<R: Rng + ?Sized>(&self, rng: &mut R) -> (CVec, CVec) {
        let g = embed(ZERO, 5, &self.base, &fermat_point_numeric(rng, 3));
        let s = crate::numeric::linalg::random_complex(rng);
        let v = self.vertex.to_complex();
        let x = v.iter().zip(&g).map(|(a, b)| a * s + b).collect();
        (x, g)
    }

    /// Number of points cut on the cone by a random plane of P⁴ (the
    /// hyperplane meets the plane in a line, which meets the cubic in three
    /// points).
    pub fn degree_numeric<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let plane: Vec<CVec> = (0..3).map(|_| random_vector(rng, 5)).collect();
        let h: CVec = self.vertex.hyperplane().iter().map(|x| x.to_complex()).collect();
        // coefficients c with Σ cₐ·planeₐ in the hyperplane
        let hrow: CVec = plane.iter().map(|p| crate::numeric::linalg::dot(&h, p)).collect();
        let ker = null_space(&to_matrix(&[hrow]), 1e-12);
        let pts: Vec<CVec> = ker.iter().map(|k| (0..5).map(|i| (0..3).map(|a| k[a] * plane[a][i]).sum()).collect()).collect();
        let l = NumLine::through(&pts[0], &pts[1]).expect("generic plane");
        let f = CubicForm::from_poly(&fermat_form(3));
        let coeffs = l.restrict_cubic(&f);
        binary_roots(&coeffs).len()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeReport {
    /// (defining blocks, Bézout degree, points on a random plane)
    pub joins: Vec<(Vec<usize>, usize, usize)>,
    pub cone_pairs: Vec<(Vec<usize>, usize, usize)>,
    pub fourfold_total: usize,
    pub cone_degrees: Vec<usize>,
    pub threefold_total: usize,
}

/// Number of points, with multiplicity, cut by a random plane of P⁵ on
/// V(a, b) for two cubics.
fn plane_section_count<R: Rng + ?Sized>(a: &MultiPoly, b: &MultiPoly, rng: &mut R, seed: u64) -> Result<usize, FermatError> {
    let plane: Vec<CVec> = (0..3).map(|_| random_vector(rng, 6)).collect();
    let (ac, bc) = (a.to_complex(), b.to_complex());
    let ra = ac.restrict(&plane).expect("six coordinates");
    let rb = bc.restrict(&plane).expect("six coordinates");
    Ok(solve_ternary(&ra, &rb, seed, 1e-6)?.iter().map(|p| p.multiplicity).sum())
}

/// Degrees of V_{i,j,k} = V(Σ_{i,j,k} xₗ³, Σ_rest xₗ³) and
/// V_{i,j} = V(xᵢ³ + xⱼ³, Σ_rest xₗ³) in the fourfold, and of the thirty
/// cones in the threefold. Each fourfold locus is a complete intersection of
/// two cubics in disjoint variables, so its Bézout degree is 9; the plane
/// section count checks this independently.
pub fn degree_bookkeeping<R: Rng + ?Sized>(rng: &mut R) -> Result<DegreeReport, FermatError> {
    let mut joins = Vec::new();
    let mut cone_pairs = Vec::new();
    for (k, c) in super::FermatComponent::all().iter().enumerate() {
        let (first, second) = c.blocks();
        if first.len() == 3 || (first.len() == 2 && c.vertex().map(|v| v.mu) == Some(1)) {
            let a = MultiPoly::sum_of_cubes(6, &first);
            let b = MultiPoly::sum_of_cubes(6, &second);
            let bezout = (a.homogeneous_degree().unwrap() * b.homogeneous_degree().unwrap()) as usize;
            let count = plane_section_count(&a, &b, rng, k as u64)?;
            if first.len() == 3 {
                joins.push((first, bezout, count));
            } else {
                cone_pairs.push((first, bezout, count));
            }
        }
    }
    let cone_degrees: Vec<usize> = threefold_cones().iter().map(|c| c.degree_numeric(rng)).collect();
    Ok(DegreeReport {
        fourfold_total: joins.iter().chain(&cone_pairs).map(|j| j.2).sum(),
        threefold_total: cone_degrees.iter().sum(),
        joins,
        cone_pairs,
        cone_degrees,
    })
}

/// Fiber of the lines through a random point of a cone.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeFiber {
    pub distinct: usize,
    pub total: usize,
    pub doubled_second_type: usize,
    pub doubled_is_ruling: bool,
    pub simple_first_type: usize,
}

pub fn cone_point_fiber<R: Rng + ?Sized>(cone: &Cone, rng: &mut R, seed: u64) -> Result<ConeFiber, FermatError> {
    let f = CubicForm::from_poly(&fermat_form(3));
    let (x, _) = cone.point_numeric(rng);
    let sols = solve_lines_through_point(&f, &x, seed, &FiberOptions::default())?;
    let v = cone.vertex.to_complex();
    let mut out = ConeFiber { distinct: sols.len(), total: 0, doubled_second_type: 0, doubled_is_ruling: false, simple_first_type: 0 };
    for s in &sols {
        let ty = s.line.numeric_type(&f)?;
        match s.multiplicity {
            Multiplicity::Simple => {
                out.total += 1;
                if ty == LineType::First {
                    out.simple_first_type += 1;
                }
            }
            Multiplicity::Cluster(m) => {
                out.total += m;
                if m == 2 && ty == LineType::Second {
                    out.doubled_second_type += 1;
                    out.doubled_is_ruling = s.line.point_distance(&v) < 1e-8;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeCensus {
    pub cones: usize,
    pub hyperplane_sections: usize,
    pub samples_per_cone: usize,
    pub second_type_rulings: usize,
}

/// The 30 cones, each checked to be a hyperplane section, with `samples`
/// exact rulings of each typed.
pub fn cone_census<R: Rng + ?Sized>(samples: usize, rng: &mut R) -> Result<ConeCensus, FermatError> {
    let f = crate::fermat::components::fermat_form_in::<CubicExt>(3);
    let cones = threefold_cones();
    let mut out = ConeCensus { cones: cones.len(), hyperplane_sections: 0, samples_per_cone: samples, second_type_rulings: 0 };
    for c in &cones {
        out.hyperplane_sections += c.is_hyperplane_section() as usize;
        for _ in 0..samples {
            if crate::geometry::line_type(&f, &c.ruling_exact(rng)?)? == LineType::Second {
                out.second_type_rulings += 1;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpotCheck {
    /// Number of lines (with multiplicity, all simple) through random points.
    pub generic_counts: Vec<usize>,
    pub generic_simple: usize,
    pub cone_fibers: Vec<ConeFiber>,
}

impl SpotCheck {
    /// Six simple lines over every random point, and over every cone point
    /// five distinct lines: the doubled ruling of second type and four
    /// simple lines of first type.
    pub fn passes(&self) -> bool {
        self.generic_counts.iter().all(|&c| c == 6)
            && self.generic_simple == self.generic_counts.len()
            && self.cone_fibers.iter().all(|f| {
                f.distinct == 5 && f.total == 6 && f.doubled_second_type == 1 && f.doubled_is_ruling && f.simple_first_type == 4
            })
    }
}

/// Lines through `points` random points of the Fermat threefold and through
/// `points` random points of the cones (cycling through the thirty).
pub fn birational_spotcheck<R: Rng + ?Sized>(points: usize, rng: &mut R, seed: u64) -> Result<SpotCheck, FermatError> {
    let f = CubicForm::from_poly(&fermat_form(3));
    let mut out = SpotCheck { generic_counts: Vec::new(), generic_simple: 0, cone_fibers: Vec::new() };
    for k in 0..points {
        let x = fermat_point_numeric(rng, 5);
        let sols = solve_lines_through_point(&f, &x, seed.wrapping_add(k as u64), &FiberOptions::default())?;
        let total = sols
            .iter()
            .map(|s| match s.multiplicity {
                Multiplicity::Simple => 1,
                Multiplicity::Cluster(m) => m,
            })
            .sum();
        out.generic_counts.push(total);
        out.generic_simple += sols.iter().all(|s| s.multiplicity == Multiplicity::Simple) as usize;
    }
    let cones = threefold_cones();
    for k in 0..points {
        out.cone_fibers.push(cone_point_fiber(&cones[k % cones.len()], rng, seed.wrapping_add((points + k) as u64))?);
    }
    Ok(out)
}

/// Multiplicities of the roots of a binary cubic, for diagnostics.
pub fn binary_multiplicities(coeffs: &[C; 4]) -> Vec<usize> {
    let t: Vec<C> = coeffs.to_vec();
    let roots: Vec<C> = binary_roots(&t).iter().filter(|r| r[0].norm() > 0.0).map(|r| r[1] / r[0]).collect();
    cluster_roots(&t, &roots, 1e-6).iter().map(|c| c.multiplicity).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::components::fermat_form_in;
    use crate::geometry::line_type;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn thirty_cones_with_second_type_rulings() {
        let cones = threefold_cones();
        assert_eq!(cones.len(), 30);
        let f = fermat_form_in::<CubicExt>(3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for c in &cones {
            assert!(c.is_hyperplane_section());
            let l = c.ruling_exact(&mut rng).unwrap();
            assert_eq!(line_type(&f, &l).unwrap(), LineType::Second);
        }
        let v = &cones[0].vertex;
        assert_eq!(v.point, vec![FieldElem::one(), -FieldElem::one(), FieldElem::zero(), FieldElem::zero(), FieldElem::zero()]);
    }

    #[test]
    fn cone_census_and_spotcheck() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = cone_census(2, &mut rng).unwrap();
        assert_eq!((c.cones, c.hyperplane_sections, c.second_type_rulings), (30, 30, 60));
        let s = birational_spotcheck(3, &mut rng, 11).unwrap();
        assert!(s.passes(), "{s:?}");
    }

    #[test]
    fn degrees_add_up() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let r = degree_bookkeeping(&mut rng).unwrap();
        assert_eq!(r.joins.len(), 10);
        assert_eq!(r.cone_pairs.len(), 15);
        assert!(r.joins.iter().chain(&r.cone_pairs).all(|j| j.1 == 9 && j.2 == 9));
        assert_eq!(r.fourfold_total, 225);
        assert!(r.cone_degrees.iter().all(|&d| d == 3));
        assert_eq!(r.threefold_total, 90);
    }

    #[test]
    fn cone_point_lies_on_one_doubled_second_type_line() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let cone = &threefold_cones()[7];
        let fib = cone_point_fiber(cone, &mut rng, 2).unwrap();
        assert_eq!(fib.distinct, 5);
        assert_eq!(fib.total, 6);
        assert_eq!(fib.doubled_second_type, 1);
        assert!(fib.doubled_is_ruling);
        assert_eq!(fib.simple_first_type, 4);
    }
}
