//! The 55 components of the second-type locus of the Fermat fourfold.
//!
//! S_{i,j,k} is the family of rulings of Join(C, C′) where C and C′ are the
//! Fermat plane cubics on the coordinate planes of {i,j,k} and its
//! complement. S⁽μ⁾ᵢⱼ is the family of lines joining the Eckardt point
//! p⁽μ⁾ᵢⱼ to the Fermat surface G_{i,j} on the complementary coordinates.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{embed, fermat_point_exact, fermat_point_numeric, random_rational, EckardtPoint, FermatError};
use crate::algebra::{CubicExt, ExactField, Field, FieldElem, Poly};
use crate::geometry::{line_type, GeometryError, Line, LineType};
use crate::numeric::lines::NumLine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FermatComponent {
    JoinOfCurves { i: usize, j: usize, k: usize },
    ConePiece { i: usize, j: usize, mu: u8 },
}

const N_VARS: usize = 6;

fn complement(idx: &[usize]) -> Vec<usize> {
    (0..N_VARS).filter(|v| !idx.contains(v)).collect()
}

impl FermatComponent {
    /// The 10 joins (the block containing 0 listed first) followed by the
    /// 45 cone pieces.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(55);
        for j in 1..N_VARS {
            for k in j + 1..N_VARS {
                out.push(Self::JoinOfCurves { i: 0, j, k });
            }
        }
        for i in 0..N_VARS {
            for j in i + 1..N_VARS {
                for mu in 1..=3 {
                    out.push(Self::ConePiece { i, j, mu });
                }
            }
        }
        out
    }

    /// For a join, the two coordinate blocks; for a cone piece, the vertex
    /// block {i, j} and the four coordinates of G_{i,j}.
    pub fn blocks(&self) -> (Vec<usize>, Vec<usize>) {
        let first = match *self {
            Self::JoinOfCurves { i, j, k } => vec![i, j, k],
            Self::ConePiece { i, j, .. } => vec![i, j],
        };
        let second = complement(&first);
        (first, second)
    }

    pub fn vertex(&self) -> Option<EckardtPoint> {
        match *self {
            Self::ConePiece { i, j, mu } => Some(EckardtPoint::new(N_VARS, i, j, mu)),
            Self::JoinOfCurves { .. } => None,
        }
    }
}

/// Points determining a ruling: p ∈ C and q ∈ C′ in block coordinates for a
/// join, or g ∈ G_{i,j} in its four coordinates for a cone piece.
#[derive(Clone, Debug, PartialEq)]
pub enum RulingParams<F> {
    Join { p: Vec<F>, q: Vec<F> },
    Cone { g: Vec<F> },
}

fn cube_sum<F: Field>(v: &[F]) -> F {
    v.iter().fold(F::zero(), |acc, x| acc + x.pow(3))
}

fn on_fermat<F: ExactField>(v: &[F], len: usize) -> bool {
    v.len() == len && cube_sum(v).is_zero() && v.iter().any(|x| !x.is_zero())
}

pub fn ruling_line<F: ExactField + From<FieldElem>>(c: &FermatComponent, params: &RulingParams<F>) -> Result<Line<F>, FermatError> {
    let (first, second) = c.blocks();
    let (a, b) = match (c, params) {
        (FermatComponent::JoinOfCurves { .. }, RulingParams::Join { p, q }) => {
            if !on_fermat(p, 3) || !on_fermat(q, 3) {
                return Err(FermatError::ParamsOffCurve);
            }
            (embed(F::zero(), N_VARS, &first, p), embed(F::zero(), N_VARS, &second, q))
        }
        (FermatComponent::ConePiece { .. }, RulingParams::Cone { g }) => {
            if !on_fermat(g, 4) {
                return Err(FermatError::ParamsOffCurve);
            }
            let v = c.vertex().expect("cone pieces have a vertex").point.into_iter().map(F::from).collect();
            (v, embed(F::zero(), N_VARS, &second, g))
        }
        _ => return Err(FermatError::ParamsOffCurve),
    };
    Ok(Line::new(a, b)?)
}

/// A ruling with exact coordinates in some Q(ω)(∛d). For a join, p = [1:u:α]
/// and q is a coordinate permutation of p times cube roots of unity; for a
/// cone piece, g = [1:u:w:α]. u, w are random small rationals.
pub fn sample_ruling_exact<R: Rng + ?Sized>(c: &FermatComponent, rng: &mut R) -> Result<Line<CubicExt>, FermatError> {
    let params = match c {
        FermatComponent::JoinOfCurves { .. } => {
            let p = fermat_point_exact(&[FieldElem::one(), random_rational(rng)]);
            let mut perm = [0usize, 1, 2];
            perm.shuffle(rng);
            let units = FieldElem::cube_roots_of_unity();
            let q = perm
                .iter()
                .map(|&k| p[k].clone() * CubicExt::base(units[rng.random_range(0..3)].clone()))
                .collect();
            RulingParams::Join { p, q }
        }
        FermatComponent::ConePiece { .. } => {
            RulingParams::Cone { g: fermat_point_exact(&[FieldElem::one(), random_rational(rng), random_rational(rng)]) }
        }
    };
    ruling_line(c, &params)
}

/// A ruling through random complex points of the curves (or surface).
pub fn sample_ruling_numeric<R: Rng + ?Sized>(c: &FermatComponent, rng: &mut R) -> NumLine {
    let (first, second) = c.blocks();
    let zero = crate::numeric::linalg::ZERO;
    let (a, b) = match c {
        FermatComponent::JoinOfCurves { .. } => (
            embed(zero, N_VARS, &first, &fermat_point_numeric(rng, 3)),
            embed(zero, N_VARS, &second, &fermat_point_numeric(rng, 3)),
        ),
        FermatComponent::ConePiece { .. } => {
            (c.vertex().unwrap().to_complex(), embed(zero, N_VARS, &second, &fermat_point_numeric(rng, 4)))
        }
    };
    NumLine::through(&a, &b).expect("disjoint supports")
}

/// The Fermat form with coefficients in an extension field.
pub fn fermat_form_in<F: ExactField + From<FieldElem>>(n: usize) -> Poly<F> {
    super::fermat_form(n).map_coeffs(|c| F::from(c.clone()))
}

/// The line through x and its antipode x′ (x with the coordinates in
/// `block` negated). For x on X with Σ_block xᵢ³ = 0 this is a second-type
/// line meeting the two block coordinate spaces.
pub fn second_type_line_through<F: ExactField>(x: &[F], block: &[usize]) -> Result<Line<F>, FermatError> {
    let in_block: Vec<F> = block.iter().map(|&i| x[i].clone()).collect();
    let total = cube_sum(x);
    if !cube_sum(&in_block).is_zero() || !total.is_zero() {
        return Err(FermatError::ParamsOffCurve);
    }
    let mut xp = x.to_vec();
    for &i in block {
        xp[i] = -xp[i].clone();
    }
    Line::new(x.to_vec(), xp).map_err(|e| match e {
        GeometryError::DegenerateLine => FermatError::DegeneratePoint,
        other => other.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentCensus {
    pub components: usize,
    pub joins: usize,
    pub cone_pieces: usize,
    pub samples_per_component: usize,
    /// Sampled rulings classified Second by the exact rank test.
    pub second_type: usize,
    /// Components with a sampled ruling not of second type.
    pub failures: Vec<FermatComponent>,
}

impl ComponentCensus {
    pub fn all_second_type(&self) -> bool {
        self.failures.is_empty() && self.second_type == self.components * self.samples_per_component
    }
}

/// Builds all 55 components and types `samples` exact rulings of each.
/// Component k draws from its own stream of the seeded generator.
pub fn component_census(samples: usize, seed: u64) -> Result<ComponentCensus, FermatError> {
    let all = FermatComponent::all();
    let f = fermat_form_in::<CubicExt>(4);
    let per: Vec<Result<usize, FermatError>> = all
        .par_iter()
        .enumerate()
        .map(|(k, c)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64 + 1);
            let mut second = 0;
            for _ in 0..samples {
                let l = sample_ruling_exact(c, &mut rng)?;
                if line_type(&f, &l)? == LineType::Second {
                    second += 1;
                }
            }
            Ok(second)
        })
        .collect();
    let mut out = ComponentCensus {
        components: all.len(),
        joins: all.iter().filter(|c| matches!(c, FermatComponent::JoinOfCurves { .. })).count(),
        cone_pieces: all.iter().filter(|c| matches!(c, FermatComponent::ConePiece { .. })).count(),
        samples_per_component: samples,
        second_type: 0,
        failures: Vec::new(),
    };
    for (c, r) in all.iter().zip(per) {
        let second = r?;
        out.second_type += second;
        if second != samples {
            out.failures.push(*c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{gauss_ramification, RamificationPoints};

    fn fe(v: &[i64]) -> Vec<FieldElem> {
        v.iter().map(|&a| FieldElem::from_ints(a, 0)).collect()
    }

    #[test]
    fn census_has_ten_joins_and_forty_five_cones() {
        let all = FermatComponent::all();
        assert_eq!(all.len(), 55);
        assert_eq!(all.iter().filter(|c| matches!(c, FermatComponent::JoinOfCurves { .. })).count(), 10);
        assert_eq!(all.iter().filter(|c| matches!(c, FermatComponent::ConePiece { .. })).count(), 45);
    }

    #[test]
    fn block_ruling_is_second_type() {
        let f = super::super::fermat_form(4);
        let c = FermatComponent::JoinOfCurves { i: 0, j: 1, k: 2 };
        let l = ruling_line(&c, &RulingParams::Join { p: fe(&[1, -1, 0]), q: fe(&[1, -1, 0]) }).unwrap();
        assert_eq!(l, Line::new(fe(&[1, -1, 0, 0, 0, 0]), fe(&[0, 0, 0, 1, -1, 0])).unwrap());
        assert_eq!(line_type(&f, &l).unwrap(), LineType::Second);
        let cone = FermatComponent::ConePiece { i: 4, j: 5, mu: 1 };
        let l = ruling_line(&cone, &RulingParams::Cone { g: fe(&[0, 0, 1, -1]) }).unwrap();
        assert!(l.contains_point(&fe(&[0, 0, 0, 0, 1, -1])));
        assert_eq!(line_type(&f, &l).unwrap(), LineType::Second);
    }

    #[test]
    fn census_types_every_sample() {
        let r = component_census(2, 3).unwrap();
        assert_eq!((r.components, r.joins, r.cone_pieces), (55, 10, 45));
        assert!(r.all_second_type());
        assert_eq!(r, component_census(2, 3).unwrap());
    }

    #[test]
    fn off_curve_parameters_are_rejected() {
        let c = FermatComponent::JoinOfCurves { i: 0, j: 1, k: 2 };
        let r = ruling_line(&c, &RulingParams::Join { p: fe(&[1, 1, 0]), q: fe(&[1, -1, 0]) });
        assert_eq!(r.unwrap_err(), FermatError::ParamsOffCurve);
    }

    #[test]
    fn sampled_exact_rulings_are_second_type() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = fermat_form_in::<CubicExt>(4);
        for c in [FermatComponent::JoinOfCurves { i: 0, j: 2, k: 5 }, FermatComponent::ConePiece { i: 1, j: 3, mu: 2 }] {
            for _ in 0..5 {
                let l = sample_ruling_exact(&c, &mut rng).unwrap();
                assert_eq!(line_type(&f, &l).unwrap(), LineType::Second);
            }
        }
    }

    #[test]
    fn antipodal_line_ramifies_at_block_projections() {
        let f = super::super::fermat_form(4);
        let x = fe(&[1, -1, 0, 1, 0, -1]);
        let l = second_type_line_through(&x, &[0, 1, 2]).unwrap();
        assert_eq!(line_type(&f, &l).unwrap(), LineType::Second);
        match gauss_ramification(&f, &l).unwrap() {
            RamificationPoints::Exact(pts) => {
                let want = [fe(&[1, -1, 0, 0, 0, 0]), fe(&[0, 0, 0, 1, 0, -1])];
                for w in &want {
                    assert!(pts.iter().any(|p| Line::new(p.clone(), w.clone()).is_err()), "missing {w:?}");
                }
            }
            other => panic!("expected exact ramification points, got {other:?}"),
        }
        let degenerate = fe(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(second_type_line_through(&degenerate, &[0, 1, 2]).unwrap_err(), FermatError::DegeneratePoint);
    }
}
