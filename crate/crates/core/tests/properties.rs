use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fano_core::fermat::components::{fermat_form_in, sample_ruling_exact};
use fano_core::fermat::FermatComponent;
use fano_core::geometry::{contains_line, tangent_spans, voisin_residual, GeometryError, Line, Plane};
use fano_core::monodromy::experiments::random_point_on;
use fano_core::numeric::family::{FiberFamily, LineFamily};
use fano_core::numeric::linalg::{add, norm, random_vector, sub, C};
use fano_core::numeric::newton::jacobian_error;
use fano_core::{CubicExt, CubicForm, Field, FieldElem, NumLine};

fn embed_rows(rows: &[Vec<CubicExt>]) -> Vec<Vec<C>> {
    rows.iter().map(|r| r.iter().map(CubicExt::to_complex).collect()).collect()
}

fn elem() -> impl Strategy<Value = FieldElem> {
    (-50i64..=50, 1i64..=20, -50i64..=50, 1i64..=20)
        .prop_map(|(a, p, b, q)| FieldElem::frac(a, p) + FieldElem::frac(b, q) * FieldElem::omega())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms(x in elem(), y in elem(), z in elem()) {
        let (zero, one) = (FieldElem::zero(), FieldElem::one());
        prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!(x.clone() + zero.clone(), x.clone());
        prop_assert_eq!(x.clone() * one.clone(), x.clone());
        prop_assert_eq!(x.clone() + (-x.clone()), zero.clone());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() * x.checked_inv().unwrap(), one);
        }
        // the norm is multiplicative and conjugation is a field automorphism
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
        prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobians_match_finite_differences(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = CubicForm::random(&mut rng, 5);
        let x = random_point_on(&f, &mut rng);
        let (fam, params) = LineFamily::on_cubic(f, &x, &mut rng);
        let z = random_vector(&mut rng, fam.unknowns());
        let err = jacobian_error(&fam.at(&params), &z, 1e-6);
        prop_assert!(err < 1e-6, "relative error {err}");
        // derivative along a parameter segment
        let to = add(&params, &random_vector(&mut rng, params.len()));
        let seg = fam.segment(&params, &to);
        let h = 1e-6;
        let fd: Vec<C> = sub(&seg.eval(&z, 0.4 + h), &seg.eval(&z, 0.4 - h)).iter().map(|v| v / (2.0 * h)).collect();
        let rel = norm(&sub(&fd, &seg.jac_t(&z, 0.4))) / norm(&fd).max(1.0);
        prop_assert!(rel < 1e-6, "relative error {rel}");
    }

    #[test]
    fn tangent_spans_and_residuals_agree(k in 0usize..55, seed in any::<u64>(), a in -9i64..=9, b in -9i64..=9) {
        prop_assume!(a != 0 || b != 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = FermatComponent::all()[k];
        let f = fermat_form_in::<CubicExt>(4);
        let l = sample_ruling_exact(&c, &mut rng).unwrap();
        let spans = tangent_spans(&f, &l).unwrap();
        // second-type lines on a fourfold have a pencil of tangent planes
        prop_assert_eq!(spans.quotient_dim, 2);
        let (a, b) = (CubicExt::base(FieldElem::from_i64(a)), CubicExt::base(FieldElem::from_i64(b)));
        let d: Vec<CubicExt> = spans.directions[0].iter().zip(&spans.directions[1]).map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone()).collect();
        let plane = Plane::spanned_by(&l, d.clone()).unwrap();
        let r = match voisin_residual(&f, &l, &plane) {
            Err(GeometryError::PlaneInCubic) => {
                // a plane cubic containing four distinct lines vanishes
                let p = plane.rows();
                let mid: Vec<CubicExt> = p[0].iter().zip(&p[1]).map(|(x, y)| x.clone() + y.clone()).collect();
                for (u, v) in [(&p[0], &p[1]), (&p[0], &p[2]), (&p[1], &p[2]), (&mid, &p[2])] {
                    prop_assert!(contains_line(&f, &Line::new(u.clone(), v.clone()).unwrap()).unwrap());
                }
                return Ok(());
            }
            other => other.unwrap(),
        };
        prop_assert!(contains_line(&f, &r.line).unwrap());
        prop_assert!(r.line.rows().iter().all(|v| plane.contains_point(v)));

        // the same residual by the floating-point route
        let fc = CubicForm::from_poly(&fermat_form_in::<FieldElem>(4));
        let rows = embed_rows(l.rows());
        let nl = NumLine::through(&rows[0], &rows[1]).unwrap();
        let dc: Vec<C> = d.iter().map(|x| x.to_complex()).collect();
        let nr = nl.voisin_residual(&fc, &dc).unwrap();
        let er = embed_rows(r.line.rows());
        let exact = NumLine::through(&er[0], &er[1]).unwrap();
        prop_assert!(nr.line.distance(&exact) < 1e-8, "distance {}", nr.line.distance(&exact));

        // a direction outside the tangent span gives a non-tangent plane
        let outside = (0..6)
            .map(|i| (0..6).map(|j| CubicExt::base(FieldElem::from_i64((i == j) as i64))).collect::<Vec<_>>())
            .find(|e| {
                let mut rows: Vec<Vec<CubicExt>> = spans.solution_basis.clone();
                rows.push(e.clone());
                fano_core::algebra::Matrix::from_rows(rows).rank() > spans.solution_basis.len()
            })
            .unwrap();
        let p = Plane::spanned_by(&l, outside).unwrap();
        prop_assert_eq!(voisin_residual(&f, &l, &p).unwrap_err(), GeometryError::NotTangent);
    }
}
