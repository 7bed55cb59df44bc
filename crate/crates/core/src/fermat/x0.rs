//! The degeneration X₀ used to probe the lines through a point of W.
//!
//! From a quadric f₂ and a cubic f₃ in x₀, …, x_{n−1} one forms
//! g = f₂·xₙ + f₃ + xₙ²x_{n+1}. The tangent hyperplane at eₙ is x_{n+1} = 0,
//! and the lines through eₙ are the joins of eₙ with V(f₂) ∩ V(f₃). As
//! written g is singular at e_{n+1}; adding x_{n+1}·r for a quadric r free
//! of xₙ repairs this without changing the lines through eₙ.

use serde::{Deserialize, Serialize};

use super::FermatError;
use crate::algebra::{Field, FieldElem, MultiPoly};
use crate::numeric::cubic::CubicForm;
use crate::numeric::singular::{find_singular_points, SingularSearch};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkedCubic {
    pub form: MultiPoly,
    pub marked_point: Vec<FieldElem>,
    pub provenance: String,
}

fn lift(p: &MultiPoly, n_vars: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(n_vars);
    for (e, c) in p.terms() {
        let mut ex = e.clone();
        ex.resize(n_vars, 0);
        out.add_term(ex, c.clone());
    }
    out
}

fn monomial(n_vars: usize, powers: &[(usize, u32)]) -> MultiPoly {
    let mut e = vec![0u32; n_vars];
    for &(i, k) in powers {
        e[i] += k;
    }
    MultiPoly::monomial(n_vars, e, FieldElem::one())
}

/// g = f₂·xₙ + f₃ + xₙ²x_{n+1} with marked point eₙ, f₂ and f₃ in n
/// variables.
pub fn x0_construction(f2: &MultiPoly, f3: &MultiPoly, n: usize) -> MarkedCubic {
    let m = n + 2;
    let g = lift(f2, m).mul(&MultiPoly::var(m, n)).add(&lift(f3, m)).add(&monomial(m, &[(n, 2), (n + 1, 1)]));
    let mut marked_point = vec![FieldElem::zero(); m];
    marked_point[n] = FieldElem::one();
    MarkedCubic { form: g, marked_point, provenance: format!("f2 = {f2:?}, f3 = {f3:?}") }
}

/// The default correction quadric x_{n+1}² + Σ (i + 2)·xᵢ².
pub fn default_correction(n: usize) -> MultiPoly {
    let m = n + 2;
    let mut r = monomial(m, &[(n + 1, 2)]);
    for i in 0..n {
        r = r.add(&monomial(m, &[(i, 2)]).scale(&FieldElem::from_i64(i as i64 + 2)));
    }
    r
}

impl MarkedCubic {
    /// Adds x_{n+1}·r; r must not involve xₙ so the lines through the
    /// marked point are unchanged.
    pub fn corrected(&self, r: &MultiPoly) -> Result<Self, FermatError> {
        let m = self.form.n_vars();
        let n = m - 2;
        if r.n_vars() != m || r.homogeneous_degree() != Some(2) || r.terms().any(|(e, _)| e[n] > 0) {
            return Err(FermatError::NonGenericPoint("correction must be a quadric free of the marked coordinate".into()));
        }
        Ok(Self {
            form: self.form.add(&MultiPoly::var(m, n + 1).mul(r)),
            marked_point: self.marked_point.clone(),
            provenance: format!("{} + x{}·r", self.provenance, n + 1),
        })
    }

    pub fn is_on_cubic(&self) -> bool {
        self.form.eval(&self.marked_point).is_zero()
    }

    pub fn smoothness(&self, seed: u64) -> SingularSearch {
        find_singular_points(&CubicForm::from_poly(&self.form), seed, 1e-8)
    }
}

/// The conic x₀x₂ − x₁², parametrized by t ↦ [1 : t : t²].
pub fn standard_conic() -> MultiPoly {
    monomial(3, &[(0, 1), (2, 1)]).sub(&monomial(3, &[(1, 2)]))
}

/// A ternary cubic whose pullback to the standard conic is Σ cₖtᵏ.
pub fn cubic_from_sextic(c: &[i64; 7]) -> MultiPoly {
    const MONOMIALS: [[(usize, u32); 2]; 7] =
        [[(0, 3), (1, 0)], [(0, 2), (1, 1)], [(0, 2), (2, 1)], [(1, 3), (0, 0)], [(1, 2), (2, 1)], [(1, 1), (2, 2)], [(2, 3), (0, 0)]];
    let mut f = MultiPoly::zero(3);
    for (k, mono) in MONOMIALS.iter().enumerate() {
        f = f.add(&monomial(3, mono).scale(&FieldElem::from_i64(c[k])));
    }
    f
}

fn expand(roots: &[i64]) -> [i64; 7] {
    let mut c = vec![1i64];
    for &r in roots {
        let mut next = vec![0i64; c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= r * a;
        }
        c = next;
    }
    c.try_into().expect("six roots")
}

/// The roots, with repetition, placed on the conic for a given number of
/// tangencies between V(f₂) and V(f₃).
pub fn node_roots(nodes: usize) -> Option<[i64; 6]> {
    match nodes {
        0 => Some([1, 2, 3, -1, -2, -3]),
        1 => Some([1, 1, 2, 3, -1, -2]),
        2 => Some([1, 1, 2, 2, -1, -2]),
        _ => None,
    }
}

/// The corrected threefold X₀ whose lines through the marked point meet
/// the standard conic at the parameters of [`node_roots`].
pub fn node_example(nodes: usize) -> Result<MarkedCubic, FermatError> {
    let roots = node_roots(nodes).ok_or_else(|| FermatError::NonGenericPoint(format!("{nodes} tangencies not supported")))?;
    let base = x0_construction(&standard_conic(), &cubic_from_sextic(&expand(&roots)), 3);
    let mut m = base.corrected(&default_correction(3))?;
    m.provenance = format!("conic x0*x2 - x1^2, cubic through t in {roots:?}, corrected by x4*(x4^2 + 2x0^2 + 3x1^2 + 4x2^2)");
    Ok(m)
}

/// The direction [1 : t : t² : 0 : 0] of the line through e₃ for parameter t.
pub fn line_direction(t: i64) -> Vec<FieldElem> {
    let mut v = vec![FieldElem::zero(); 5];
    v[0] = FieldElem::one();
    v[1] = FieldElem::from_i64(t);
    v[2] = FieldElem::from_i64(t * t);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{line_type, Line, LineType};
    use crate::numeric::lines::{solve_lines_through_exact_point, FiberOptions};
    use crate::numeric::newton::Multiplicity;

    #[test]
    fn sextic_pulls_back() {
        let f3 = cubic_from_sextic(&expand(&[1, 2, 3, -1, -2, -3]));
        for t in [1i64, 2, 3, -1, -2, -3] {
            let x = [FieldElem::one(), FieldElem::from_i64(t), FieldElem::from_i64(t * t)];
            assert!(f3.eval(&x).is_zero());
            assert!(standard_conic().eval(&x).is_zero());
        }
        assert_eq!(expand(&[1, 1, 2, 2, -1, -2]), [8, -12, -6, 15, -3, -3, 1]);
    }

    #[test]
    fn literal_construction_is_singular_off_the_marked_point() {
        let m = x0_construction(&standard_conic(), &cubic_from_sextic(&expand(&node_roots(0).unwrap())), 3);
        assert!(m.is_on_cubic());
        let mut e4 = vec![FieldElem::zero(); 5];
        e4[4] = FieldElem::one();
        assert!(m.form.eval(&e4).is_zero());
        assert!(m.form.gradient().iter().all(|p| p.eval(&e4).is_zero()));
        assert!(!m.smoothness(1).smooth());
    }

    #[test]
    fn corrected_examples_are_smooth() {
        for nodes in 0..=2 {
            let m = node_example(nodes).unwrap();
            assert!(m.is_on_cubic());
            let s = m.smoothness(11 + nodes as u64);
            assert!(s.smooth(), "{nodes} nodes: {s:?}");
        }
    }

    #[test]
    fn correction_must_avoid_the_marked_coordinate() {
        let m = node_example(0).unwrap();
        assert!(m.corrected(&monomial(5, &[(3, 2)])).is_err());
    }

    #[test]
    fn fibers_over_the_marked_point() {
        for (nodes, distinct) in [(0usize, 6usize), (1, 5), (2, 4)] {
            let m = node_example(nodes).unwrap();
            let sols = solve_lines_through_exact_point(&m.form, &m.marked_point, 3, &FiberOptions::default()).unwrap();
            assert_eq!(sols.len(), distinct, "{nodes} nodes");
            let total: usize = sols
                .iter()
                .map(|s| match s.multiplicity {
                    Multiplicity::Simple => 1,
                    Multiplicity::Cluster(k) => k,
                })
                .sum();
            assert_eq!(total, 6);
        }
    }

    #[test]
    fn doubled_lines_are_second_type_exactly() {
        let m = node_example(2).unwrap();
        for (t, want) in [(1, LineType::Second), (2, LineType::Second), (-1, LineType::First), (-2, LineType::First)] {
            let l = Line::new(m.marked_point.clone(), line_direction(t)).unwrap();
            assert_eq!(line_type(&m.form, &l).unwrap(), want, "t = {t}");
        }
    }
}
