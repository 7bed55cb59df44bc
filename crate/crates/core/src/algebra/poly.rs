//! Sparse multivariate polynomials over a `Field`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::{AlgebraError, Field, FieldElem};

/// Exponent vector, one entry per variable.
pub type Exps = Vec<u32>;

/// A polynomial stored as a map from exponent vectors to nonzero
/// coefficients. Every exponent vector has length `n_vars`.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    n_vars: usize,
    terms: BTreeMap<Exps, F>,
}

/// Polynomials over Q(ω): cubic forms and their partials.
pub type MultiPoly = Poly<FieldElem>;

impl<F: Field> Poly<F> {
    pub fn zero(n_vars: usize) -> Self {
        Self { n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, c: F) -> Self {
        Self::monomial(n_vars, vec![0; n_vars], c)
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = 1;
        Self::monomial(n_vars, e, F::one())
    }

    pub fn monomial(n_vars: usize, exps: Exps, c: F) -> Self {
        assert_eq!(exps.len(), n_vars, "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { n_vars, terms }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms(n_vars: usize, terms: impl IntoIterator<Item = (Exps, F)>) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(n_vars);
        for (e, c) in terms {
            if e.len() != n_vars {
                return Err(AlgebraError::DimensionMismatch { expected: n_vars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Linear form Σ cᵢ xᵢ.
    pub fn linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, exps: Exps, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exps, s);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// Total degree of the highest term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree if every term has the same total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_vars);
        }
        Self {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n_vars, o.n_vars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n_vars, o.n_vars);
        let mut r = Self::zero(self.n_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.clone() * c2.clone());
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.n_vars, F::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.n_vars, "evaluation point length");
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * x.pow(k);
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut r = Self::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            r.add_term(e2, c.clone() * F::from_i64(e[i] as i64));
        }
        r
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.n_vars).map(|i| self.partial(i)).collect()
    }

    /// Substitutes x = Σⱼ yⱼ·basis[j]; the result is a polynomial in
    /// `basis.len()` variables. Homogeneous inputs stay homogeneous of the
    /// same degree, and the result vanishes identically exactly when `self`
    /// vanishes on the span of the basis.
    pub fn restrict(&self, basis: &[Vec<F>]) -> Result<Self, AlgebraError> {
        for b in basis {
            if b.len() != self.n_vars {
                return Err(AlgebraError::DimensionMismatch { expected: self.n_vars, found: b.len() });
            }
        }
        let k = basis.len();
        // linear form giving coordinate i in terms of the new variables
        let forms: Vec<Self> =
            (0..self.n_vars).map(|i| Self::linear(&basis.iter().map(|b| b[i].clone()).collect::<Vec<_>>())).collect();
        let mut powers: Vec<Vec<Self>> = forms.iter().map(|f| vec![Self::constant(k, F::one()), f.clone()]).collect();
        let mut out = Self::zero(k);
        for (e, c) in &self.terms {
            let mut t = Self::constant(k, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                while powers[i].len() <= ei as usize {
                    let next = powers[i].last().unwrap().mul(&forms[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][ei as usize]);
                if t.is_zero() {
                    break;
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Coefficient of `x_var^power`, as a polynomial in the remaining
    /// variables (the variable is removed).
    pub fn coefficient_of(&self, var: usize, power: u32) -> Self {
        let mut r = Self::zero(self.n_vars - 1);
        for (e, c) in &self.terms {
            if e[var] == power {
                let mut e2 = e.clone();
                e2.remove(var);
                r.add_term(e2, c.clone());
            }
        }
        r
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut r = Poly::<G>::zero(self.n_vars);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    /// Largest |coefficient| under a norm supplied by the caller.
    pub fn max_coeff_by(&self, norm: impl Fn(&F) -> f64) -> f64 {
        self.terms.values().map(norm).fold(0.0, f64::max)
    }
}

impl MultiPoly {
    pub fn to_complex(&self) -> Poly<Complex64> {
        self.map_coeffs(|c| c.to_complex())
    }

    /// Sum of cubes of the listed variables.
    pub fn sum_of_cubes(n_vars: usize, vars: &[usize]) -> Self {
        let mut p = Self::zero(n_vars);
        for &i in vars {
            let mut e = vec![0; n_vars];
            e[i] = 3;
            p.add_term(e, FieldElem::one());
        }
        p
    }
}

impl Poly<Complex64> {
    pub fn max_abs_coeff(&self) -> f64 {
        self.max_coeff_by(|c| c.norm())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exps: Vec<u32>,
    a: String,
    b: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    n_vars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let (a, b) = c.to_strings();
                TermRepr { exps: e.clone(), a, b }
            })
            .collect();
        PolyRepr { n_vars: self.n_vars, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = PolyRepr::deserialize(d)?;
        if r.n_vars == 0 {
            return Err(D::Error::custom(AlgebraError::BadPolynomial("n_vars must be positive".into())));
        }
        let terms = r
            .terms
            .into_iter()
            .map(|t| Ok((t.exps, FieldElem::from_strings(&t.a, &t.b)?)))
            .collect::<Result<Vec<_>, AlgebraError>>()
            .map_err(D::Error::custom)?;
        MultiPoly::from_terms(r.n_vars, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(a: i64) -> FieldElem {
        FieldElem::from_i64(a)
    }

    fn unit(n: usize, i: usize) -> Vec<FieldElem> {
        (0..n).map(|k| fe((k == i) as i64)).collect()
    }

    fn diff(n: usize, i: usize, j: usize) -> Vec<FieldElem> {
        (0..n).map(|k| fe((k == i) as i64 - (k == j) as i64)).collect()
    }

    fn fermat4() -> MultiPoly {
        MultiPoly::sum_of_cubes(6, &[0, 1, 2, 3, 4, 5])
    }

    #[test]
    fn restrict_to_line_in_fourfold_vanishes() {
        let r = fermat4().restrict(&[diff(6, 0, 1), diff(6, 2, 3)]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn restrict_to_plane_in_fourfold_vanishes() {
        let r = fermat4().restrict(&[diff(6, 0, 1), diff(6, 2, 3), diff(6, 4, 5)]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn restrict_to_point_is_constant_times_cube() {
        let p: Vec<FieldElem> = vec![fe(1), fe(2), fe(0), fe(0), fe(-1), fe(3)];
        let f = fermat4();
        let r = f.restrict(std::slice::from_ref(&p)).unwrap();
        assert_eq!(r.n_vars(), 1);
        assert_eq!(r.coeff(&[3]), f.eval(&p));
        assert_eq!(r.num_terms(), 1);
    }

    #[test]
    fn restrict_coordinate_line() {
        let r = fermat4().restrict(&[unit(6, 0), unit(6, 1)]).unwrap();
        assert_eq!(r.coeff(&[3, 0]), fe(1));
        assert_eq!(r.coeff(&[0, 3]), fe(1));
        assert_eq!(r.num_terms(), 2);
    }

    #[test]
    fn restrict_dimension_mismatch() {
        let err = fermat4().restrict(&[vec![fe(1); 5]]).unwrap_err();
        assert_eq!(err, AlgebraError::DimensionMismatch { expected: 6, found: 5 });
    }

    #[test]
    fn partials_of_fermat() {
        let g = fermat4().gradient();
        assert_eq!(g[2].coeff(&[0, 0, 2, 0, 0, 0]), fe(3));
        assert_eq!(g[2].num_terms(), 1);
    }

    #[test]
    fn json_roundtrip() {
        let mut f = fermat4();
        f.add_term(vec![1, 1, 1, 0, 0, 0], FieldElem::omega() + FieldElem::frac(-3, 7));
        let s = serde_json::to_string(&f).unwrap();
        let g: MultiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert!(s.contains("\"a\":\"-3/7\""));
    }

    #[test]
    fn json_rejects_bad_exponent_length() {
        let s = r#"{"n_vars":3,"terms":[{"exps":[1,2],"a":"1/1","b":"0/1"}]}"#;
        assert!(serde_json::from_str::<MultiPoly>(s).is_err());
    }
}
