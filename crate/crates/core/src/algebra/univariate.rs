//! Dense univariate polynomials and binary forms over a `Field`.

use super::field::{ExactField, Field};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// x − r
    pub fn linear_root(r: F) -> Self {
        Self::new(vec![-r, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * F::from_i64(k as i64)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(F::zero);
                    let b = o.coeffs.get(k).cloned().unwrap_or_else(F::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Lagrange interpolation through (nodes[k], values[k]).
    pub fn interpolate(nodes: &[F], values: &[F]) -> Self {
        assert_eq!(nodes.len(), values.len());
        let mut acc = Self::zero();
        for (k, (xk, yk)) in nodes.iter().zip(values).enumerate() {
            if yk.is_zero() {
                continue;
            }
            let mut basis = Self::constant(F::one());
            let mut denom = F::one();
            for (j, xj) in nodes.iter().enumerate() {
                if j != k {
                    basis = basis.mul(&Self::linear_root(xj.clone()));
                    denom = denom * (xk.clone() - xj.clone());
                }
            }
            let w = yk.clone() * denom.inv().expect("interpolation nodes are distinct");
            acc = acc.add(&basis.scale(&w));
        }
        acc
    }
}

impl<F: ExactField> UniPoly<F> {
    /// Euclidean division; panics on division by the zero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![F::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() * lead_inv.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quo[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quo), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// A binary form Σₖ cₖ s^{d−k} tᵏ of degree d = coeffs.len() − 1.
/// Leading zeros are kept: the degree is part of the data.
#[derive(Clone, PartialEq, Debug)]
pub struct BinaryForm<F> {
    pub coeffs: Vec<F>,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "binary form needs a degree");
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Reads a homogeneous polynomial in two variables (s, t).
    pub fn from_poly(p: &super::poly::Poly<F>, degree: u32) -> Self {
        assert_eq!(p.n_vars(), 2, "binary form needs two variables");
        Self::new((0..=degree).map(|k| p.coeff(&[degree - k, k])).collect())
    }

    pub fn eval(&self, s: &F, t: &F) -> F {
        let d = self.degree() as u32;
        self.coeffs
            .iter()
            .enumerate()
            .fold(F::zero(), |acc, (k, c)| acc + c.clone() * s.pow(d - k as u32) * t.pow(k as u32))
    }

    /// Dehomogenization at s = 1, as a polynomial in t.
    pub fn dehomogenize(&self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldElem;

    fn p(c: &[i64]) -> UniPoly<FieldElem> {
        UniPoly::new(c.iter().map(|&x| FieldElem::from_i64(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (t − 1)²(t + 2) and (t − 1)(t + 3)
        let a = p(&[1, -2, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 1]).mul(&p(&[3, 1]));
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, p(&[1, -2, 1]).div_rem(&p(&[-1, 1])).0.mul(&p(&[2, 1])));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = p(&[3, 0, -1, 2]);
        let nodes: Vec<FieldElem> = (0..4).map(FieldElem::from_i64).collect();
        let vals: Vec<FieldElem> = nodes.iter().map(|x| f.eval(x)).collect();
        assert_eq!(UniPoly::interpolate(&nodes, &vals), f);
    }
}
