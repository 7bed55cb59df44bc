//! Simple radical extensions Q(ω)(α) with α³ = d, d not a cube in Q(ω).
//!
//! A general point of a Fermat plane cubic x³ + y³ + z³ = 0 is never defined
//! over Q(ω), but [1 : u : α] with α³ = −1 − u³ is, over this extension, and
//! every permutation of its coordinates (times cube roots of unity) is again
//! a point of the curve. That is enough to run exact rank tests on ruling
//! lines of joins of two Fermat curves.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{ExactField, Field, FieldElem};

#[derive(Clone)]
pub struct CubicExt {
    /// Coordinates in the basis 1, α, α².
    pub c: [FieldElem; 3],
    /// α³. `None` for elements of the base field built without a modulus.
    pub d: Option<Arc<FieldElem>>,
}

impl CubicExt {
    pub fn base(x: FieldElem) -> Self {
        Self { c: [x, FieldElem::zero(), FieldElem::zero()], d: None }
    }

    /// The generator α of Q(ω)(∛d).
    pub fn generator(d: FieldElem) -> Self {
        Self { c: [FieldElem::zero(), FieldElem::one(), FieldElem::zero()], d: Some(Arc::new(d)) }
    }

    pub fn in_base_field(&self) -> Option<&FieldElem> {
        (self.c[1].is_zero() && self.c[2].is_zero()).then_some(&self.c[0])
    }

    /// The complex embedding sending α to the principal cube root of d.
    pub fn to_complex(&self) -> num_complex::Complex64 {
        let alpha = self.d.as_ref().map_or(num_complex::Complex64::new(0.0, 0.0), |d| d.to_complex().powf(1.0 / 3.0));
        self.c[0].to_complex() + alpha * (self.c[1].to_complex() + alpha * self.c[2].to_complex())
    }

    fn modulus(&self, other: &Self) -> Option<Arc<FieldElem>> {
        match (&self.d, &other.d) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixing elements of different cubic extensions");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for CubicExt {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl fmt::Debug for CubicExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})α + ({})α²", self.c[0], self.c[1], self.c[2])
    }
}

impl Add for CubicExt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let d = self.modulus(&o);
        let [a0, a1, a2] = self.c;
        let [b0, b1, b2] = o.c;
        Self { c: [a0 + b0, a1 + b1, a2 + b2], d }
    }
}

impl Sub for CubicExt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for CubicExt {
    type Output = Self;
    fn neg(self) -> Self {
        let [a0, a1, a2] = self.c;
        Self { c: [-a0, -a1, -a2], d: self.d }
    }
}

impl Mul for CubicExt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = self.modulus(&o);
        let [x0, x1, x2] = self.c;
        let [y0, y1, y2] = o.c;
        let wrap = x1.clone() * y2.clone() + x2.clone() * y1.clone();
        let wrap2 = x2.clone() * y2.clone();
        let (w1, w2) = match &d {
            Some(m) => ((**m).clone() * wrap, (**m).clone() * wrap2),
            None => {
                debug_assert!(wrap.is_zero() && wrap2.is_zero());
                (FieldElem::zero(), FieldElem::zero())
            }
        };
        Self {
            c: [
                x0.clone() * y0.clone() + w1,
                x0.clone() * y1.clone() + x1.clone() * y0.clone() + w2,
                x0 * y2 + x1 * y1 + x2 * y0,
            ],
            d,
        }
    }
}

fn det3(m: &[[FieldElem; 3]; 3]) -> FieldElem {
    let t = |i: usize, j: usize| m[i][j].clone();
    t(0, 0) * (t(1, 1) * t(2, 2) - t(1, 2) * t(2, 1)) - t(0, 1) * (t(1, 0) * t(2, 2) - t(1, 2) * t(2, 0))
        + t(0, 2) * (t(1, 0) * t(2, 1) - t(1, 1) * t(2, 0))
}

impl Field for CubicExt {
    fn zero() -> Self {
        Self::base(FieldElem::zero())
    }
    fn one() -> Self {
        Self::base(FieldElem::one())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn inv(&self) -> Option<Self> {
        if let Some(x) = self.in_base_field() {
            return x.inv().map(|i| Self { c: [i, FieldElem::zero(), FieldElem::zero()], d: self.d.clone() });
        }
        let d = self.d.as_ref().expect("element outside the base field carries its modulus");
        let [x0, x1, x2] = self.c.clone();
        let dd = (**d).clone();
        // columns: x·1, x·α, x·α²
        let m = [
            [x0.clone(), dd.clone() * x2.clone(), dd.clone() * x1.clone()],
            [x1.clone(), x0.clone(), dd.clone() * x2.clone()],
            [x2.clone(), x1.clone(), x0.clone()],
        ];
        let det = det3(&m);
        let det_inv = det.inv()?;
        // Cramer's rule for m·y = e₀
        let mut y: [FieldElem; 3] = [FieldElem::zero(), FieldElem::zero(), FieldElem::zero()];
        for (k, yk) in y.iter_mut().enumerate() {
            let mut mk = m.clone();
            for (r, row) in mk.iter_mut().enumerate() {
                row[k] = if r == 0 { FieldElem::one() } else { FieldElem::zero() };
            }
            *yk = det3(&mk) * det_inv.clone();
        }
        Some(Self { c: y, d: self.d.clone() })
    }
    fn from_i64(n: i64) -> Self {
        Self::base(FieldElem::from_i64(n))
    }
}

impl ExactField for CubicExt {}

impl From<FieldElem> for CubicExt {
    fn from(x: FieldElem) -> Self {
        Self::base(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_cubes_to_modulus() {
        let d = FieldElem::from_ints(-9, 0);
        let a = CubicExt::generator(d.clone());
        assert_eq!(a.pow(3), CubicExt::base(d));
    }

    #[test]
    fn inverse_roundtrip() {
        let d = FieldElem::from_ints(2, 1);
        let a = CubicExt::generator(d);
        let x = a.clone() * a.clone() * CubicExt::from_i64(3) + a + CubicExt::base(FieldElem::omega());
        let xi = x.inv().unwrap();
        assert_eq!(x * xi, CubicExt::one());
    }

    #[test]
    fn fermat_point_over_extension() {
        // u = 2: α³ = −1 − 8 = −9, point [1 : 2 : α]
        let u = FieldElem::from_i64(2);
        let d = -(FieldElem::one() + u.pow(3));
        let a = CubicExt::generator(d);
        let pt = [CubicExt::one(), CubicExt::base(u), a];
        let s = pt.iter().fold(CubicExt::zero(), |acc, x| acc + x.pow(3));
        assert!(s.is_zero());
    }

    #[test]
    fn complex_embedding_respects_products() {
        let a = CubicExt::generator(FieldElem::from_ints(-3, 2));
        let x = a.clone() * a.clone() + CubicExt::base(FieldElem::omega());
        let y = a.clone() * CubicExt::from_i64(5) - CubicExt::one();
        let lhs = (x.clone() * y.clone()).to_complex();
        assert!((lhs - x.to_complex() * y.to_complex()).norm() < 1e-10);
        assert!((a.pow(3).to_complex() - FieldElem::from_ints(-3, 2).to_complex()).norm() < 1e-10);
    }
}
