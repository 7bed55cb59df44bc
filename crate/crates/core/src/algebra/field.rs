//! The field Q(ω) with ω² = ω − 1, and the `Field` abstraction shared by the
//! exact and floating-point code paths.
//!
//! ω is the primitive sixth root of unity e^{iπ/3}; it is a cube root of −1,
//! and the three cube roots of −1 in Q(ω) are −1, ω and 1 − ω.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("binary form is identically zero")]
    ZeroForm,
    #[error("malformed rational literal {0:?}")]
    BadRational(String),
    #[error("malformed polynomial: {0}")]
    BadPolynomial(String),
}

/// Arithmetic interface used by the generic polynomial and matrix code.
///
/// `is_zero` is an exact test. For `Complex64` it only recognizes a literal
/// zero; numeric code never relies on it for rank decisions.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Interpolation node number `k` out of `count`. Exact fields use small
    /// integers; the complex field uses roots of unity for conditioning.
    fn node(k: usize, _count: usize) -> Self {
        Self::from_i64(k as i64)
    }
}

/// Marker for fields where `is_zero` is a true decision procedure, so rank and
/// divisibility computations are meaningful.
pub trait ExactField: Field {}

/// An element a + b·ω of Q(ω).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub a: BigRational,
    pub b: BigRational,
}

fn ratio(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl FieldElem {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(ratio(a), ratio(b))
    }

    pub fn rational(a: BigRational) -> Self {
        Self::new(a, BigRational::zero())
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// ω itself.
    pub fn omega() -> Self {
        Self::from_ints(0, 1)
    }

    /// The three cube roots of −1: −1, ω, 1 − ω.
    pub fn cube_roots_of_minus_one() -> [FieldElem; 3] {
        [Self::from_ints(-1, 0), Self::omega(), Self::from_ints(1, -1)]
    }

    /// The three cube roots of 1: 1, ω − 1 (= ω²), −ω (= ω⁴).
    pub fn cube_roots_of_unity() -> [FieldElem; 3] {
        [Self::from_ints(1, 0), Self::from_ints(-1, 1), Self::from_ints(0, -1)]
    }

    /// Field norm a² + ab + b², i.e. (a + bω)(a + bω̄).
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        // ω̄ = 1 − ω
        Self::new(&self.a + &self.b, -self.b.clone())
    }

    pub fn checked_inv(&self) -> Result<Self, AlgebraError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let c = self.conj();
        Ok(Self::new(c.a / &n, c.b / &n))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex embedding with ω ↦ e^{iπ/3}.
    pub fn to_complex(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        Complex64::new(a + 0.5 * b, b * 3f64.sqrt() / 2.0)
    }

    /// Best guess of an element with denominators at most `max_den` whose
    /// embedding is within `tol` of `z`. The caller verifies exactly.
    pub fn recognize(z: Complex64, max_den: i64, tol: f64) -> Option<Self> {
        let b = z.im * 2.0 / 3f64.sqrt();
        let a = z.re - 0.5 * b;
        let ra = rational_approx(a, max_den, tol)?;
        let rb = rational_approx(b, max_den, tol)?;
        let cand = Self::new(ra, rb);
        ((cand.to_complex() - z).norm() <= tol * (1.0 + z.norm())).then_some(cand)
    }

    pub fn to_strings(&self) -> (String, String) {
        (rational_to_string(&self.a), rational_to_string(&self.b))
    }

    pub fn from_strings(a: &str, b: &str) -> Result<Self, AlgebraError> {
        Ok(Self::new(parse_rational(a)?, parse_rational(b)?))
    }
}

/// "p/q" with q ≥ 1 always written out.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::BadRational(s.to_string());
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// Continued-fraction approximation of `x` with denominator ≤ `max_den`.
pub fn rational_approx(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if ((h1 as f64) / (k1 as f64) - x).abs() <= tol * (1.0 + x.abs()) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    (k1 != 0 && ((h1 as f64) / (k1 as f64) - x).abs() <= tol * (1.0 + x.abs()))
        .then(|| BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}ω", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}ω", self.a, -self.b.clone())
                } else {
                    write!(f, "{}+{}ω", self.a, self.b)
                }
            }
        }
    }
}

impl Add for FieldElem {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for FieldElem {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for FieldElem {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd(ω − 1)
        let bd = &self.b * &o.b;
        Self::new(&self.a * &o.a - &bd, &self.a * &o.b + &self.b * &o.a + bd)
    }
}

impl Div for FieldElem {
    type Output = Self;
    /// Panics on division by zero; use `checked_inv` to handle it.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.checked_inv().expect("division by zero in Q(ω)")
    }
}

impl Neg for FieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Field for FieldElem {
    fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }
    fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn from_i64(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
}

impl ExactField for FieldElem {}

impl Field for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn inv(&self) -> Option<Self> {
        (!Field::is_zero(self)).then(|| 1.0 / *self)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn node(k: usize, count: usize) -> Self {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / count as f64)
    }
}

/// JSON form `{"a": "p/q", "b": "p/q"}`.
#[derive(Serialize, Deserialize)]
struct FieldElemRepr {
    a: String,
    b: String,
}

impl Serialize for FieldElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (a, b) = self.to_strings();
        FieldElemRepr { a, b }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FieldElemRepr::deserialize(d)?;
        FieldElem::from_strings(&r.a, &r.b).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> FieldElem {
        FieldElem::omega()
    }

    #[test]
    fn omega_squared_reduces() {
        assert_eq!(w() * w(), FieldElem::from_ints(-1, 1));
    }

    #[test]
    fn omega_times_conjugate_is_one() {
        assert_eq!(w() * FieldElem::from_ints(1, -1), FieldElem::one());
    }

    #[test]
    fn omega_cubed_is_minus_one() {
        assert_eq!(w().pow(3), FieldElem::from_i64(-1));
        for r in FieldElem::cube_roots_of_minus_one() {
            assert_eq!(r.pow(3), FieldElem::from_i64(-1));
        }
        for r in FieldElem::cube_roots_of_unity() {
            assert_eq!(r.pow(3), FieldElem::one());
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(FieldElem::zero().checked_inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = FieldElem::new(BigRational::new(3.into(), 7.into()), ratio(-2));
        assert_eq!(x.clone() * x.checked_inv().unwrap(), FieldElem::one());
    }

    #[test]
    fn complex_embedding_respects_products() {
        let x = FieldElem::from_ints(2, -3);
        let y = FieldElem::frac(5, 4) + w();
        let lhs = (x.clone() * y.clone()).to_complex();
        assert!((lhs - x.to_complex() * y.to_complex()).norm() < 1e-12);
    }

    #[test]
    fn recognize_roundtrip() {
        let x = FieldElem::new(BigRational::new(17.into(), 12.into()), BigRational::new((-5).into(), 3.into()));
        let back = FieldElem::recognize(x.to_complex(), 1_000_000, 1e-10).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn string_roundtrip() {
        let x = FieldElem::new(BigRational::new((-17).into(), 12.into()), ratio(0));
        let (a, b) = x.to_strings();
        assert_eq!(a, "-17/12");
        assert_eq!(b, "0/1");
        assert_eq!(FieldElem::from_strings(&a, &b).unwrap(), x);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }
}
