//! Exact splitting of binary forms over Q(ω).
//!
//! Candidate roots come from the complex embedding; every root reported here
//! has been verified by exact division, so numeric error can only cause a
//! root to be missed (it then stays in the unsplit factor), never invented.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::field::{AlgebraError, Field, FieldElem};
use super::univariate::{BinaryForm, UniPoly};
use crate::numeric::roots;

/// A root [s : t] of a binary form with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryRoot {
    pub point: [FieldElem; 2],
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryFactorization {
    pub roots: Vec<BinaryRoot>,
    /// The part without roots in Q(ω); a nonzero constant when fully split.
    pub unsplit: BinaryForm<FieldElem>,
}

impl BinaryFactorization {
    pub fn fully_split(&self) -> bool {
        self.unsplit.degree() == 0
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }
}

fn denominator_lcm(p: &UniPoly<FieldElem>) -> BigInt {
    p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.a.denom()).lcm(c.b.denom()))
}

/// Guess for an exact root near `z` of a polynomial whose coefficients lie in
/// Z[ω] with leading coefficient `lead`: lead·z is then an algebraic integer,
/// hence an element of Z[ω].
fn integral_guess(z: Complex64, lead: &FieldElem) -> Option<FieldElem> {
    let w = lead.to_complex() * z;
    let b = (w.im * 2.0 / 3f64.sqrt()).round();
    let a = (w.re - 0.5 * b).round();
    if !(a.abs() < 9e15 && b.abs() < 9e15) {
        return None;
    }
    let g = FieldElem::new(
        BigRational::from_integer(BigInt::from(a as i64)),
        BigRational::from_integer(BigInt::from(b as i64)),
    );
    lead.inv().map(|li| g * li)
}

/// Splits off every linear factor defined over Q(ω).
pub fn binary_form_factor(form: &BinaryForm<FieldElem>) -> Result<BinaryFactorization, AlgebraError> {
    if form.is_zero() {
        return Err(AlgebraError::ZeroForm);
    }
    let d = form.degree();
    let mut roots = Vec::new();
    // s divides the form once per vanishing top coefficient
    let at_infinity = form.coeffs.iter().rev().take_while(|c| c.is_zero()).count();
    if at_infinity > 0 {
        roots.push(BinaryRoot { point: [FieldElem::zero(), FieldElem::one()], multiplicity: at_infinity });
    }
    let mut u = UniPoly::new(form.coeffs[..=d - at_infinity].to_vec());

    let scale = FieldElem::rational(BigRational::from_integer(denominator_lcm(&u)));
    let integral = u.scale(&scale);
    let lead = integral.leading().cloned().expect("nonzero polynomial");
    let squarefree = {
        let g = u.gcd(&u.derivative());
        u.div_rem(&g).0
    };
    let numeric: Vec<Complex64> = squarefree.coeffs().iter().map(|c| c.to_complex()).collect();
    for z in roots::poly_roots(&numeric) {
        let candidates =
            [integral_guess(z, &lead), FieldElem::recognize(z, 1_000_000, 1e-9)].into_iter().flatten();
        for r in candidates {
            if roots.iter().any(|x: &BinaryRoot| x.point[0].is_one() && x.point[1] == r) {
                break;
            }
            let lin = UniPoly::linear_root(r.clone());
            let mut mult = 0;
            loop {
                let (q, rem) = u.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                u = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push(BinaryRoot { point: [FieldElem::one(), r], multiplicity: mult });
                break;
            }
        }
    }
    let unsplit = BinaryForm::new(u.coeffs().to_vec());
    Ok(BinaryFactorization { roots, unsplit })
}

/// Numeric roots of the unsplit factor, as points [s : t].
pub fn numeric_roots_of(form: &BinaryForm<FieldElem>) -> Vec<[Complex64; 2]> {
    if form.degree() == 0 {
        return Vec::new();
    }
    let c: Vec<Complex64> = form.coeffs.iter().map(|x| x.to_complex()).collect();
    roots::binary_roots(&c)
}
