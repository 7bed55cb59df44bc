//! Projective lines and planes as row spaces in reduced row echelon form.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GeometryError;
use crate::algebra::{ExactField, FieldElem, Matrix};

fn canonical<F: ExactField>(rows: Vec<Vec<F>>, k: usize) -> Option<Vec<Vec<F>>> {
    let n = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != n) {
        return None;
    }
    let (r, pivots) = Matrix::from_rows(rows).rref();
    (pivots.len() == k).then(|| r.into_rows().into_iter().take(k).collect())
}

fn contains_vector<F: ExactField>(rows: &[Vec<F>], v: &[F]) -> bool {
    let mut m = rows.to_vec();
    m.push(v.to_vec());
    Matrix::from_rows(m).rank() == rows.len()
}

/// Embedding of exact rows into complex vectors.
pub fn rows_to_complex(rows: &[Vec<FieldElem>]) -> Vec<Vec<Complex64>> {
    rows.iter().map(|r| r.iter().map(|x| x.to_complex()).collect()).collect()
}

/// A line in projective space, stored as the canonical 2-row basis of its
/// 2-dimensional linear span.
#[derive(Clone, PartialEq, Debug)]
pub struct Line<F = FieldElem> {
    rows: Vec<Vec<F>>,
}

/// A 2-plane in projective space, canonical 3-row basis.
#[derive(Clone, PartialEq, Debug)]
pub struct Plane<F = FieldElem> {
    rows: Vec<Vec<F>>,
}

impl<F: ExactField> Line<F> {
    pub fn new(p: Vec<F>, q: Vec<F>) -> Result<Self, GeometryError> {
        Self::from_rows(vec![p, q])
    }

    /// Accepts any spanning set; fails unless its rank is exactly 2.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, GeometryError> {
        canonical(rows, 2).map(|rows| Self { rows }).ok_or(GeometryError::DegenerateLine)
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Number of homogeneous coordinates (n + 2 for a cubic n-fold).
    pub fn ambient_dim(&self) -> usize {
        self.rows[0].len()
    }

    /// s·p + t·q for the canonical basis (p, q).
    pub fn point(&self, s: &F, t: &F) -> Vec<F> {
        self.rows[0].iter().zip(&self.rows[1]).map(|(a, b)| s.clone() * a.clone() + t.clone() * b.clone()).collect()
    }

    pub fn contains_point(&self, x: &[F]) -> bool {
        contains_vector(&self.rows, x)
    }

    /// All 2×2 minors p_i q_j − p_j q_i for i < j.
    pub fn plucker(&self) -> Vec<F> {
        let (p, q) = (&self.rows[0], &self.rows[1]);
        let n = p.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(p[i].clone() * q[j].clone() - p[j].clone() * q[i].clone());
            }
        }
        out
    }

    /// Whether the two lines share a point.
    pub fn meets(&self, other: &Self) -> bool {
        let rows: Vec<Vec<F>> = self.rows.iter().chain(&other.rows).cloned().collect();
        Matrix::from_rows(rows).rank() <= 3
    }
}

impl<F: ExactField> Plane<F> {
    pub fn new(p: Vec<F>, q: Vec<F>, r: Vec<F>) -> Result<Self, GeometryError> {
        Self::from_rows(vec![p, q, r])
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, GeometryError> {
        canonical(rows, 3).map(|rows| Self { rows }).ok_or(GeometryError::DegeneratePlane)
    }

    /// The plane spanned by a line and one more point.
    pub fn spanned_by(line: &Line<F>, v: Vec<F>) -> Result<Self, GeometryError> {
        Self::from_rows(vec![line.rows[0].clone(), line.rows[1].clone(), v])
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn contains_point(&self, x: &[F]) -> bool {
        contains_vector(&self.rows, x)
    }

    pub fn contains_line(&self, l: &Line<F>) -> bool {
        l.rows.iter().all(|r| self.contains_point(r))
    }

    /// A row of the plane's basis outside the line, completing it to a basis.
    pub fn complement_of(&self, l: &Line<F>) -> Option<Vec<F>> {
        self.rows.iter().find(|r| !l.contains_point(r)).cloned()
    }
}

impl Line<FieldElem> {
    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        rows_to_complex(&self.rows)
    }
}

impl Plane<FieldElem> {
    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        rows_to_complex(&self.rows)
    }
}

#[derive(Serialize, Deserialize)]
struct RowsRepr {
    rows: Vec<Vec<FieldElem>>,
}

impl Serialize for Line<FieldElem> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RowsRepr { rows: self.rows.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Line<FieldElem> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RowsRepr::deserialize(d)?;
        Line::from_rows(r.rows).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Plane<FieldElem> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RowsRepr { rows: self.rows.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Plane<FieldElem> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RowsRepr::deserialize(d)?;
        Plane::from_rows(r.rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn v(x: &[i64]) -> Vec<FieldElem> {
        x.iter().map(|&a| FieldElem::from_i64(a)).collect()
    }

    #[test]
    fn canonical_form_gives_equality() {
        let a = Line::new(v(&[1, -1, 0, 0]), v(&[0, 0, 1, -1])).unwrap();
        let b = Line::new(v(&[2, -2, 3, -3]), v(&[1, -1, -1, 1])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows()[0], v(&[1, -1, 0, 0]));
    }

    #[test]
    fn degenerate_line_rejected() {
        let e = Line::new(v(&[1, 2, 3]), v(&[2, 4, 6])).unwrap_err();
        assert_eq!(e, GeometryError::DegenerateLine);
    }

    #[test]
    fn plucker_scales_with_basis() {
        let a = Line::new(v(&[1, 0, 2, 0]), v(&[0, 1, 0, 3])).unwrap();
        let p = a.plucker();
        assert_eq!(p.len(), 6);
        assert!(p.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn plane_contains_line() {
        let l = Line::new(v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])).unwrap();
        let pl = Plane::spanned_by(&l, v(&[0, 0, 1, 0])).unwrap();
        assert!(pl.contains_line(&l));
        assert_eq!(pl.complement_of(&l), Some(v(&[0, 0, 1, 0])));
    }

    #[test]
    fn json_roundtrip_canonicalizes() {
        let s = r#"{"rows":[[{"a":"2/1","b":"0/1"},{"a":"0/1","b":"0/1"},{"a":"0/1","b":"0/1"}],
                             [{"a":"1/1","b":"0/1"},{"a":"1/1","b":"0/1"},{"a":"0/1","b":"0/1"}]]}"#;
        let l: Line = serde_json::from_str(s).unwrap();
        assert_eq!(l.rows()[0], v(&[1, 0, 0]));
        assert_eq!(l.rows()[1], v(&[0, 1, 0]));
        let back: Line = serde_json::from_str(&serde_json::to_string(&l).unwrap()).unwrap();
        assert_eq!(back, l);
    }
}
