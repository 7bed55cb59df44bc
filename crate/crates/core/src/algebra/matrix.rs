//! Dense matrices over an exact field: row reduction, rank, kernels.

use super::field::{ExactField, Field, FieldElem};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<F>>,
}

pub type ExactMatrix = Matrix<FieldElem>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![F::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = F::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self { rows: rows.len(), cols, data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i][j] = v;
    }

    pub fn into_rows(self) -> Vec<Vec<F>> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        let data = (0..self.cols).map(|j| (0..self.rows).map(|i| self.data[i][j].clone()).collect()).collect();
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|r| r.iter().zip(v).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect()
    }
}

impl<F: ExactField> Matrix<F> {
    /// Reduced row echelon form and the pivot columns. Pivots are taken at the
    /// leftmost nonzero column, scaled to one; zero rows are kept at the bottom.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].inv().expect("nonzero pivot");
            for x in m[r].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - factor.clone() * y.clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Self { rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {v : M v = 0}, one vector per non-pivot column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.data[row][f].clone();
                }
                v
            })
            .collect()
    }

    /// Nonzero rows of the reduced form.
    pub fn row_space_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        r.data.into_iter().take(pivots.len()).collect()
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det = det * m[c][c].clone();
            let inv = m[c][c].inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = m[i][c].clone() * inv.clone();
                for j in c..n {
                    let t = m[c][j].clone();
                    m[i][j] = m[i][j].clone() - factor.clone() * t;
                }
            }
        }
        det
    }

    /// One solution of M x = b, if the system is consistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_rows(
            self.data.iter().zip(b).map(|(r, x)| r.iter().cloned().chain(std::iter::once(x.clone())).collect()).collect(),
        );
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[row][self.cols].clone();
        }
        Some(x)
    }
}

/// Picks, in order, the candidates that are independent of `base` and of the
/// candidates picked before them.
pub fn extend_independent<F: ExactField>(base: &[Vec<F>], candidates: &[Vec<F>]) -> Vec<Vec<F>> {
    let mut rows = base.to_vec();
    let mut rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.clone()).rank() };
    let mut out = Vec::new();
    for c in candidates {
        rows.push(c.clone());
        let r = Matrix::from_rows(rows.clone()).rank();
        if r > rank {
            rank = r;
            out.push(c.clone());
        } else {
            rows.pop();
        }
    }
    out
}

/// Standard basis vector e_i of length n.
pub fn unit_vector<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}
