//! Dense exact linear algebra over the rationals.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot, primitive, Rational, Vector};

/// Row-major rational matrix with fixed shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when there are no rows.
    pub fn from_rows(rows: &[Vector], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimMismatch { expected: cols, got: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector> = rows.iter().map(|r| crate::rational::ivec(r)).collect();
        Matrix::from_rows(&rows, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rank(&self.row_vecs(), self.cols)
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        nullspace(&self.row_vecs(), self.cols)
    }
}

/// Reduced row echelon form. Returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vector], cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &f * s;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of the orthogonal complement of the row space, one vector per free
/// column, scaled to primitive integers.
pub fn nullspace(rows: &[Vector], cols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            primitive(&v)
        })
        .collect()
}

/// Canonical basis (RREF rows) of the span of `rows`.
pub fn span_basis(rows: &[Vector], cols: usize) -> Vec<Vector> {
    rref(rows, cols).0
}

/// Solves `A x = b` for one solution, if any.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vector> {
    let aug: Vec<Vector> = (0..a.rows())
        .map(|r| {
            let mut v = a.row(r).to_vec();
            v.push(b[r].clone());
            v
        })
        .collect();
    let (red, pivots) = rref(&aug, a.cols() + 1);
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); a.cols()];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[a.cols()].clone();
    }
    Some(x)
}

/// True iff `v` lies in the span of `rows`.
pub fn in_span(rows: &[Vector], v: &[Rational]) -> bool {
    let cols = v.len();
    let r0 = rank(rows, cols);
    let mut with = rows.to_vec();
    with.push(v.to_vec());
    rank(&with, cols) == r0
}

/// Orthogonal projection of `v` onto the span of `rows` (standard inner product).
pub fn project_onto_span(rows: &[Vector], v: &[Rational]) -> Vector {
    let cols = v.len();
    let basis = span_basis(rows, cols);
    if basis.is_empty() {
        return vec![Rational::zero(); cols];
    }
    let k = basis.len();
    let gram: Vec<Vector> = (0..k).map(|i| (0..k).map(|j| dot(&basis[i], &basis[j])).collect()).collect();
    let rhs: Vector = basis.iter().map(|b| dot(b, v)).collect();
    let g = Matrix::from_rows(&gram, k).expect("square gram");
    let c = solve(&g, &rhs).expect("gram matrix of a basis is invertible");
    let mut out = vec![Rational::zero(); cols];
    for (ci, b) in c.iter().zip(&basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += ci * x;
        }
    }
    out
}
