//! Dense Gaussian elimination over F_p.
//!
//! Pivoting is always by column order, so every routine here is
//! deterministic and the reduced row-echelon form it produces is canonical
//! for the row space.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// A dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from explicit rows; every row must have length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.into_iter().map(|x| field.reduce(x)));
        }
        Ok(Self {
            field,
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }
}

/// `dst += c * src` on the columns `from..`.
#[inline]
fn axpy(field: &PrimeField, dst: &mut [u64], src: &[u64], c: u64, from: usize) {
    for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
        *d = field.mul_add(*d, c, s);
    }
}

/// Incremental row echelon form.
///
/// Rows are kept sorted by pivot, each with a unit pivot and zeros to its
/// left. [`Echelon::into_reduced`] finishes the job to reduced form.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        Self {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` in place against the current rows. Afterwards `v` is zero
    /// in every pivot column.
    pub fn reduce(&self, v: &mut [u64]) {
        debug_assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                axpy(&self.field, v, row, self.field.neg(c), p);
            }
        }
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        let inv = self.field.inv(v[pivot])?;
        for x in &mut v[pivot..] {
            *x = self.field.mul(*x, inv);
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        Ok(true)
    }

    /// Back-substitutes into reduced row-echelon form.
    pub fn into_reduced(mut self) -> (Vec<Vec<u64>>, Vec<usize>) {
        for i in (0..self.rows.len()).rev() {
            let p = self.pivots[i];
            let (above, rest) = self.rows.split_at_mut(i);
            let src = &rest[0];
            for row in above.iter_mut() {
                let c = row[p];
                if c != 0 {
                    axpy(&self.field, row, src, self.field.neg(c), p);
                }
            }
        }
        (self.rows, self.pivots)
    }
}

/// Reduced row-echelon form of the given rows: `(rows, pivot columns)`.
pub fn rref(field: PrimeField, cols: usize, rows: impl IntoIterator<Item = Vec<u64>>) -> Result<(Vec<Vec<u64>>, Vec<usize>)> {
    let mut e = Echelon::new(field, cols);
    for r in rows {
        if e.is_full() {
            break;
        }
        e.insert(r)?;
    }
    Ok(e.into_reduced())
}

pub fn echelon_rank(a: &Matrix) -> usize {
    let mut e = Echelon::new(a.field, a.cols);
    for r in 0..a.rows {
        if e.is_full() {
            break;
        }
        e.insert(a.row(r).to_vec()).expect("row length matches");
    }
    e.rank()
}

pub fn kernel_dim(a: &Matrix) -> usize {
    a.cols - echelon_rank(a)
}

/// A basis of `{ x : A x = 0 }`, one vector per free column.
pub fn kernel_basis(a: &Matrix) -> Vec<Vec<u64>> {
    let f = a.field;
    let (rows, pivots) = rref(f, a.cols, (0..a.rows).map(|r| a.row(r).to_vec()))
        .expect("row length matches");
    let mut is_pivot = vec![false; a.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..a.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![0u64; a.cols];
            x[free] = 1;
            for (row, &p) in rows.iter().zip(&pivots) {
                x[p] = f.neg(row[free]);
            }
            x
        })
        .collect()
}

/// One solution of `A x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(a: &Matrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let f = a.field;
    let augmented = (0..a.rows).map(|r| {
        let mut row = a.row(r).to_vec();
        row.push(f.reduce(b[r]));
        row
    });
    let (rows, pivots) = rref(f, a.cols + 1, augmented)?;
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![0u64; a.cols];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[a.cols];
    }
    Ok(Some(x))
}

/// `A x`.
pub fn mat_vec(a: &Matrix, x: &[u64]) -> Result<Vec<u64>> {
    if x.len() != a.cols {
        return Err(Error::DimensionMismatch {
            expected: a.cols,
            found: x.len(),
        });
    }
    Ok((0..a.rows)
        .map(|r| {
            a.row(r)
                .iter()
                .zip(x)
                .fold(0, |acc, (&m, &v)| a.field.mul_add(acc, m, v))
        })
        .collect())
}
