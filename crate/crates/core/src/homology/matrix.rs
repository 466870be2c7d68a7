//! Polynomial matrices, stored by columns.

use std::fmt;

use crate::field::Coeff;
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// A `rows x cols` matrix; column `j` is the image of the `j`-th basis
/// vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<C: Coeff> {
    ring: RingRef,
    rows: usize,
    cols: Vec<Vec<Polynomial<C>>>,
}

impl<C: Coeff> Matrix<C> {
    pub fn new(ring: &RingRef, rows: usize, cols: Vec<Vec<Polynomial<C>>>) -> Self {
        assert!(cols.iter().all(|c| c.len() == rows), "column length must equal the row count");
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
        }
    }

    pub fn zero(ring: &RingRef, rows: usize, ncols: usize) -> Self {
        Matrix::new(ring, rows, vec![vec![Polynomial::zero(ring); rows]; ncols])
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.cols[i][i] = Polynomial::one(ring);
        }
        m
    }

    /// A `1 x n` matrix.
    pub fn row(ring: &RingRef, entries: Vec<Polynomial<C>>) -> Self {
        Matrix::new(ring, 1, entries.into_iter().map(|e| vec![e]).collect())
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial<C>>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zero(ring, nrows, ncols);
        for (i, r) in rows.into_iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged rows");
            for (j, e) in r.into_iter().enumerate() {
                m.cols[j][i] = e;
            }
        }
        m
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vec<Polynomial<C>>] {
        &self.cols
    }

    pub fn into_columns(self) -> Vec<Vec<Polynomial<C>>> {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[Polynomial<C>] {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<C> {
        &self.cols[j][i]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Polynomial<C>) {
        self.cols[j][i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|e| e.is_zero()))
    }

    /// `self * other`.
    pub fn mul(&self, other: &Matrix<C>) -> Matrix<C> {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch");
        let cols = other
            .cols
            .iter()
            .map(|oc| {
                let mut out = vec![Polynomial::zero(&self.ring); self.rows];
                for (k, e) in oc.iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    for (i, slot) in out.iter_mut().enumerate() {
                        let a = &self.cols[k][i];
                        if !a.is_zero() {
                            *slot = &*slot + &(a * e);
                        }
                    }
                }
                out
            })
            .collect();
        Matrix::new(&self.ring, self.rows, cols)
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Matrix<C>) -> Matrix<C> {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Matrix::new(&self.ring, self.rows, cols)
    }

    /// `self ⊗ I_n`: every entry becomes a scalar `n x n` block.
    pub fn kron_identity(&self, n: usize) -> Matrix<C> {
        if n == 1 {
            return self.clone();
        }
        let mut out = Matrix::zero(&self.ring, self.rows * n, self.ncols() * n);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, e) in col.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                for k in 0..n {
                    out.cols[j * n + k][i * n + k] = e.clone();
                }
            }
        }
        out
    }

    /// Block diagonal matrix with `copies` copies of `self`.
    pub fn block_diagonal(&self, copies: usize) -> Matrix<C> {
        let mut out = Matrix::zero(&self.ring, self.rows * copies, self.ncols() * copies);
        for c in 0..copies {
            for (j, col) in self.cols.iter().enumerate() {
                for (i, e) in col.iter().enumerate() {
                    out.cols[c * self.ncols() + j][c * self.rows + i] = e.clone();
                }
            }
        }
        out
    }

    /// Keeps the first `n` rows.
    pub fn top_rows(&self, n: usize) -> Matrix<C> {
        Matrix::new(
            &self.ring,
            n,
            self.cols.iter().map(|c| c[..n].to_vec()).collect(),
        )
    }

    pub fn without_zero_columns(mut self) -> Matrix<C> {
        self.cols.retain(|c| c.iter().any(|e| !e.is_zero()));
        self
    }

    pub fn remove_row(&mut self, i: usize) {
        for c in &mut self.cols {
            c.remove(i);
        }
        self.rows -= 1;
    }

    pub fn remove_column(&mut self, j: usize) {
        self.cols.remove(j);
    }

    /// `col[target] -= factor * col[source]`.
    pub fn column_axpy(&mut self, target: usize, factor: &Polynomial<C>, source: usize) {
        let src = self.cols[source].clone();
        for (t, s) in self.cols[target].iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *t = &*t - &(factor * s);
            }
        }
    }

    /// Applies a ring map entrywise.
    pub fn map_entries<F: FnMut(&Polynomial<C>) -> Polynomial<C>>(&self, target: &RingRef, mut f: F) -> Matrix<C> {
        Matrix::new(
            target,
            self.rows,
            self.cols.iter().map(|c| c.iter().map(&mut f).collect()).collect(),
        )
    }
}

impl<C: Coeff> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.cols.iter().map(|c| c[i].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
