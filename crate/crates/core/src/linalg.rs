//! Direct solvers and a small dense matrix type.
//!
//! Collocation matrices on a tensor grid with x-fastest numbering are banded
//! with half-bandwidth about `p·ν_x`, so a band LU with partial pivoting is
//! the direct sparse solver used throughout.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::sparse::CsrMatrix;
use crate::{Error, Result};

/// A factorized square operator.
pub trait LinearSolver {
    fn dim(&self) -> usize;

    /// Overwrites `b` with `A⁻¹ b`.
    fn solve_in_place(&self, b: &mut [f64]);

    /// Overwrites `b` with `A⁻ᵀ b`.
    fn solve_transpose_in_place(&self, b: &mut [f64]);

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

/// LU factorization with partial pivoting of a banded matrix, stored in the
/// LAPACK `gbtrf` column layout.
#[derive(Debug, Clone)]
pub struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    /// Leading dimension, `2 kl + ku + 1`.
    ld: usize,
    ab: Vec<f64>,
    pivots: Vec<usize>,
}

impl BandedLu {
    pub fn factor(a: &CsrMatrix) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                got: a.ncols(),
            });
        }
        let n = a.nrows();
        let (kl, ku) = a.bandwidths();
        let ld = 2 * kl + ku + 1;
        let mut lu = Self {
            n,
            kl,
            ku,
            ld,
            ab: vec![0.0; ld * n],
            pivots: vec![0; n],
        };
        for (r, c, v) in a.triplets() {
            let idx = lu.pos(r, c);
            lu.ab[idx] = v;
        }
        lu.factorize()?;
        Ok(lu)
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.kl, self.ku)
    }

    #[inline]
    fn pos(&self, r: usize, c: usize) -> usize {
        c * self.ld + self.kl + self.ku + r - c
    }

    fn factorize(&mut self) -> Result<()> {
        let (n, kl, ku, ld) = (self.n, self.kl, self.ku, self.ld);
        let kv = kl + ku;
        // last column touched by row interchanges so far
        let mut ju = 0usize;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let col = j * ld + kv;
            let mut jp = 0;
            let mut best = self.ab[col].abs();
            for i in 1..=km {
                let v = self.ab[col + i].abs();
                if v > best {
                    best = v;
                    jp = i;
                }
            }
            self.pivots[j] = j + jp;
            if best == 0.0 || !best.is_finite() {
                return Err(Error::SingularMatrix { column: j });
            }
            ju = ju.max((j + ku + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    let a = self.pos(j, c);
                    let b = self.pos(j + jp, c);
                    self.ab.swap(a, b);
                }
            }
            let pivot = self.ab[col];
            let inv = 1.0 / pivot;
            for v in &mut self.ab[col + 1..=col + km] {
                *v *= inv;
            }
            if km == 0 {
                continue;
            }
            let (head, tail) = self.ab.split_at_mut((j + 1) * ld);
            let multipliers = &head[col + 1..=col + km];
            for c in j + 1..=ju {
                let base = (c - j - 1) * ld;
                // row j of column c sits at offset kv + j - c
                let top = base + kv + j - c;
                let t = tail[top];
                if t != 0.0 {
                    for (x, &m) in tail[top + 1..=top + km].iter_mut().zip(multipliers) {
                        *x -= m * t;
                    }
                }
            }
        }
        Ok(())
    }
}

impl LinearSolver for BandedLu {
    fn dim(&self) -> usize {
        self.n
    }

    fn solve_in_place(&self, b: &mut [f64]) {
        let (n, kl, ku, ld) = (self.n, self.kl, self.ku, self.ld);
        assert_eq!(b.len(), n);
        let kv = kl + ku;
        // L y = P b
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let p = self.pivots[j];
            if p != j {
                b.swap(j, p);
            }
            let t = b[j];
            if t != 0.0 {
                let col = j * ld + kv;
                for (x, &m) in b[j + 1..=j + km].iter_mut().zip(&self.ab[col + 1..=col + km]) {
                    *x -= m * t;
                }
            }
        }
        // U x = y, U has upper bandwidth kl + ku
        for j in (0..n).rev() {
            let col = j * ld + kv;
            b[j] /= self.ab[col];
            let t = b[j];
            let lo = j.saturating_sub(kv);
            if t != 0.0 {
                let top = col - (j - lo);
                for (x, &u) in b[lo..j].iter_mut().zip(&self.ab[top..col]) {
                    *x -= u * t;
                }
            }
        }
    }

    fn solve_transpose_in_place(&self, b: &mut [f64]) {
        let (n, kl, ku, ld) = (self.n, self.kl, self.ku, self.ld);
        assert_eq!(b.len(), n);
        let kv = kl + ku;
        // Uᵀ y = b
        for j in 0..n {
            let col = j * ld + kv;
            let lo = j.saturating_sub(kv);
            let top = col - (j - lo);
            let s: f64 = b[lo..j].iter().zip(&self.ab[top..col]).map(|(x, u)| x * u).sum();
            b[j] = (b[j] - s) / self.ab[col];
        }
        // Lᵀ z = y, then undo the interchanges
        for j in (0..n).rev() {
            let km = kl.min(n - 1 - j);
            let col = j * ld + kv;
            let s: f64 = b[j + 1..=j + km]
                .iter()
                .zip(&self.ab[col + 1..=col + km])
                .map(|(x, m)| x * m)
                .sum();
            b[j] -= s;
            let p = self.pivots[j];
            if p != j {
                b.swap(j, p);
            }
        }
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_csr(a: &CsrMatrix) -> Self {
        Self::from_row_major(a.nrows(), a.ncols(), a.to_dense())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.cols + c]
    }
}
