//! Compressed sparse row matrices.
//!
//! Column indices are sorted within each row. Entries are structural: an
//! entry that happens to evaluate to a tiny or zero value is kept once it has
//! been inserted, so `nnz` reflects the assembly pattern.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

/// Row-by-row builder; rows are appended in order.
#[derive(Debug, Clone)]
pub struct CsrBuilder {
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrBuilder {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            row_ptr: vec![0],
            col_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Appends a row. Entries may come in any order; duplicates are summed.
    pub fn push_row(&mut self, entries: &mut [(usize, f64)]) {
        entries.sort_unstable_by_key(|e| e.0);
        let start = self.col_idx.len();
        for &(c, v) in entries.iter() {
            debug_assert!(c < self.ncols);
            if self.col_idx.len() > start && *self.col_idx.last().unwrap() == c {
                *self.values.last_mut().unwrap() += v;
            } else {
                self.col_idx.push(c);
                self.values.push(v);
            }
        }
        self.row_ptr.push(self.col_idx.len());
    }

    pub fn push_empty_row(&mut self) {
        self.row_ptr.push(self.col_idx.len());
    }

    pub fn finish(self) -> CsrMatrix {
        CsrMatrix {
            nrows: self.row_ptr.len() - 1,
            ncols: self.ncols,
            row_ptr: self.row_ptr,
            col_idx: self.col_idx,
            values: self.values,
        }
    }
}

impl CsrMatrix {
    pub fn identity(n: usize) -> Self {
        Self {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            col_idx: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    /// From a row-major dense array, keeping only nonzero values.
    pub fn from_dense(nrows: usize, ncols: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), nrows * ncols);
        let mut b = CsrBuilder::new(ncols);
        let mut row = Vec::new();
        for r in 0..nrows {
            row.clear();
            row.extend(
                data[r * ncols..(r + 1) * ncols]
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0.0)
                    .map(|(c, v)| (c, *v)),
            );
            b.push_row(&mut row);
        }
        b.finish()
    }

    /// From `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); nrows];
        for &(r, c, v) in triplets {
            rows[r].push((c, v));
        }
        let mut b = CsrBuilder::new(ncols);
        for row in rows.iter_mut() {
            b.push_row(row);
        }
        b.finish()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> (&[usize], &[f64]) {
        let range = self.row_ptr[r]..self.row_ptr[r + 1];
        (&self.col_idx[range.clone()], &self.values[range])
    }

    pub fn row_nnz(&self, r: usize) -> usize {
        self.row_ptr[r + 1] - self.row_ptr[r]
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (cols, vals) = self.row(r);
        cols.binary_search(&c).map_or(0.0, |i| vals[i])
    }

    /// Iterates `(row, col, value)` in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |r| {
            let (cols, vals) = self.row(r);
            cols.iter().zip(vals).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn row_dot(&self, r: usize, x: &[f64]) -> f64 {
        let (cols, vals) = self.row(r);
        cols.iter().zip(vals).map(|(&c, &v)| v * x[c]).sum()
    }

    /// `y = A x`
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols);
        (0..self.nrows).map(|r| self.row_dot(r, x)).collect()
    }

    /// `y = Aᵀ x`
    pub fn mul_vec_transpose(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.nrows);
        let mut y = vec![0.0; self.ncols];
        for (r, c, v) in self.triplets() {
            y[c] += v * x[r];
        }
        y
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let mut sums = vec![0.0; self.ncols];
        for (&c, &v) in self.col_idx.iter().zip(&self.values) {
            sums[c] += v.abs();
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.nrows)
            .map(|r| self.row(r).1.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.nrows * self.ncols];
        for (r, c, v) in self.triplets() {
            out[r * self.ncols + c] = v;
        }
        out
    }

    /// `(lower, upper)` bandwidths: max of `r - c` and `c - r` over entries.
    pub fn bandwidths(&self) -> (usize, usize) {
        let mut lower = 0;
        let mut upper = 0;
        for (r, c, _) in self.triplets() {
            if r > c {
                lower = lower.max(r - c);
            } else {
                upper = upper.max(c - r);
            }
        }
        (lower, upper)
    }
}

/// Structural linear combination `Σ coeff_t · row_t`; terms whose
/// coefficient is exactly zero contribute no entries.
pub(crate) fn combine_rows(terms: &[(f64, &CsrMatrix)], r: usize, out: &mut Vec<(usize, f64)>) {
    out.clear();
    for &(coeff, m) in terms {
        if coeff == 0.0 {
            continue;
        }
        let (cols, vals) = m.row(r);
        out.extend(cols.iter().zip(vals).map(|(&c, &v)| (c, coeff * v)));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CsrMatrix {
        CsrMatrix::from_dense(3, 3, &[1.0, 0.0, -2.0, 0.0, 3.0, 0.0, 4.0, 5.0, 6.0])
    }

    #[test]
    fn structure_and_products() {
        let a = sample();
        assert_eq!(a.nnz(), 6);
        assert_eq!(a.get(0, 2), -2.0);
        assert_eq!(a.get(1, 0), 0.0);
        assert_eq!(a.mul_vec(&[1.0, 1.0, 1.0]), vec![-1.0, 3.0, 15.0]);
        assert_eq!(a.mul_vec_transpose(&[1.0, 0.0, 1.0]), vec![5.0, 5.0, 4.0]);
        assert_eq!(a.norm_one(), 8.0);
        assert_eq!(a.norm_inf(), 15.0);
        assert_eq!(a.bandwidths(), (2, 2));
    }

    #[test]
    fn builder_sums_duplicates_and_keeps_zeros() {
        let mut b = CsrBuilder::new(4);
        b.push_row(&mut [(3, 1.0), (1, 2.0), (3, -1.0)]);
        b.push_empty_row();
        let m = b.finish();
        assert_eq!(m.nrows(), 2);
        assert_eq!(m.row(0), (&[1usize, 3][..], &[2.0, 0.0][..]));
        assert_eq!(m.row_nnz(1), 0);
    }

    #[test]
    fn triplets_round_trip() {
        let a = sample();
        let t: Vec<_> = a.triplets().collect();
        assert_eq!(CsrMatrix::from_triplets(3, 3, &t), a);
        assert_eq!(CsrMatrix::identity(3).to_dense(), vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
    }
}
