//! Spectral analysis of the mass matrix `D0` and the Newmark system matrix.

pub mod bounds;
pub mod condest;
pub mod eigen;
pub mod fit;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::config::Configuration;
use crate::sparse::CsrMatrix;

pub use bounds::{galerkin_bound, BoundEstimate};
pub use condest::{cond_estimate_1norm, cond_estimate_with, inverse_norm_one_estimate};
pub use eigen::{eigenvalues_dense, eigenvalues_unbounded, kronecker_eigenvalues, EigenOutput, DENSE_EIGEN_CAP};
pub use fit::{fit_scaling, ScalingStudy};

/// Which matrix a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixTarget {
    Mass,
    Stiffness,
}

impl MatrixTarget {
    pub fn name(self) -> &'static str {
        match self {
            MatrixTarget::Mass => "mass",
            MatrixTarget::Stiffness => "stiffness",
        }
    }
}

impl fmt::Display for MatrixTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixTarget {
    type Err = &'static str;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mass" => Ok(MatrixTarget::Mass),
            "stiffness" => Ok(MatrixTarget::Stiffness),
            _ => Err("expected mass or stiffness"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsityStats {
    pub dof: usize,
    pub nz: usize,
    /// Row count keyed by structural nonzeros per row.
    pub row_histogram: BTreeMap<usize, usize>,
}

pub fn sparsity_stats(a: &CsrMatrix) -> SparsityStats {
    let mut row_histogram = BTreeMap::new();
    for r in 0..a.nrows() {
        *row_histogram.entry(a.row_nnz(r)).or_insert(0) += 1;
    }
    SparsityStats {
        dof: a.nrows(),
        nz: a.nnz(),
        row_histogram,
    }
}

/// Extremes of an eigenvalue cloud.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSummary {
    pub max_re: f64,
    pub min_re: f64,
    pub max_abs_im: f64,
    pub max_abs: f64,
    pub min_abs: f64,
}

impl EigenSummary {
    pub fn of(values: &[Complex64]) -> Option<Self> {
        let first = values.first()?;
        let mut s = EigenSummary {
            max_re: first.re,
            min_re: first.re,
            max_abs_im: first.im.abs(),
            max_abs: first.norm(),
            min_abs: first.norm(),
        };
        for z in &values[1..] {
            let m = z.norm();
            s.max_re = s.max_re.max(z.re);
            s.min_re = s.min_re.min(z.re);
            s.max_abs_im = s.max_abs_im.max(z.im.abs());
            s.max_abs = s.max_abs.max(m);
            s.min_abs = s.min_abs.min(m);
        }
        Some(s)
    }

    /// `max |Im λ| / max |Re λ|`.
    pub fn imaginary_ratio(&self) -> f64 {
        self.max_abs_im / self.max_re.abs().max(self.min_re.abs())
    }
}

/// Spectral data for one matrix of one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub target: MatrixTarget,
    pub config: Configuration,
    pub dof: usize,
    pub nz: usize,
    pub cond_est: Option<f64>,
    /// Empty unless eigenvalues were requested and computed.
    pub eigenvalues: Vec<Complex64>,
    pub eig_converged: bool,
    pub summary: Option<EigenSummary>,
    pub row_histogram: BTreeMap<usize, usize>,
    pub assembly_ms: f64,
    pub analysis_ms: f64,
}

impl SpectralReport {
    pub fn new(target: MatrixTarget, config: Configuration, matrix: &CsrMatrix) -> Self {
        let stats = sparsity_stats(matrix);
        Self {
            target,
            config,
            dof: stats.dof,
            nz: stats.nz,
            cond_est: None,
            eigenvalues: Vec::new(),
            eig_converged: false,
            summary: None,
            row_histogram: stats.row_histogram,
            assembly_ms: 0.0,
            analysis_ms: 0.0,
        }
    }

    pub fn eig_computed(&self) -> bool {
        !self.eigenvalues.is_empty()
    }

    pub fn set_eigenvalues(&mut self, out: EigenOutput) {
        self.summary = EigenSummary::of(&out.values);
        self.eig_converged = out.converged;
        self.eigenvalues = out.values;
    }
}
