//! Isogeometric collocation of the 2D acoustic wave equation on the unit
//! square, with Newmark time stepping and the spectral tooling used to study
//! the resulting mass and stiffness matrices.
//!
//! The crate is `no_std` (with `alloc`) so the numerical kernels can be
//! embedded anywhere; file formats, timing and the experiment CLI live in the
//! `iga-spectra` companion crate.
//!
//! Pipeline, bottom-up:
//!
//! * [`splines`]: open knot vectors, B-spline/NURBS evaluation, Greville points.
//! * [`grid`]: tensor-product collocation grid and boundary classification.
//! * [`assembly`]: collocation matrices `D0`, `D1`, `D2`, the Newmark system
//!   matrix and its right-hand side.
//! * [`newmark`]: displacement-only two-step time integration.
//! * [`spectra`]: dense eigenvalues, 1-norm condition estimation, sparsity
//!   statistics, reference bounds and scaling fits.
#![cfg_attr(not(any(test, feature = "std")), no_std)]
// NaN-rejecting checks are written as negated comparisons on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod assembly;
pub mod config;
pub mod error;
pub mod grid;
pub mod linalg;
mod math;
pub mod newmark;
pub mod sparse;
pub mod spectra;
pub mod splines;

pub use error::{Error, Result};
pub use num_complex::Complex64;
