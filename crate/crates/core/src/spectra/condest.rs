//! 1-norm condition estimation.
//!
//! `‖A⁻¹‖₁` is estimated with Hager's power method on the dual norm as
//! refined by Higham (the LAPACK `dlacn2` iteration): at most five rounds of
//! solves with `A` and `Aᵀ` against sign vectors, followed by the
//! alternating-sign test vector. Every candidate is a ratio `‖A⁻¹x‖₁/‖x‖₁`,
//! so the estimate never exceeds the true norm.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::{BandedLu, LinearSolver};
use crate::sparse::CsrMatrix;
use crate::{Error, Result};

const MAX_ITERATIONS: usize = 5;

/// Lower-bound estimate of `‖A⁻¹‖₁` from a factorization of `A`.
pub fn inverse_norm_one_estimate<S: LinearSolver + ?Sized>(solver: &S) -> f64 {
    let n = solver.dim();
    if n == 0 {
        return 0.0;
    }
    let norm1 = |v: &[f64]| v.iter().map(|x| x.abs()).sum::<f64>();
    let sign = |x: f64| if x >= 0.0 { 1.0 } else { -1.0 };

    let mut x = vec![1.0 / n as f64; n];
    solver.solve_in_place(&mut x);
    if n == 1 {
        return x[0].abs();
    }
    let mut est = norm1(&x);
    let mut signs: Vec<f64> = x.iter().map(|&v| sign(v)).collect();
    let mut z = signs.clone();
    solver.solve_transpose_in_place(&mut z);
    let mut j = argmax_abs(&z);

    for iteration in 2..=MAX_ITERATIONS + 1 {
        let mut y = vec![0.0; n];
        y[j] = 1.0;
        solver.solve_in_place(&mut y);
        let previous = est;
        est = norm1(&y);
        let new_signs: Vec<f64> = y.iter().map(|&v| sign(v)).collect();
        if new_signs == signs || est <= previous {
            est = est.max(previous);
            break;
        }
        signs = new_signs;
        let mut z = signs.clone();
        solver.solve_transpose_in_place(&mut z);
        let last = j;
        j = argmax_abs(&z);
        if z[last].abs() == z[j].abs() || iteration > MAX_ITERATIONS {
            break;
        }
    }

    // alternating-sign vector catches matrices where the iteration stalls
    let mut alt: Vec<f64> = (0..n)
        .map(|i| {
            let mag = 1.0 + i as f64 / (n - 1) as f64;
            if i % 2 == 0 {
                mag
            } else {
                -mag
            }
        })
        .collect();
    solver.solve_in_place(&mut alt);
    let alt_est = 2.0 * norm1(&alt) / (3.0 * n as f64);
    est.max(alt_est)
}

fn argmax_abs(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    best
}

/// `‖A‖₁ · est(‖A⁻¹‖₁)`; a singular matrix reports `f64::INFINITY`.
pub fn cond_estimate_1norm(a: &CsrMatrix) -> Result<f64> {
    match BandedLu::factor(a) {
        Ok(lu) => Ok(cond_estimate_with(a, &lu)),
        Err(Error::SingularMatrix { .. }) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// Condition estimate reusing an existing factorization of `a`.
pub fn cond_estimate_with<S: LinearSolver + ?Sized>(a: &CsrMatrix, solver: &S) -> f64 {
    a.norm_one() * inverse_norm_one_estimate(solver)
}
