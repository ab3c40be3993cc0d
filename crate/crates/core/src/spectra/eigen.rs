//! Eigenvalues of dense real nonsymmetric matrices: diagonal balancing,
//! Householder reduction to upper Hessenberg form, then Francis double-shift
//! QR iteration (the EISPACK `balanc`/`orthes`/`hqr` sequence).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::DenseMatrix;
use crate::math;
use crate::{Error, Result};

/// Largest matrix accepted by [`eigenvalues_dense`].
pub const DENSE_EIGEN_CAP: usize = 2500;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenOutput {
    pub values: Vec<Complex64>,
    /// `false` when the QR iteration hit its sweep budget; entries that never
    /// deflated are then the current diagonal of the Hessenberg matrix.
    pub converged: bool,
    pub sweeps: usize,
}

/// All eigenvalues of a square matrix of size at most [`DENSE_EIGEN_CAP`].
pub fn eigenvalues_dense(a: &DenseMatrix) -> Result<EigenOutput> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            got: a.cols(),
        });
    }
    if a.rows() > DENSE_EIGEN_CAP {
        return Err(Error::TooLarge {
            dof: a.rows(),
            cap: DENSE_EIGEN_CAP,
        });
    }
    Ok(eigenvalues_unbounded(a))
}

/// Same as [`eigenvalues_dense`] without the size cap.
pub fn eigenvalues_unbounded(a: &DenseMatrix) -> EigenOutput {
    let n = a.rows();
    let mut h = a.as_slice().to_vec();
    if n == 0 {
        return EigenOutput {
            values: Vec::new(),
            converged: true,
            sweeps: 0,
        };
    }
    balance(&mut h, n);
    hessenberg(&mut h, n);
    hqr(&mut h, n)
}

/// Eigenvalues of `B_y ⊗ B_x` from those of its factors: every product
/// `μ_j λ_i`, enumerated x-fastest.
pub fn kronecker_eigenvalues(factor_x: &[Complex64], factor_y: &[Complex64]) -> Vec<Complex64> {
    factor_y
        .iter()
        .flat_map(|&mu| factor_x.iter().map(move |&lambda| mu * lambda))
        .collect()
}

/// Radix-2 diagonal scaling so row and column norms are comparable.
fn balance(a: &mut [f64], n: usize) {
    const RADIX: f64 = 2.0;
    const RADIX_SQ: f64 = RADIX * RADIX;
    for _ in 0..100 {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j * n + i].abs();
                    r += a[i * n + j].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX_SQ;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX_SQ;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for v in &mut a[i * n..(i + 1) * n] {
                    *v *= inv;
                }
                for j in 0..n {
                    a[j * n + i] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Householder similarity reduction to upper Hessenberg form.
fn hessenberg(h: &mut [f64], n: usize) {
    if n < 3 {
        return;
    }
    let high = n - 1;
    let mut ort = vec![0.0; n];
    let mut f = vec![0.0; n];
    for m in 1..high {
        let scale: f64 = (m..=high).map(|i| h[i * n + m - 1].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut hh = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[i * n + m - 1] / scale;
            hh += ort[i] * ort[i];
        }
        let mut g = math::sqrt(hh);
        if ort[m] > 0.0 {
            g = -g;
        }
        hh -= ort[m] * g;
        ort[m] -= g;

        // H = (I - u uᵀ / hh) H
        f[m..n].iter_mut().for_each(|v| *v = 0.0);
        for i in m..=high {
            let o = ort[i];
            let row = &h[i * n..(i + 1) * n];
            for j in m..n {
                f[j] += o * row[j];
            }
        }
        for v in &mut f[m..n] {
            *v /= hh;
        }
        for i in m..=high {
            let o = ort[i];
            let row = &mut h[i * n..(i + 1) * n];
            for j in m..n {
                row[j] -= f[j] * o;
            }
        }
        // H = H (I - u uᵀ / hh)
        for i in 0..=high {
            let row = &mut h[i * n..(i + 1) * n];
            let s: f64 = (m..=high).map(|j| ort[j] * row[j]).sum::<f64>() / hh;
            for j in m..=high {
                row[j] -= s * ort[j];
            }
        }
        ort[m] *= scale;
        h[m * n + m - 1] = scale * g;
    }
    for i in 2..n {
        for j in 0..i - 1 {
            h[i * n + j] = 0.0;
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
fn hqr(h: &mut [f64], nn: usize) -> EigenOutput {
    let idx = |i: isize, j: isize| i as usize * nn + j as usize;
    let mut re = vec![0.0; nn];
    let mut im = vec![0.0; nn];
    let eps = f64::EPSILON;
    let low: isize = 0;
    let max_sweeps = 30 * nn;
    let mut sweeps = 0usize;

    let mut norm = 0.0;
    for i in 0..nn {
        for j in i.saturating_sub(1)..nn {
            norm += h[i * nn + j].abs();
        }
    }

    let mut n = nn as isize - 1;
    let mut exshift = 0.0;
    let mut iter = 0;
    let (mut p, mut q, mut r) = (0.0f64, 0.0f64, 0.0f64);
    let mut s: f64;
    let mut z: f64;
    let mut converged = true;

    while n >= low {
        // look for a single small sub-diagonal element
        let mut l = n;
        while l > low {
            s = h[idx(l - 1, l - 1)].abs() + h[idx(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[idx(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // one root
            h[idx(n, n)] += exshift;
            re[n as usize] = h[idx(n, n)];
            im[n as usize] = 0.0;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // two roots
            let w = h[idx(n, n - 1)] * h[idx(n - 1, n)];
            p = (h[idx(n - 1, n - 1)] - h[idx(n, n)]) / 2.0;
            q = p * p + w;
            z = math::sqrt(q.abs());
            h[idx(n, n)] += exshift;
            h[idx(n - 1, n - 1)] += exshift;
            let x = h[idx(n, n)];
            let (a, b) = ((n - 1) as usize, n as usize);
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                re[a] = x + z;
                re[b] = re[a];
                if z != 0.0 {
                    re[b] = x - w / z;
                }
                im[a] = 0.0;
                im[b] = 0.0;
            } else {
                re[a] = x + p;
                re[b] = x + p;
                im[a] = z;
                im[b] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            if sweeps >= max_sweeps {
                converged = false;
                for i in 0..=n {
                    re[i as usize] = h[idx(i, i)] + exshift;
                    im[i as usize] = 0.0;
                }
                break;
            }
            let mut x = h[idx(n, n)];
            let mut y = 0.0;
            let mut w = 0.0;
            if l < n {
                y = h[idx(n - 1, n - 1)];
                w = h[idx(n, n - 1)] * h[idx(n - 1, n)];
            }
            // exceptional shifts
            if iter == 10 {
                exshift += x;
                for i in low..=n {
                    h[idx(i, i)] -= x;
                }
                s = h[idx(n, n - 1)].abs() + h[idx(n - 1, n - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = math::sqrt(s);
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=n {
                        h[idx(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }
            iter += 1;
            sweeps += 1;

            // look for two consecutive small sub-diagonal elements
            let mut m = n - 2;
            while m >= l {
                z = h[idx(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[idx(m + 1, m)] + h[idx(m, m + 1)];
                q = h[idx(m + 1, m + 1)] - z - r - s;
                r = h[idx(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[idx(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps * (p.abs() * (h[idx(m - 1, m - 1)].abs() + z.abs() + h[idx(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }

            for i in m + 2..=n {
                h[idx(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[idx(i, i - 3)] = 0.0;
                }
            }

            // double QR step on rows l..=n, columns m..=n
            let mut k = m;
            while k < n {
                let notlast = k != n - 1;
                let mut scale = 1.0;
                if k != m {
                    p = h[idx(k, k - 1)];
                    q = h[idx(k + 1, k - 1)];
                    r = if notlast { h[idx(k + 2, k - 1)] } else { 0.0 };
                    scale = p.abs() + q.abs() + r.abs();
                    if scale == 0.0 {
                        k += 1;
                        continue;
                    }
                    p /= scale;
                    q /= scale;
                    r /= scale;
                }
                s = math::sqrt(p * p + q * q + r * r);
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m {
                        h[idx(k, k - 1)] = -s * scale;
                    } else if l != m {
                        h[idx(k, k - 1)] = -h[idx(k, k - 1)];
                    }
                    p += s;
                    let xx = p / s;
                    let yy = q / s;
                    let zz = r / s;
                    q /= p;
                    r /= p;

                    // row modification
                    let (rk, rk1) = (k as usize * nn, (k + 1) as usize * nn);
                    let rk2 = (k + 2) as usize * nn;
                    for j in k as usize..=n as usize {
                        let mut t = h[rk + j] + q * h[rk1 + j];
                        if notlast {
                            t += r * h[rk2 + j];
                            h[rk2 + j] -= t * zz;
                        }
                        h[rk + j] -= t * xx;
                        h[rk1 + j] -= t * yy;
                    }
                    // column modification
                    let top = n.min(k + 3);
                    let (ck, ck1, ck2) = (k as usize, (k + 1) as usize, (k + 2) as usize);
                    for i in l as usize..=top as usize {
                        let row = i * nn;
                        let mut t = xx * h[row + ck] + yy * h[row + ck1];
                        if notlast {
                            t += zz * h[row + ck2];
                            h[row + ck2] -= t * r;
                        }
                        h[row + ck] -= t;
                        h[row + ck1] -= t * q;
                    }
                }
                k += 1;
            }
        }
    }

    EigenOutput {
        values: re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect(),
        converged,
        sweeps,
    }
}
