//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use iga_spectra_core::Complex64;

/// Open uniform knots with interior multiplicity `p - k`, built directly.
pub fn knots(p: usize, n: usize, k: usize) -> Vec<f64> {
    let mut t = vec![0.0; p + 1];
    for e in 1..n {
        for _ in 0..p - k {
            t.push(e as f64 / n as f64);
        }
    }
    t.extend(std::iter::repeat_n(1.0, p + 1));
    t
}

/// Elementary symmetric polynomial `e_q` of the values.
fn elementary_symmetric(values: &[f64], q: usize) -> f64 {
    let mut e = vec![0.0; q + 1];
    e[0] = 1.0;
    for &v in values {
        for j in (1..=q).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e[q]
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// B-spline coefficients of `x^q` (`q ≤ p`) from Marsden's identity: the
/// symmetric means of the `p` interior knots of each function.
pub fn monomial_coefficients(t: &[f64], p: usize, q: usize) -> Vec<f64> {
    let n = t.len() - p - 1;
    (0..n)
        .map(|i| elementary_symmetric(&t[i + 1..=i + p], q) / binomial(p, q))
        .collect()
}

/// Whether `N_i` is nonzero at `x`: open support, plus the interpolating end
/// functions at the domain ends.
pub fn in_support(t: &[f64], p: usize, i: usize, x: f64) -> bool {
    let n = t.len() - p - 1;
    (t[i] < x && x < t[i + p + 1]) || (x == 0.0 && i == 0) || (x == 1.0 && i == n - 1)
}

pub fn greville(t: &[f64], p: usize) -> Vec<f64> {
    let n = t.len() - p - 1;
    (0..n).map(|i| t[i + 1..=i + p].iter().sum::<f64>() / p as f64).collect()
}

/// Explicit inverse by Gauss-Jordan elimination with partial pivoting.
pub fn inverse(a: &[f64], n: usize) -> Vec<f64> {
    let mut m = a.to_vec();
    let mut inv = vec![0.0; n * n];
    for i in 0..n {
        inv[i * n + i] = 1.0;
    }
    for c in 0..n {
        let piv = (c..n)
            .max_by(|&x, &y| m[x * n + c].abs().total_cmp(&m[y * n + c].abs()))
            .unwrap();
        for j in 0..n {
            m.swap(c * n + j, piv * n + j);
            inv.swap(c * n + j, piv * n + j);
        }
        let d = m[c * n + c];
        assert!(d != 0.0, "singular");
        for j in 0..n {
            m[c * n + j] /= d;
            inv[c * n + j] /= d;
        }
        for r in 0..n {
            if r != c {
                let f = m[r * n + c];
                if f != 0.0 {
                    for j in 0..n {
                        m[r * n + j] -= f * m[c * n + j];
                        inv[r * n + j] -= f * inv[c * n + j];
                    }
                }
            }
        }
    }
    inv
}

pub fn norm_one_dense(a: &[f64], n: usize) -> f64 {
    (0..n)
        .map(|c| (0..n).map(|r| a[r * n + c].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Characteristic polynomial coefficients `[1, c_1, ..., c_n]` of
/// `det(λI − A)` by the Faddeev-LeVerrier recursion.
pub fn char_poly(a: &[f64], n: usize) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    let mut m = vec![0.0; n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let c_prev = *coeffs.last().unwrap();
        let mut next = vec![0.0; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut s = 0.0;
                for j in 0..n {
                    s += a[r * n + j] * m[j * n + c];
                }
                next[r * n + c] = s + if r == c { c_prev } else { 0.0 };
            }
        }
        m = next;
        let mut trace = 0.0;
        for r in 0..n {
            for j in 0..n {
                trace += a[r * n + j] * m[j * n + r];
            }
        }
        coeffs.push(-trace / k as f64);
    }
    coeffs
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of a monic polynomial by Durand-Kerner, polished with Newton.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let radius = 1.0 + coeffs[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let (p, _) = horner(coeffs, z[i]);
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = p / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    for r in &mut z {
        for _ in 0..3 {
            let (p, dp) = horner(coeffs, *r);
            if dp.norm() > 0.0 {
                *r -= p / dp;
            }
        }
    }
    z
}

/// Largest distance between two multisets under greedy nearest matching.
pub fn match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}
