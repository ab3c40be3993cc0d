//! Univariate open knot vectors, B-spline and NURBS bases, Greville abscissae.
//!
//! Basis evaluation follows the Cox-de Boor triangular scheme with the
//! derivative recurrence on the same table, so values, first and second
//! derivatives come out of a single pass. Rational (NURBS) bases are obtained
//! from the polynomial ones through the quotient rule.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest polynomial degree accepted by [`KnotVector::uniform`].
pub const MAX_DEGREE: usize = 20;

/// Open (clamped) knot vector on `[0, 1]` with uniform breakpoints.
///
/// Every interior breakpoint is repeated `p - k` times, giving a spline space
/// of global regularity `C^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector {
    degree: usize,
    regularity: usize,
    elements: usize,
    knots: Vec<f64>,
}

impl KnotVector {
    /// Builds the uniform open knot vector with `elements` elements of width
    /// `1 / elements`, degree `p` and regularity `k`.
    pub fn uniform(p: usize, elements: usize, k: usize) -> Result<Self> {
        if p == 0 || p > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(p));
        }
        if k >= p {
            return Err(Error::RegularityOutOfRange { p, k });
        }
        if elements == 0 {
            return Err(Error::NoElements);
        }
        let multiplicity = p - k;
        let mut knots = Vec::with_capacity(2 * (p + 1) + (elements - 1) * multiplicity);
        knots.extend(core::iter::repeat_n(0.0, p + 1));
        for j in 1..elements {
            let breakpoint = j as f64 / elements as f64;
            knots.extend(core::iter::repeat_n(breakpoint, multiplicity));
        }
        knots.extend(core::iter::repeat_n(1.0, p + 1));
        Ok(Self {
            degree: p,
            regularity: k,
            elements,
            knots,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn regularity(&self) -> usize {
        self.regularity
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    pub fn mesh_size(&self) -> f64 {
        1.0 / self.elements as f64
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Number of basis functions, `ν = (n - 1)(p - k) + p + 1`.
    pub fn num_basis(&self) -> usize {
        self.knots.len() - self.degree - 1
    }

    /// Knot span `s` with `knots[s] <= xi < knots[s + 1]` (right limit); the
    /// right end `xi = 1` maps to the last non-empty span (left limit).
    pub fn find_span(&self, xi: f64) -> usize {
        let p = self.degree;
        let last = self.num_basis() - 1;
        if xi >= self.knots[last + 1] {
            return last;
        }
        if xi <= self.knots[p] {
            return p;
        }
        // first index whose knot exceeds xi, minus one
        let upper = self.knots[p..=last + 1].partition_point(|&t| t <= xi) + p;
        upper - 1
    }

    /// Greville abscissae `(ξ_{i+1} + … + ξ_{i+p}) / p`, one per basis function.
    pub fn greville(&self) -> Vec<f64> {
        let p = self.degree;
        (0..self.num_basis())
            .map(|i| self.knots[i + 1..=i + p].iter().sum::<f64>() / p as f64)
            .collect()
    }
}

/// The `p + 1` basis functions that may be nonzero at one parameter value.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisEval {
    /// Index of the first function in `values`.
    pub first: usize,
    pub values: Vec<f64>,
    pub first_derivs: Vec<f64>,
    pub second_derivs: Vec<f64>,
}

impl BasisEval {
    /// Knot span the evaluation came from.
    pub fn span(&self) -> usize {
        self.first + self.values.len() - 1
    }

    /// Derivative row of the given order (0, 1 or 2).
    pub fn derivs(&self, order: usize) -> &[f64] {
        match order {
            0 => &self.values,
            1 => &self.first_derivs,
            _ => &self.second_derivs,
        }
    }

    /// Global indices paired with the chosen derivative row.
    pub fn iter_order(&self, order: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let first = self.first;
        self.derivs(order)
            .iter()
            .enumerate()
            .map(move |(i, &v)| (first + i, v))
    }
}

/// A univariate NURBS basis; unit weights give plain B-splines.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineBasis1D {
    knots: KnotVector,
    weights: Vec<f64>,
    rational: bool,
}

impl SplineBasis1D {
    pub fn new(knots: KnotVector) -> Self {
        let weights = vec![1.0; knots.num_basis()];
        Self {
            knots,
            weights,
            rational: false,
        }
    }

    pub fn with_weights(knots: KnotVector, weights: Vec<f64>) -> Result<Self> {
        let expected = knots.num_basis();
        if weights.len() != expected || weights.iter().any(|w| !(*w > 0.0) || !w.is_finite()) {
            return Err(Error::InvalidWeights {
                expected,
                got: weights.len(),
            });
        }
        let rational = weights.iter().any(|&w| w != 1.0);
        Ok(Self {
            knots,
            weights,
            rational,
        })
    }

    /// Shorthand for `SplineBasis1D::new(KnotVector::uniform(p, elements, k)?)`.
    pub fn uniform(p: usize, elements: usize, k: usize) -> Result<Self> {
        KnotVector::uniform(p, elements, k).map(Self::new)
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn degree(&self) -> usize {
        self.knots.degree
    }

    pub fn num_basis(&self) -> usize {
        self.knots.num_basis()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn is_rational(&self) -> bool {
        self.rational
    }

    pub fn greville(&self) -> Vec<f64> {
        self.knots.greville()
    }

    /// Values and up to `max_deriv` (≤ 2) derivatives of the nonzero basis
    /// functions at `xi`. Derivative rows beyond `max_deriv` are zero.
    pub fn eval(&self, xi: f64, max_deriv: usize) -> Result<BasisEval> {
        if !(0.0..=1.0).contains(&xi) {
            return Err(Error::OutsideDomain(xi));
        }
        let max_deriv = max_deriv.min(2);
        let p = self.degree();
        let span = self.knots.find_span(xi);
        let ders = bspline_derivs(&self.knots.knots, p, span, xi, max_deriv);
        let first = span - p;
        let mut eval = BasisEval {
            first,
            values: ders[0].clone(),
            first_derivs: ders.get(1).cloned().unwrap_or_else(|| vec![0.0; p + 1]),
            second_derivs: ders.get(2).cloned().unwrap_or_else(|| vec![0.0; p + 1]),
        };
        if self.rational {
            self.apply_weights(&mut eval);
        }
        Ok(eval)
    }

    fn apply_weights(&self, eval: &mut BasisEval) {
        let w = &self.weights[eval.first..eval.first + eval.values.len()];
        let dot = |row: &[f64]| row.iter().zip(w).map(|(n, w)| n * w).sum::<f64>();
        let weight = dot(&eval.values);
        let weight_d1 = dot(&eval.first_derivs);
        let weight_d2 = dot(&eval.second_derivs);
        for i in 0..eval.values.len() {
            let r = eval.values[i] * w[i] / weight;
            let r1 = (eval.first_derivs[i] * w[i] - r * weight_d1) / weight;
            let r2 = (eval.second_derivs[i] * w[i] - 2.0 * r1 * weight_d1 - r * weight_d2) / weight;
            eval.values[i] = r;
            eval.first_derivs[i] = r1;
            eval.second_derivs[i] = r2;
        }
    }
}

/// Cox-de Boor table with derivatives: returns `ders[order][j]` for the
/// functions `span - p ..= span`, `order ≤ min(n_ders, p)`.
fn bspline_derivs(knots: &[f64], p: usize, span: usize, xi: f64, n_ders: usize) -> Vec<Vec<f64>> {
    let mut ndu = vec![vec![0.0; p + 1]; p + 1];
    let mut left = vec![0.0; p + 1];
    let mut right = vec![0.0; p + 1];
    ndu[0][0] = 1.0;
    for j in 1..=p {
        left[j] = xi - knots[span + 1 - j];
        right[j] = knots[span + j] - xi;
        let mut saved = 0.0;
        for r in 0..j {
            // lower triangle holds knot differences
            ndu[j][r] = right[r + 1] + left[j - r];
            let temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }

    let top = n_ders.min(p);
    let mut ders = vec![vec![0.0; p + 1]; top + 1];
    for (j, d) in ders[0].iter_mut().enumerate() {
        *d = ndu[j][p];
    }

    let mut a = [vec![0.0; p + 1], vec![0.0; p + 1]];
    for r in 0..=p {
        let (mut s1, mut s2) = (0usize, 1usize);
        a[0][0] = 1.0;
        for k in 1..=top {
            let mut d = 0.0;
            let rk = r as isize - k as isize;
            let pk = p - k;
            if rk >= 0 {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk as usize];
                d = a[s2][0] * ndu[rk as usize][pk];
            }
            let j1 = if rk >= -1 { 1 } else { (-rk) as usize };
            let j2 = if r as isize - 1 <= pk as isize { k - 1 } else { p - r };
            for j in j1..=j2 {
                let col = (rk + j as isize) as usize;
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][col];
                d += a[s2][j] * ndu[col][pk];
            }
            if r <= pk {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            ders[k][r] = d;
            core::mem::swap(&mut s1, &mut s2);
        }
    }

    let mut factor = p as f64;
    for (k, row) in ders.iter_mut().enumerate().skip(1) {
        for d in row.iter_mut() {
            *d *= factor;
        }
        factor *= (p - k) as f64;
    }
    ders
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_single_interior_knot() {
        let kv = KnotVector::uniform(2, 2, 1).unwrap();
        assert_eq!(kv.knots(), &[0.0, 0.0, 0.0, 0.5, 1.0, 1.0, 1.0]);
        assert_eq!(kv.num_basis(), 4);
        assert_eq!(kv.greville(), vec![0.0, 0.25, 0.75, 1.0]);
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(KnotVector::uniform(12, 5, 11).unwrap().num_basis(), 17);
        // p=4, n=5, k=1: four interior breakpoints of multiplicity 3
        let kv = KnotVector::uniform(4, 5, 1).unwrap();
        let interior: Vec<f64> = kv.knots()[5..kv.knots().len() - 5].to_vec();
        assert_eq!(
            interior,
            vec![0.2, 0.2, 0.2, 0.4, 0.4, 0.4, 0.6, 0.6, 0.6, 0.8, 0.8, 0.8]
        );
        assert_eq!(kv.num_basis(), 17);
        for p in 1..=MAX_DEGREE {
            for k in 0..p {
                for n in 1..=11 {
                    let kv = KnotVector::uniform(p, n, k).unwrap();
                    assert_eq!(kv.num_basis(), (n - 1) * (p - k) + p + 1);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            KnotVector::uniform(3, 4, 3),
            Err(Error::RegularityOutOfRange { p: 3, k: 3 })
        );
        assert_eq!(KnotVector::uniform(3, 0, 1), Err(Error::NoElements));
        assert_eq!(KnotVector::uniform(0, 2, 0), Err(Error::DegreeOutOfRange(0)));
        assert_eq!(KnotVector::uniform(21, 2, 1), Err(Error::DegreeOutOfRange(21)));
    }

    #[test]
    fn hat_function_is_cardinal() {
        let basis = SplineBasis1D::uniform(1, 2, 0).unwrap();
        assert_eq!(basis.knots().knots(), &[0.0, 0.0, 0.5, 1.0, 1.0]);
        let ev = basis.eval(0.5, 0).unwrap();
        let mut full = vec![0.0; basis.num_basis()];
        for (i, v) in ev.iter_order(0) {
            full[i] = v;
        }
        assert_eq!(full, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn endpoints_interpolate() {
        let basis = SplineBasis1D::uniform(5, 3, 2).unwrap();
        let ev = basis.eval(0.0, 2).unwrap();
        assert_eq!(ev.first, 0);
        assert_eq!(ev.values[0], 1.0);
        let ev = basis.eval(1.0, 2).unwrap();
        assert_eq!(ev.first + ev.values.len(), basis.num_basis());
        assert_eq!(*ev.values.last().unwrap(), 1.0);
    }

    #[test]
    fn span_convention() {
        let kv = KnotVector::uniform(2, 4, 0).unwrap();
        // knots: 0 0 0 .25 .25 .5 .5 .75 .75 1 1 1
        assert_eq!(kv.find_span(0.25), 4);
        assert_eq!(kv.find_span(0.2), 2);
        assert_eq!(kv.find_span(1.0), kv.num_basis() - 1);
    }

    #[test]
    fn outside_domain_rejected() {
        let basis = SplineBasis1D::uniform(2, 3, 1).unwrap();
        assert_eq!(basis.eval(1.5, 0), Err(Error::OutsideDomain(1.5)));
        assert!(basis.eval(-1e-9, 0).is_err());
    }

    #[test]
    fn first_derivative_matches_central_difference() {
        let basis = SplineBasis1D::uniform(3, 4, 2).unwrap();
        let xi = 0.3;
        let h = 1e-6;
        let ev = basis.eval(xi, 2).unwrap();
        let plus = basis.eval(xi + h, 0).unwrap();
        let minus = basis.eval(xi - h, 0).unwrap();
        assert_eq!(plus.first, ev.first);
        assert_eq!(minus.first, ev.first);
        for i in 0..ev.values.len() {
            let fd = (plus.values[i] - minus.values[i]) / (2.0 * h);
            assert!((fd - ev.first_derivs[i]).abs() < 1e-6, "i={i}");
        }
    }

    #[test]
    fn greville_symmetric_for_maximal_regularity() {
        let g = KnotVector::uniform(12, 5, 11).unwrap().greville();
        assert_eq!(g.len(), 17);
        for i in 0..g.len() {
            assert!((g[i] + g[g.len() - 1 - i] - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn linear_greville_is_breakpoints() {
        let g = KnotVector::uniform(1, 6, 0).unwrap().greville();
        let expected: Vec<f64> = (0..=6).map(|j| j as f64 / 6.0).collect();
        assert_eq!(g, expected);
    }

    #[test]
    fn weights_validated() {
        let kv = KnotVector::uniform(2, 2, 1).unwrap();
        assert!(SplineBasis1D::with_weights(kv.clone(), vec![1.0; 3]).is_err());
        assert!(SplineBasis1D::with_weights(kv.clone(), vec![1.0, 0.0, 1.0, 1.0]).is_err());
        let unit = SplineBasis1D::with_weights(kv, vec![1.0; 4]).unwrap();
        assert!(!unit.is_rational());
    }

    #[test]
    fn rational_partition_of_unity_and_derivatives() {
        let kv = KnotVector::uniform(3, 3, 1).unwrap();
        let weights = vec![1.0, 0.7, 1.3, 2.0, 0.5, 1.1, 0.9, 1.0];
        assert_eq!(weights.len(), kv.num_basis());
        let basis = SplineBasis1D::with_weights(kv, weights).unwrap();
        let h = 1e-5;
        for &xi in &[0.1, 0.45, 0.81] {
            let ev = basis.eval(xi, 2).unwrap();
            assert!((ev.values.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!(ev.first_derivs.iter().sum::<f64>().abs() < 1e-12);
            assert!(ev.second_derivs.iter().sum::<f64>().abs() < 1e-10);
            let plus = basis.eval(xi + h, 1).unwrap();
            let minus = basis.eval(xi - h, 1).unwrap();
            for i in 0..ev.values.len() {
                let fd2 = (plus.first_derivs[i] - minus.first_derivs[i]) / (2.0 * h);
                assert!((fd2 - ev.second_derivs[i]).abs() < 1e-5);
            }
        }
    }
}
