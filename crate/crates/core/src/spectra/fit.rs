//! Least-squares fits of condition-number growth.

use crate::math;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalingStudy {
    /// `x = 1/h`; returns the slope of `log cond` against `log x`.
    Mesh,
    /// `x = p`; returns `α` in `cond ≈ C p⁻¹ 4^{α p}`.
    Degree,
}

/// Fits the exponent of a scaling series of `(x, cond)` points.
pub fn fit_scaling(series: &[(f64, f64)], study: ScalingStudy) -> Result<f64> {
    if series.len() < 3 {
        return Err(Error::TooFewPoints(series.len()));
    }
    if series.iter().any(|&(x, c)| !(x > 0.0 && c > 0.0 && x.is_finite() && c.is_finite())) {
        return Err(Error::NonPositiveData);
    }
    let transformed = series.iter().map(|&(x, c)| match study {
        ScalingStudy::Mesh => (math::ln(x), math::ln(c)),
        ScalingStudy::Degree => (x, math::log2(c * x) / 2.0),
    });
    Ok(least_squares_slope(transformed))
}

fn least_squares_slope(points: impl Iterator<Item = (f64, f64)> + Clone) -> f64 {
    let n = points.clone().count() as f64;
    let (sx, sy) = points.clone().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = points.fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn exact_power_law() {
        let series: Vec<_> = [3.0, 5.0, 7.0, 9.0].iter().map(|&x: &f64| (x, x * x)).collect();
        assert!((fit_scaling(&series, ScalingStudy::Mesh).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn exact_degree_law() {
        let series: Vec<_> = (2..=10)
            .map(|p| p as f64)
            .map(|p: f64| (p, 4f64.powf(1.5 * p) / p))
            .collect();
        assert!((fit_scaling(&series, ScalingStudy::Degree).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn needs_three_points() {
        assert_eq!(
            fit_scaling(&[(1.0, 1.0), (2.0, 2.0)], ScalingStudy::Mesh),
            Err(Error::TooFewPoints(2))
        );
        assert_eq!(
            fit_scaling(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)], ScalingStudy::Mesh),
            Err(Error::NonPositiveData)
        );
    }
}
