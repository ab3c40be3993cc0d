//! Known Galerkin condition-number estimates for isogeometric mass and
//! stiffness matrices, evaluated as reference curves.
//!
//! The `16^p` estimates carry unspecified constants (`c`, `c(h)`), taken as 1
//! here; they are meaningful for growth rates only. The sharper estimates
//! for minimal (`k = 0`) and maximal (`k = p - 1`) regularity are constant
//! free.

use core::fmt;
use core::str::FromStr;

use crate::math;

/// Spatial dimension of the study.
pub const DIM: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundEstimate {
    /// `cond(M) ≈ p² 16^p`
    MassSixteenP,
    /// `cond(K) ≤ p⁸ 16^p`
    StiffnessSixteenP,
    /// `cond(M) ≈ p^{-d/2} 4^{pd}` for `k = 0`
    MassK0,
    /// maximal regularity mass estimate
    MassKmax,
    /// `k = 0` stiffness estimate
    StiffnessK0,
    /// maximal regularity stiffness estimate
    StiffnessKmax,
}

impl BoundEstimate {
    pub const ALL: [BoundEstimate; 6] = [
        BoundEstimate::MassSixteenP,
        BoundEstimate::StiffnessSixteenP,
        BoundEstimate::MassK0,
        BoundEstimate::MassKmax,
        BoundEstimate::StiffnessK0,
        BoundEstimate::StiffnessKmax,
    ];

    pub fn id(self) -> &'static str {
        match self {
            BoundEstimate::MassSixteenP => "M-16p",
            BoundEstimate::StiffnessSixteenP => "K-16p",
            BoundEstimate::MassK0 => "M-k0",
            BoundEstimate::MassKmax => "M-kmax",
            BoundEstimate::StiffnessK0 => "K-k0",
            BoundEstimate::StiffnessKmax => "K-kmax",
        }
    }
}

impl fmt::Display for BoundEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownEstimate;

impl fmt::Display for UnknownEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown estimate id (expected M-16p, K-16p, M-k0, M-kmax, K-k0 or K-kmax)")
    }
}

impl FromStr for BoundEstimate {
    type Err = UnknownEstimate;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundEstimate::ALL
            .into_iter()
            .find(|e| e.id().eq_ignore_ascii_case(s))
            .ok_or(UnknownEstimate)
    }
}

/// Evaluates the estimate at degree `p` and mesh size `h` in two dimensions.
pub fn galerkin_bound(estimate: BoundEstimate, p: usize, h: f64) -> f64 {
    let d = DIM;
    let pf = p as f64;
    let four_pd = math::powf(4.0, pf * d);
    match estimate {
        BoundEstimate::MassSixteenP => pf * pf * math::powf(16.0, pf),
        BoundEstimate::StiffnessSixteenP => math::powf(pf, 8.0) * math::powf(16.0, pf),
        BoundEstimate::MassK0 => math::powf(pf, -d / 2.0) * four_pd,
        BoundEstimate::MassKmax => {
            if h <= 1.0 / pf {
                math::exp(pf * d)
            } else {
                math::powf(core::f64::consts::E / 4.0, d / h) * math::powf(h * pf, -d / 2.0) * four_pd
            }
        }
        BoundEstimate::StiffnessK0 => {
            let threshold = math::sqrt(math::powf(pf, 2.0 + d / 2.0) * math::powf(d, -d * pf));
            if h <= threshold {
                pf * pf / (h * h)
            } else {
                math::powf(pf, -d / 2.0) * four_pd
            }
        }
        BoundEstimate::StiffnessKmax => {
            if h <= math::exp(-d * pf / 2.0) {
                pf / (h * h)
            } else if h <= 1.0 / pf {
                pf * math::exp(pf * d)
            } else {
                math::powf(core::f64::consts::E / 4.0, d / h)
                    * math::powf(pf, -d / 2.0)
                    * math::powf(h, -d / 2.0 - 1.0)
                    * four_pd
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs()
    }

    #[test]
    fn direct_substitution() {
        assert!(close(galerkin_bound(BoundEstimate::MassK0, 2, 0.5), 128.0));
        assert!(close(galerkin_bound(BoundEstimate::MassKmax, 4, 0.2), 8f64.exp()));
        assert!((galerkin_bound(BoundEstimate::MassKmax, 4, 0.2) - 2980.957987).abs() < 1e-5);
        assert!(close(galerkin_bound(BoundEstimate::StiffnessK0, 2, 1.0 / 9.0), 324.0));
    }

    #[test]
    fn regime_switches() {
        // p = 2: the k=0 stiffness threshold is sqrt(8/16)
        let t = 0.5f64.sqrt();
        assert!(close(galerkin_bound(BoundEstimate::StiffnessK0, 2, t), 4.0 / (t * t)));
        assert!(close(galerkin_bound(BoundEstimate::StiffnessK0, 2, 0.8), 0.5 * 256.0));
        // p = 4: h ≤ e^{-4} gives h^{-2} p
        let tiny = 0.01;
        assert!(close(galerkin_bound(BoundEstimate::StiffnessKmax, 4, tiny), 4.0 / (tiny * tiny)));
        assert!(close(galerkin_bound(BoundEstimate::StiffnessKmax, 4, 0.2), 4.0 * 8f64.exp()));
        let h: f64 = 1.0 / 3.0;
        let expected = (std::f64::consts::E / 4.0).powf(6.0) * 0.25 * h.powf(-2.0) * 4f64.powi(8);
        assert!(close(galerkin_bound(BoundEstimate::StiffnessKmax, 4, h), expected));
        let expected = (std::f64::consts::E / 4.0).powf(6.0) * (h * 4.0).powf(-1.0) * 4f64.powi(8);
        assert!(close(galerkin_bound(BoundEstimate::MassKmax, 4, h), expected));
    }

    #[test]
    fn ids_round_trip() {
        for e in BoundEstimate::ALL {
            assert_eq!(e.id().parse::<BoundEstimate>().unwrap(), e);
        }
        assert!("M-k1".parse::<BoundEstimate>().is_err());
    }
}
