//! Identification of one discretization configuration, used in reports and
//! error messages.

use core::fmt;

use crate::grid::BoundaryConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Configuration {
    pub p: usize,
    pub k: usize,
    /// Number of elements per direction, `1/h`.
    pub h_den: usize,
    pub dt: f64,
    pub beta: f64,
    pub gamma: f64,
    pub c0: f64,
    pub bc: BoundaryConfig,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} h=1/{} k={} dt={} beta={} gamma={} c0={} bc={}",
            self.p, self.h_den, self.k, self.dt, self.beta, self.gamma, self.c0, self.bc
        )
    }
}
