//! Temporal convergence on the manufactured standing wave
//! `u = sin(πx) sin(πy) cos(π √(2 c0) t)`.

use anyhow::{bail, Result};
use iga_spectra_core::assembly::{Discretization, NewmarkParams, StandingWave};
use iga_spectra_core::grid::{BoundaryCondition, BoundaryConfig, GeometryMap};
use iga_spectra_core::newmark::run_timed;

use crate::io::TrajectoryRow;
use crate::sweep::StdClock;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergeSpec {
    pub p: usize,
    pub h_den: usize,
    pub k: usize,
    pub dt_seq: Vec<f64>,
    pub t_final: f64,
    pub beta: f64,
    pub gamma: f64,
    pub c0: f64,
    pub bc: BoundaryCondition,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergeRow {
    pub dt: f64,
    pub steps: usize,
    /// Max-norm error at the collocation points at `t_final`.
    pub error: f64,
    /// `log2` of the error ratio to the previous row scaled by the step ratio.
    pub order: Option<f64>,
    pub max_relative_residual: f64,
    pub wall_ms: f64,
}

/// Runs every step size; returns one row per step size and the trajectory
/// of the last run.
pub fn run_convergence(spec: &ConvergeSpec) -> Result<(Vec<ConvergeRow>, Vec<TrajectoryRow>)> {
    if spec.bc == BoundaryCondition::Absorbing {
        bail!("the standing wave does not satisfy the absorbing condition; use dirichlet or neumann");
    }
    let disc = Discretization::uniform(
        spec.p,
        spec.h_den,
        spec.k,
        BoundaryConfig::uniform(spec.bc),
        GeometryMap::Identity,
    )?;
    let wave = StandingWave::new(spec.c0);
    let clock = StdClock::default();
    let mut rows: Vec<ConvergeRow> = Vec::new();
    let mut trajectory = Vec::new();
    for &dt in &spec.dt_seq {
        let steps = (spec.t_final / dt).round() as usize;
        if steps == 0 || ((steps as f64 * dt) - spec.t_final).abs() > 1e-9 * spec.t_final {
            bail!("dt={dt} does not divide T={}", spec.t_final);
        }
        let params = NewmarkParams::new(spec.t_final, steps, spec.beta, spec.gamma, spec.c0)?;
        trajectory.clear();
        let start = std::time::Instant::now();
        let (state, stats) = run_timed(&wave, &disc, &params, &clock, |s| {
            trajectory.push(TrajectoryRow {
                n: s.n,
                t: s.t,
                max_norm: s.max_norm(),
                residual: None,
            });
        })?;
        for (row, &r) in trajectory.iter_mut().skip(1).zip(&stats.residuals) {
            row.residual = Some(r);
        }
        let values = disc.matrices.d0.mul_vec(&state.u);
        let error = disc
            .points
            .iter()
            .zip(&values)
            .map(|(&x, v)| (v - wave.exact(x, spec.t_final)).abs())
            .fold(0.0, f64::max);
        let order = rows
            .last()
            .map(|prev| (prev.error / error).ln() / (prev.dt / params.dt).ln());
        rows.push(ConvergeRow {
            dt: params.dt,
            steps,
            error,
            order,
            max_relative_residual: stats.max_relative_residual(),
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok((rows, trajectory))
}
