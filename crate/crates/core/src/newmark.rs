//! Displacement-only Newmark time stepping.
//!
//! Each step solves `𝒦 u_{n+1} = ϒ(t_{n+1}, t_n, t_{n−1})` with the one
//! factorization of `𝒦`. The first level `u_1` comes from a second-order
//! Taylor step `u_1 = u_0 + Δt v_0 + Δt²/2 a_0`, where `a_0` solves the
//! collocated equation at `t = 0` together with time-differentiated
//! boundary conditions.

use alloc::vec::Vec;

use crate::assembly::{assemble_stiffness, build_rhs_into, Discretization, NewmarkParams, SystemMatrix, WaveData};
use crate::grid::{BoundaryCondition, PointClass};
use crate::linalg::{BandedLu, LinearSolver};
use crate::math;
use crate::sparse::CsrBuilder;
use crate::{Error, Result};

/// `‖u_n‖_∞` above which a run is reported as unstable.
pub const BLOWUP_THRESHOLD: f64 = 1e6;

/// Two consecutive displacement levels.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeState {
    pub n: usize,
    pub t: f64,
    /// `u_n`
    pub u: Vec<f64>,
    /// `u_{n−1}`
    pub u_prev: Vec<f64>,
}

impl TimeState {
    pub fn max_norm(&self) -> f64 {
        max_norm(&self.u)
    }

    /// `(u_n − u_{n−1}) / Δt`, a first-order velocity estimate.
    pub fn backward_velocity(&self, dt: f64) -> Vec<f64> {
        self.u.iter().zip(&self.u_prev).map(|(a, b)| (a - b) / dt).collect()
    }
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Source of wall-clock time in milliseconds.
pub trait Clock {
    fn now_ms(&self) -> f64;
}

/// A clock that always reads zero, for `no_std` use.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_ms(&self) -> f64 {
        0.0
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolveStats {
    /// `‖𝒦 u_{n+1} − ϒ‖_∞` per step.
    pub residuals: Vec<f64>,
    /// `‖ϒ‖_∞` per step.
    pub rhs_norms: Vec<f64>,
    pub step_ms: Vec<f64>,
    /// Solves that reused the single factorization.
    pub factorization_reuse: usize,
}

impl SolveStats {
    /// Largest `residual / max(‖ϒ‖_∞, 1e-300)` over all steps.
    pub fn max_relative_residual(&self) -> f64 {
        self.residuals
            .iter()
            .zip(&self.rhs_norms)
            .map(|(r, b)| r / b.max(1e-300))
            .fold(0.0, f64::max)
    }
}

/// Coefficients `(u_0, u_1)` of the first two time levels.
pub fn startup<D: WaveData + ?Sized>(data: &D, disc: &Discretization, params: &NewmarkParams) -> Result<(Vec<f64>, Vec<f64>)> {
    params.validate()?;
    let n = disc.dof();
    let m = &disc.matrices;
    let grid = &disc.grid;
    let mass = BandedLu::factor(&m.d0)?;
    let sample = |f: &dyn Fn([f64; 2]) -> f64| -> Vec<f64> { disc.points.iter().map(|&x| f(x)).collect() };
    let u0 = mass.solve(&sample(&|x| data.initial_displacement(x)));
    let v0 = mass.solve(&sample(&|x| data.initial_velocity(x)));

    let inv_sqrt_c0 = 1.0 / math::sqrt(params.c0);
    let mut builder = CsrBuilder::new(n);
    let mut rhs = Vec::with_capacity(n);
    let mut row = Vec::new();
    for k in 0..n {
        row.clear();
        let x = disc.points[k];
        let d0_row = m.d0.row(k);
        match grid.class(k) {
            PointClass::Interior => {
                row.extend(d0_row.0.iter().copied().zip(d0_row.1.iter().copied()));
                rhs.push(params.c0 * m.d2.row_dot(k, &u0) + data.source(x, 0.0));
            }
            PointClass::Dirichlet => {
                row.extend(d0_row.0.iter().copied().zip(d0_row.1.iter().copied()));
                rhs.push(data.dirichlet_acceleration(x, 0.0));
            }
            PointClass::Neumann | PointClass::Absorbing => {
                let facets = grid.facets(k).expect("boundary point");
                let share = 1.0 / facets.count() as f64;
                let mut b = 0.0;
                for edge in facets.iter() {
                    let normal_row = crate::assembly::normal_derivative_row(grid, &disc.map, k, edge);
                    match grid.boundary_config().edge(edge) {
                        BoundaryCondition::Neumann => {
                            row.extend(normal_row.iter().map(|&(c, v)| (c, share * v)));
                            let normal = disc.map.physical_normal(edge.normal());
                            b += share * data.neumann_acceleration(x, normal, 0.0);
                        }
                        BoundaryCondition::Absorbing => {
                            let scale = share * inv_sqrt_c0;
                            row.extend(d0_row.0.iter().zip(d0_row.1).map(|(&c, &v)| (c, scale * v)));
                            b -= share * normal_row.iter().map(|&(c, v)| v * v0[c]).sum::<f64>();
                        }
                        BoundaryCondition::Dirichlet => unreachable!("Dirichlet corners are Dirichlet points"),
                    }
                }
                rhs.push(b);
            }
        }
        builder.push_row(&mut row);
    }
    let accel_matrix = builder.finish();
    let a0 = BandedLu::factor(&accel_matrix)?.solve(&rhs);
    let dt = params.dt;
    let u1 = (0..n).map(|i| u0[i] + dt * v0[i] + 0.5 * dt * dt * a0[i]).collect();
    Ok((u0, u1))
}

/// One step `u_{n+1} = 𝒦⁻¹ ϒ`. Returns the advanced state and the residual
/// and right-hand-side norms.
pub fn step<D: WaveData + ?Sized>(
    state: &TimeState,
    sys: &SystemMatrix,
    data: &D,
    disc: &Discretization,
    params: &NewmarkParams,
) -> Result<(TimeState, f64, f64)> {
    let lu = sys.lu().ok_or(Error::InvalidParams("system matrix is not factorized"))?;
    let t_next = state.t + params.dt;
    let mut rhs = alloc::vec![0.0; disc.dof()];
    build_rhs_into(data, disc, params, &state.u, &state.u_prev, t_next, &mut rhs);
    let u_next = lu.solve(&rhs);
    let norm = max_norm(&u_next);
    if !(norm <= BLOWUP_THRESHOLD) {
        return Err(Error::Unstable { step: state.n + 1, norm });
    }
    let residual = sys
        .matrix()
        .mul_vec(&u_next)
        .iter()
        .zip(&rhs)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let next = TimeState {
        n: state.n + 1,
        t: t_next,
        u: u_next,
        u_prev: state.u.clone(),
    };
    Ok((next, residual, max_norm(&rhs)))
}

/// Runs from `t = 0` to `params.t_final`. The observer sees the startup
/// state (`n = 1`) and every later state.
pub fn run<D, O>(data: &D, disc: &Discretization, params: &NewmarkParams, observer: O) -> Result<(TimeState, SolveStats)>
where
    D: WaveData + ?Sized,
    O: FnMut(&TimeState),
{
    run_timed(data, disc, params, &NoClock, observer)
}

/// [`run`] recording per-step wall time from `clock`.
pub fn run_timed<D, C, O>(
    data: &D,
    disc: &Discretization,
    params: &NewmarkParams,
    clock: &C,
    mut observer: O,
) -> Result<(TimeState, SolveStats)>
where
    D: WaveData + ?Sized,
    C: Clock + ?Sized,
    O: FnMut(&TimeState),
{
    let (u0, u1) = startup(data, disc, params)?;
    let mut state = TimeState {
        n: 1,
        t: params.dt,
        u: u1,
        u_prev: u0,
    };
    observer(&state);
    let mut stats = SolveStats::default();
    if params.steps <= 1 {
        return Ok((state, stats));
    }
    let mut sys = assemble_stiffness(&disc.matrices, &disc.grid, params)?;
    sys.factorize()?;
    for _ in 1..params.steps {
        let start = clock.now_ms();
        let (next, residual, rhs_norm) = step(&state, &sys, data, disc, params)?;
        stats.step_ms.push(clock.now_ms() - start);
        stats.residuals.push(residual);
        stats.rhs_norms.push(rhs_norm);
        stats.factorization_reuse += 1;
        state = next;
        observer(&state);
    }
    Ok((state, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{StandingWave, ZeroData};
    use crate::grid::{BoundaryConfig, GeometryMap};

    fn disc(p: usize, n: usize, k: usize, bc: BoundaryCondition) -> Discretization {
        Discretization::uniform(p, n, k, BoundaryConfig::uniform(bc), GeometryMap::Identity).unwrap()
    }

    #[test]
    fn zero_data_stays_zero() {
        let d = disc(3, 3, 2, BoundaryCondition::Absorbing);
        let params = NewmarkParams::new(0.5, 10, 0.25, 0.5, 1.0).unwrap();
        let (state, stats) = run(&ZeroData, &d, &params, |_| {}).unwrap();
        assert!(state.u.iter().chain(&state.u_prev).all(|&v| v == 0.0));
        assert_eq!(stats.factorization_reuse, 9);
    }

    #[test]
    fn constant_initial_data_under_neumann() {
        struct One;
        impl WaveData for One {
            fn initial_displacement(&self, _x: [f64; 2]) -> f64 {
                1.0
            }
        }
        let d = disc(3, 4, 1, BoundaryCondition::Neumann);
        let params = NewmarkParams::with_step(0.1, 0.5, 0.5, 1.0).unwrap();
        let (u0, u1) = startup(&One, &d, &params).unwrap();
        for (a, b) in u0.iter().zip(&u1) {
            assert!((a - 1.0).abs() < 1e-12);
            assert!((b - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_step_returns_startup() {
        let d = disc(2, 3, 1, BoundaryCondition::Dirichlet);
        let wave = StandingWave::new(1.0);
        let params = NewmarkParams::new(0.1, 1, 0.5, 0.5, 1.0).unwrap();
        let (u0, u1) = startup(&wave, &d, &params).unwrap();
        let (state, stats) = run(&wave, &d, &params, |_| {}).unwrap();
        assert_eq!((state.u, state.u_prev), (u1, u0));
        assert!(stats.residuals.is_empty());
    }

    #[test]
    fn residuals_are_small() {
        let d = disc(4, 4, 3, BoundaryCondition::Dirichlet);
        let wave = StandingWave::new(1.0);
        let params = NewmarkParams::new(0.2, 20, 0.5, 0.5, 1.0).unwrap();
        let (_, stats) = run(&wave, &d, &params, |_| {}).unwrap();
        assert!(stats.max_relative_residual() < 1e-8, "{}", stats.max_relative_residual());
    }

    #[test]
    fn explicit_blowup_is_reported() {
        let d = disc(4, 8, 3, BoundaryCondition::Dirichlet);
        let wave = StandingWave::new(1.0);
        let params = NewmarkParams::new(20.0, 200, 0.0, 0.5, 1.0).unwrap();
        match run(&wave, &d, &params, |_| {}) {
            Err(Error::Unstable { norm, .. }) => assert!(norm > BLOWUP_THRESHOLD),
            other => panic!("expected instability, got {:?}", other.map(|s| s.0.n)),
        }
    }
}
