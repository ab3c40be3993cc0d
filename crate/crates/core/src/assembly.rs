//! Collocation matrices, the Newmark system matrix and its right-hand side.
//!
//! With `u_h = Σ_l c_l N_l` the collocated equations act on coefficient
//! vectors through three square matrices of size `ν_x ν_y`:
//!
//! * `D0`: basis values at the Greville points (the mass matrix),
//! * `D1`: outward normal derivative at boundary points, empty rows inside,
//! * `D2`: physical Laplacian at every point.
//!
//! The two-step Newmark recurrence keeps every `u_{n+1}` term on the left,
//! so the system matrix depends only on `(Δt, β, γ, c0)` and is factorized
//! once per configuration.

use alloc::vec;
use alloc::vec::Vec;

use crate::config::Configuration;
use crate::grid::{build_grid, BoundaryCondition, BoundaryConfig, CollocationGrid, Edge, GeometryMap, PointClass};
use crate::linalg::{BandedLu, DenseMatrix, LinearSolver};
use crate::math;
use crate::sparse::{combine_rows, CsrBuilder, CsrMatrix};
use crate::splines::{BasisEval, SplineBasis1D};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CollocationMatrices {
    pub d0: CsrMatrix,
    pub d1: CsrMatrix,
    pub d2: CsrMatrix,
}

struct PointEvals {
    x: Vec<BasisEval>,
    y: Vec<BasisEval>,
}

impl PointEvals {
    fn new(grid: &CollocationGrid) -> Self {
        let eval_all = |basis: &SplineBasis1D, pts: &[f64]| -> Vec<BasisEval> {
            pts.iter()
                .map(|&xi| basis.eval(xi, 2).expect("Greville points lie in [0, 1]"))
                .collect()
        };
        Self {
            x: eval_all(grid.basis_x(), grid.greville_x()),
            y: eval_all(grid.basis_y(), grid.greville_y()),
        }
    }
}

/// Pushes `Σ_t coeff_t ∂^{ax_t} N_i ∂^{ay_t} N_j` over the local support of
/// one point. A pair enters the pattern when one of its terms has a nonzero
/// coefficient and two exactly nonzero univariate factors.
fn push_entries(ex: &BasisEval, ey: &BasisEval, nx: usize, terms: &[(f64, usize, usize)], out: &mut Vec<(usize, f64)>) {
    for jj in 0..ey.values.len() {
        let row_base = (ey.first + jj) * nx + ex.first;
        for ii in 0..ex.values.len() {
            let mut present = false;
            let mut value = 0.0;
            for &(coeff, ax, ay) in terms {
                let fx = ex.derivs(ax)[ii];
                let fy = ey.derivs(ay)[jj];
                if coeff != 0.0 && fx != 0.0 && fy != 0.0 {
                    present = true;
                    value += coeff * fx * fy;
                }
            }
            if present {
                out.push((row_base + ii, value));
            }
        }
    }
}

fn normal_terms(map: &GeometryMap, edge: Edge, scale: f64) -> [(f64, usize, usize); 2] {
    let w = map.normal_derivative_weights(edge.normal());
    [(scale * w[0], 1, 0), (scale * w[1], 0, 1)]
}

/// Assembles `D0`, `D1` and `D2` on the grid. `D1` rows at corners average
/// the two edge-normal derivatives.
pub fn assemble_collocation(grid: &CollocationGrid, map: &GeometryMap) -> CollocationMatrices {
    let evals = PointEvals::new(grid);
    let n = grid.dof();
    let g = map.laplacian_metric();
    let laplacian = [(g[0][0], 2, 0), (g[0][1] + g[1][0], 1, 1), (g[1][1], 0, 2)];
    let mut d0 = CsrBuilder::new(n);
    let mut d1 = CsrBuilder::new(n);
    let mut d2 = CsrBuilder::new(n);
    let nx = grid.nx();
    let mut row = Vec::new();
    for k in 0..n {
        let (a, b) = grid.coords(k);
        row.clear();
        push_entries(&evals.x[a], &evals.y[b], nx, &[(1.0, 0, 0)], &mut row);
        d0.push_row(&mut row);

        row.clear();
        push_entries(&evals.x[a], &evals.y[b], nx, &laplacian, &mut row);
        d2.push_row(&mut row);

        row.clear();
        match grid.facets(k) {
            Some(facets) => {
                let scale = 1.0 / facets.count() as f64;
                for edge in facets.iter() {
                    push_entries(&evals.x[a], &evals.y[b], nx, &normal_terms(map, edge, scale), &mut row);
                }
                d1.push_row(&mut row);
            }
            None => d1.push_empty_row(),
        }
    }
    CollocationMatrices {
        d0: d0.finish(),
        d1: d1.finish(),
        d2: d2.finish(),
    }
}

/// Outward normal derivative row for one edge at boundary point `k`, as
/// sorted `(column, value)` pairs.
pub fn normal_derivative_row(grid: &CollocationGrid, map: &GeometryMap, k: usize, edge: Edge) -> Vec<(usize, f64)> {
    let (a, b) = grid.coords(k);
    let ex = grid.basis_x().eval(grid.greville_x()[a], 1).expect("Greville point");
    let ey = grid.basis_y().eval(grid.greville_y()[b], 1).expect("Greville point");
    let mut row = Vec::new();
    push_entries(&ex, &ey, grid.nx(), &normal_terms(map, edge, 1.0), &mut row);
    row.sort_unstable_by_key(|e| e.0);
    row
}

/// Dense univariate collocation factor `B[a][i] = N_i(ξ̄_a)`; the mass matrix
/// is `B_y ⊗ B_x`.
pub fn collocation_factor(basis: &SplineBasis1D) -> DenseMatrix {
    let pts = basis.greville();
    let n = basis.num_basis();
    let mut m = DenseMatrix::zeros(n, n);
    for (a, &xi) in pts.iter().enumerate() {
        let e = basis.eval(xi, 0).expect("Greville point");
        for (i, v) in e.iter_order(0) {
            m[(a, i)] = v;
        }
    }
    m
}

/// Grid, geometry and collocation matrices for one `(p, h, k, bc)` choice.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub grid: CollocationGrid,
    pub map: GeometryMap,
    pub matrices: CollocationMatrices,
    /// Physical location of every collocation point.
    pub points: Vec<[f64; 2]>,
}

impl Discretization {
    /// Uniform B-spline space of degree `p`, regularity `k` and `h_den`
    /// elements per direction.
    pub fn uniform(p: usize, h_den: usize, k: usize, bc: BoundaryConfig, map: GeometryMap) -> Result<Self> {
        let basis = SplineBasis1D::uniform(p, h_den, k)?;
        Ok(Self::from_bases(&basis, &basis, bc, map))
    }

    pub fn from_bases(basis_x: &SplineBasis1D, basis_y: &SplineBasis1D, bc: BoundaryConfig, map: GeometryMap) -> Self {
        let grid = build_grid(basis_x, basis_y, bc);
        let matrices = assemble_collocation(&grid, &map);
        let points = (0..grid.dof()).map(|k| map.map_point(grid.point(k))).collect();
        Self {
            grid,
            map,
            matrices,
            points,
        }
    }

    pub fn dof(&self) -> usize {
        self.grid.dof()
    }

    /// Coefficients `c` with `D0 c = g(P)`.
    pub fn interpolate(&self, g: impl Fn([f64; 2]) -> f64) -> Result<Vec<f64>> {
        let lu = BandedLu::factor(&self.matrices.d0)?;
        let rhs: Vec<f64> = self.points.iter().map(|&x| g(x)).collect();
        Ok(lu.solve(&rhs))
    }

    /// Evaluates `Σ c_l N_l` at a parametric point.
    pub fn evaluate(&self, coeffs: &[f64], xi: [f64; 2]) -> Result<f64> {
        let ex = self.grid.basis_x().eval(xi[0], 0)?;
        let ey = self.grid.basis_y().eval(xi[1], 0)?;
        let nx = self.grid.nx();
        let mut s = 0.0;
        for (j, vy) in ey.iter_order(0) {
            for (i, vx) in ex.iter_order(0) {
                s += coeffs[j * nx + i] * vx * vy;
            }
        }
        Ok(s)
    }
}

/// Newmark parameters. `c0` is the squared wave speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewmarkParams {
    pub dt: f64,
    pub beta: f64,
    pub gamma: f64,
    pub c0: f64,
    pub t_final: f64,
    pub steps: usize,
}

impl NewmarkParams {
    /// `steps` steps of size `t_final / steps`.
    pub fn new(t_final: f64, steps: usize, beta: f64, gamma: f64, c0: f64) -> Result<Self> {
        if steps == 0 || !(t_final > 0.0) || !t_final.is_finite() {
            return Err(Error::InvalidParams("t_final must be positive and steps nonzero"));
        }
        let p = Self {
            dt: t_final / steps as f64,
            beta,
            gamma,
            c0,
            t_final,
            steps,
        };
        p.validate()?;
        Ok(p)
    }

    /// A single step of size `dt`; enough for building the system matrix.
    pub fn with_step(dt: f64, beta: f64, gamma: f64, c0: f64) -> Result<Self> {
        let p = Self {
            dt,
            beta,
            gamma,
            c0,
            t_final: dt,
            steps: 1,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::InvalidParams("dt must be positive"));
        }
        if !(self.beta >= 0.0) || !(self.gamma >= 0.0) {
            return Err(Error::InvalidParams("beta and gamma must be nonnegative"));
        }
        if !(self.c0 > 0.0) || !self.c0.is_finite() {
            return Err(Error::InvalidParams("c0 must be positive"));
        }
        if self.gamma != 0.5 {
            log::warn!("gamma = {} is not 0.5; the scheme is only first-order accurate", self.gamma);
        }
        Ok(())
    }

    /// Weights `(β, ½ − 2β + γ, ½ + β − γ)` of levels `n+1`, `n`, `n−1`.
    pub fn two_step_weights(&self) -> [f64; 3] {
        let (b, g) = (self.beta, self.gamma);
        [b, 0.5 - 2.0 * b + g, 0.5 + b - g]
    }

    pub fn is_explicit(&self) -> bool {
        self.beta == 0.0
    }

    /// Coefficient `γ / (Δt √c0)` of `D0` in absorbing rows.
    fn absorbing_coefficient(&self) -> f64 {
        self.gamma / (self.dt * math::sqrt(self.c0))
    }
}

/// The Newmark system matrix with its row classification and, once
/// factorized, a reusable LU.
#[derive(Debug, Clone)]
pub struct SystemMatrix {
    matrix: CsrMatrix,
    classes: Vec<PointClass>,
    config: Configuration,
    lu: Option<BandedLu>,
}

impl SystemMatrix {
    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn classes(&self) -> &[PointClass] {
        &self.classes
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn nz(&self) -> usize {
        self.matrix.nnz()
    }

    /// Factorizes once; later calls are no-ops.
    pub fn factorize(&mut self) -> Result<()> {
        if self.lu.is_none() {
            let lu = BandedLu::factor(&self.matrix).map_err(|e| match e {
                Error::SingularMatrix { .. } => Error::SingularSystem(self.config),
                other => other,
            })?;
            self.lu = Some(lu);
        }
        Ok(())
    }

    pub fn lu(&self) -> Option<&BandedLu> {
        self.lu.as_ref()
    }

    pub fn into_matrix(self) -> CsrMatrix {
        self.matrix
    }
}

/// Configuration record for a discretization and Newmark parameters.
pub fn configuration(grid: &CollocationGrid, params: &NewmarkParams) -> Configuration {
    Configuration {
        p: grid.degree(),
        k: grid.regularity(),
        h_den: grid.elements(),
        dt: params.dt,
        beta: params.beta,
        gamma: params.gamma,
        c0: params.c0,
        bc: *grid.boundary_config(),
    }
}

/// Assembles the system matrix row by row:
///
/// | class     | row                                   |
/// |-----------|---------------------------------------|
/// | interior  | `D0/Δt² − c0 β D2`                    |
/// | Dirichlet | `D0`                                  |
/// | Neumann   | `D1`                                  |
/// | absorbing | `D1 + s γ/(Δt √c0) D0`                |
///
/// where `s` is the share of absorbing facets (1 except at a corner shared
/// with a Neumann edge).
pub fn assemble_stiffness(colloc: &CollocationMatrices, grid: &CollocationGrid, params: &NewmarkParams) -> Result<SystemMatrix> {
    params.validate()?;
    let n = grid.dof();
    let inv_dt2 = 1.0 / (params.dt * params.dt);
    let diffusion = -params.c0 * params.beta;
    let absorbing = params.absorbing_coefficient();
    let mut builder = CsrBuilder::new(n);
    let mut row = Vec::new();
    for k in 0..n {
        match grid.class(k) {
            PointClass::Interior => combine_rows(&[(inv_dt2, &colloc.d0), (diffusion, &colloc.d2)], k, &mut row),
            PointClass::Dirichlet => combine_rows(&[(1.0, &colloc.d0)], k, &mut row),
            PointClass::Neumann => combine_rows(&[(1.0, &colloc.d1)], k, &mut row),
            PointClass::Absorbing => combine_rows(
                &[(1.0, &colloc.d1), (grid.absorbing_fraction(k) * absorbing, &colloc.d0)],
                k,
                &mut row,
            ),
        }
        builder.push_row(&mut row);
    }
    Ok(SystemMatrix {
        matrix: builder.finish(),
        classes: grid.classes().to_vec(),
        config: configuration(grid, params),
        lu: None,
    })
}

/// Step for the finite differences used by default time derivatives of data.
pub const TIME_FD_STEP: f64 = 1e-3;

/// Source, boundary and initial data of the wave problem, in physical
/// coordinates. Every field defaults to zero.
pub trait WaveData {
    fn source(&self, _x: [f64; 2], _t: f64) -> f64 {
        0.0
    }

    /// Prescribed pressure on Dirichlet edges.
    fn dirichlet(&self, _x: [f64; 2], _t: f64) -> f64 {
        0.0
    }

    /// Prescribed outward normal derivative on Neumann edges; `normal` is the
    /// physical unit normal of the edge.
    fn neumann(&self, _x: [f64; 2], _normal: [f64; 2], _t: f64) -> f64 {
        0.0
    }

    fn initial_displacement(&self, _x: [f64; 2]) -> f64 {
        0.0
    }

    fn initial_velocity(&self, _x: [f64; 2]) -> f64 {
        0.0
    }

    /// `∂²Φ/∂t²`, by default a central difference.
    fn dirichlet_acceleration(&self, x: [f64; 2], t: f64) -> f64 {
        let d = TIME_FD_STEP;
        (self.dirichlet(x, t + d) - 2.0 * self.dirichlet(x, t) + self.dirichlet(x, t - d)) / (d * d)
    }

    /// `∂²Ψ/∂t²`, by default a central difference.
    fn neumann_acceleration(&self, x: [f64; 2], normal: [f64; 2], t: f64) -> f64 {
        let d = TIME_FD_STEP;
        (self.neumann(x, normal, t + d) - 2.0 * self.neumann(x, normal, t) + self.neumann(x, normal, t - d)) / (d * d)
    }
}

/// Homogeneous data: the zero solution.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroData;

impl WaveData for ZeroData {}

/// `u(x, y, t) = A sin(πx) sin(πy) cos(ωt)` with `ω = π √(2 c0)`, an exact
/// source-free solution on the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandingWave {
    pub amplitude: f64,
    pub c0: f64,
}

impl StandingWave {
    pub fn new(c0: f64) -> Self {
        Self { amplitude: 1.0, c0 }
    }

    pub fn omega(&self) -> f64 {
        core::f64::consts::PI * math::sqrt(2.0 * self.c0)
    }

    fn shape(&self, x: [f64; 2]) -> f64 {
        use core::f64::consts::PI;
        self.amplitude * libm::sin(PI * x[0]) * libm::sin(PI * x[1])
    }

    fn shape_gradient(&self, x: [f64; 2]) -> [f64; 2] {
        use core::f64::consts::PI;
        [
            self.amplitude * PI * libm::cos(PI * x[0]) * libm::sin(PI * x[1]),
            self.amplitude * PI * libm::sin(PI * x[0]) * libm::cos(PI * x[1]),
        ]
    }

    pub fn exact(&self, x: [f64; 2], t: f64) -> f64 {
        self.shape(x) * libm::cos(self.omega() * t)
    }
}

impl WaveData for StandingWave {
    fn dirichlet(&self, x: [f64; 2], t: f64) -> f64 {
        self.exact(x, t)
    }

    fn neumann(&self, x: [f64; 2], n: [f64; 2], t: f64) -> f64 {
        let g = self.shape_gradient(x);
        (g[0] * n[0] + g[1] * n[1]) * libm::cos(self.omega() * t)
    }

    fn initial_displacement(&self, x: [f64; 2]) -> f64 {
        self.shape(x)
    }

    fn dirichlet_acceleration(&self, x: [f64; 2], t: f64) -> f64 {
        -self.omega() * self.omega() * self.exact(x, t)
    }

    fn neumann_acceleration(&self, x: [f64; 2], n: [f64; 2], t: f64) -> f64 {
        -self.omega() * self.omega() * self.neumann(x, n, t)
    }
}

/// Right-hand side `ϒ(t_{n+1}, t_n, t_{n−1})` for the system matrix.
pub fn build_rhs<D: WaveData + ?Sized>(
    data: &D,
    disc: &Discretization,
    params: &NewmarkParams,
    u_n: &[f64],
    u_prev: &[f64],
    t_next: f64,
) -> Vec<f64> {
    let mut out = vec![0.0; disc.dof()];
    build_rhs_into(data, disc, params, u_n, u_prev, t_next, &mut out);
    out
}

/// [`build_rhs`] writing into a caller-provided buffer.
pub fn build_rhs_into<D: WaveData + ?Sized>(
    data: &D,
    disc: &Discretization,
    params: &NewmarkParams,
    u_n: &[f64],
    u_prev: &[f64],
    t_next: f64,
    out: &mut [f64],
) {
    let n = disc.dof();
    assert!(u_n.len() == n && u_prev.len() == n && out.len() == n);
    let grid = &disc.grid;
    let m = &disc.matrices;
    let dt = params.dt;
    let [w_next, w_now, w_prev] = params.two_step_weights();
    let (t_now, t_prev) = (t_next - dt, t_next - 2.0 * dt);
    let inertia: Vec<f64> = u_n.iter().zip(u_prev).map(|(a, b)| 2.0 * a - b).collect();
    let history: Vec<f64> = u_n.iter().zip(u_prev).map(|(a, b)| w_now * a + w_prev * b).collect();
    let velocity: Vec<f64> = u_n
        .iter()
        .zip(u_prev)
        .map(|(a, b)| (1.0 - 2.0 * params.gamma) * a + (params.gamma - 1.0) * b)
        .collect();
    let abc_scale = -1.0 / (dt * math::sqrt(params.c0));
    let bc = grid.boundary_config();

    for (k, slot) in out.iter_mut().enumerate() {
        let x = disc.points[k];
        *slot = match grid.class(k) {
            PointClass::Interior => {
                let mut f = 0.0;
                for (w, t) in [(w_next, t_next), (w_now, t_now), (w_prev, t_prev)] {
                    if w != 0.0 {
                        f += w * data.source(x, t);
                    }
                }
                f + m.d0.row_dot(k, &inertia) / (dt * dt) + params.c0 * m.d2.row_dot(k, &history)
            }
            PointClass::Dirichlet => data.dirichlet(x, t_next),
            PointClass::Neumann | PointClass::Absorbing => {
                let facets = grid.facets(k).expect("boundary point");
                let mut s = 0.0;
                for edge in facets.iter() {
                    s += match bc.edge(edge) {
                        BoundaryCondition::Neumann => data.neumann(x, disc.map.physical_normal(edge.normal()), t_next),
                        BoundaryCondition::Absorbing => abc_scale * m.d0.row_dot(k, &velocity),
                        BoundaryCondition::Dirichlet => unreachable!("Dirichlet corners are Dirichlet points"),
                    };
                }
                s / facets.count() as f64
            }
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(p: usize, n: usize, k: usize, bc: BoundaryCondition) -> Discretization {
        Discretization::uniform(p, n, k, BoundaryConfig::uniform(bc), GeometryMap::Identity).unwrap()
    }

    #[test]
    fn linear_hats_give_identity_mass() {
        let d = disc(1, 2, 0, BoundaryCondition::Dirichlet);
        assert_eq!(d.matrices.d0, CsrMatrix::identity(9));
    }

    #[test]
    fn mass_is_kronecker_of_factors() {
        let b = SplineBasis1D::uniform(3, 3, 1).unwrap();
        let d = Discretization::from_bases(&b, &b, BoundaryConfig::uniform(BoundaryCondition::Neumann), GeometryMap::Identity);
        let f = collocation_factor(&b);
        let n = b.num_basis();
        for (r, c, v) in d.matrices.d0.triplets() {
            let expected = f[(r / n, c / n)] * f[(r % n, c % n)];
            assert!((v - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn interior_d1_rows_are_empty() {
        let d = disc(3, 3, 2, BoundaryCondition::Neumann);
        for k in d.grid.indices(PointClass::Interior) {
            assert_eq!(d.matrices.d1.row_nnz(k), 0);
        }
    }

    #[test]
    fn corner_d1_is_average_of_edges() {
        let d = disc(3, 3, 1, BoundaryCondition::Neumann);
        let corner = d.grid.index(0, 0);
        let mut sum = vec![0.0; d.dof()];
        for e in [Edge::Left, Edge::Bottom] {
            for (c, v) in normal_derivative_row(&d.grid, &d.map, corner, e) {
                sum[c] += 0.5 * v;
            }
        }
        for (c, &v) in sum.iter().enumerate() {
            assert!((d.matrices.d1.get(corner, c) - v).abs() < 1e-13);
        }
    }

    #[test]
    fn stiffness_rows_by_class() {
        let d = disc(3, 4, 2, BoundaryCondition::Absorbing);
        let params = NewmarkParams::with_step(0.01, 0.25, 0.5, 2.0).unwrap();
        let sys = assemble_stiffness(&d.matrices, &d.grid, &params).unwrap();
        let coeff = 0.5 / (0.01 * 2f64.sqrt());
        for k in 0..d.dof() {
            for c in 0..d.dof() {
                let got = sys.matrix().get(k, c);
                let want = match d.grid.class(k) {
                    PointClass::Interior => d.matrices.d0.get(k, c) / 1e-4 - 0.5 * d.matrices.d2.get(k, c),
                    PointClass::Absorbing => d.matrices.d1.get(k, c) + coeff * d.matrices.d0.get(k, c),
                    _ => unreachable!(),
                };
                assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn explicit_interior_rows_are_scaled_mass() {
        let d = disc(4, 3, 1, BoundaryCondition::Dirichlet);
        let params = NewmarkParams::with_step(0.1, 0.0, 0.5, 1.0).unwrap();
        let sys = assemble_stiffness(&d.matrices, &d.grid, &params).unwrap();
        for k in d.grid.indices(PointClass::Interior) {
            let (cols, vals) = sys.matrix().row(k);
            let (c0, v0) = d.matrices.d0.row(k);
            assert_eq!(cols, c0);
            for (a, b) in vals.iter().zip(v0) {
                assert_eq!(*a, b * (1.0 / (0.1 * 0.1)));
            }
        }
        for k in d.grid.indices(PointClass::Dirichlet) {
            assert_eq!(sys.matrix().row(k), d.matrices.d0.row(k));
        }
    }

    #[test]
    fn zero_step_rejected() {
        assert!(NewmarkParams::with_step(0.0, 0.0, 0.5, 1.0).is_err());
        assert!(NewmarkParams::with_step(0.1, -1.0, 0.5, 1.0).is_err());
        assert!(NewmarkParams::new(1.0, 0, 0.25, 0.5, 1.0).is_err());
        let p = NewmarkParams::new(1.0, 30, 0.25, 0.5, 1.0).unwrap();
        assert!((p.dt * 30.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weights_reduce_for_explicit_scheme() {
        let p = NewmarkParams::with_step(0.1, 0.0, 0.5, 1.0).unwrap();
        assert_eq!(p.two_step_weights(), [0.0, 1.0, 0.0]);
    }

    #[test]
    fn zero_data_gives_zero_rhs() {
        let d = disc(2, 3, 1, BoundaryCondition::Absorbing);
        let p = NewmarkParams::with_step(0.1, 0.5, 0.5, 1.0).unwrap();
        let z = vec![0.0; d.dof()];
        assert!(build_rhs(&ZeroData, &d, &p, &z, &z, 0.2).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn singular_system_names_configuration() {
        // a lone Neumann problem with β = 0 and γ irrelevant stays regular, so
        // force singularity with an all-zero matrix of the right shape
        let d = disc(2, 2, 1, BoundaryCondition::Dirichlet);
        let params = NewmarkParams::with_step(0.1, 0.0, 0.5, 1.0).unwrap();
        let mut sys = assemble_stiffness(&d.matrices, &d.grid, &params).unwrap();
        sys.matrix = CsrMatrix::from_triplets(d.dof(), d.dof(), &[]);
        match sys.factorize() {
            Err(Error::SingularSystem(c)) => assert_eq!((c.p, c.h_den, c.k), (2, 2, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
