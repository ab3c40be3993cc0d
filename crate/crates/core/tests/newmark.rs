use iga_spectra_core::assembly::{assemble_stiffness, build_rhs, Discretization, NewmarkParams, StandingWave, WaveData};
use iga_spectra_core::grid::{BoundaryCondition, BoundaryConfig, GeometryMap};
use iga_spectra_core::newmark::{run, startup};

fn dirichlet(p: usize, n: usize, k: usize) -> Discretization {
    Discretization::uniform(p, n, k, BoundaryConfig::uniform(BoundaryCondition::Dirichlet), GeometryMap::Identity).unwrap()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Max-norm error against the exact standing wave at the collocation points.
fn point_error(d: &Discretization, wave: &StandingWave, u: &[f64], t: f64) -> f64 {
    let values = d.matrices.d0.mul_vec(u);
    let exact: Vec<f64> = d.points.iter().map(|&x| wave.exact(x, t)).collect();
    max_abs_diff(&values, &exact)
}

#[test]
fn manufactured_residual_is_second_order() {
    let d = dirichlet(6, 8, 5);
    let wave = StandingWave::new(1.0);
    let mut previous: Option<f64> = None;
    for dt in [0.1, 0.05, 0.025, 0.0125] {
        let params = NewmarkParams::with_step(dt, 0.5, 0.5, 1.0).unwrap();
        let sys = assemble_stiffness(&d.matrices, &d.grid, &params).unwrap();
        let t = 0.3;
        let coeffs = |s: f64| d.interpolate(|x| wave.exact(x, s)).unwrap();
        let (next, now, prev) = (coeffs(t + dt), coeffs(t), coeffs(t - dt));
        let rhs = build_rhs(&wave, &d, &params, &now, &prev, t + dt);
        let residual = max_abs_diff(&sys.matrix().mul_vec(&next), &rhs);
        if let Some(r) = previous {
            assert!(r / residual > 3.5, "dt={dt}: ratio {}", r / residual);
        }
        previous = Some(residual);
    }
}

#[test]
fn startup_error_shrinks_quadratically() {
    let d = dirichlet(6, 7, 5);
    let wave = StandingWave::new(1.0);
    let errors: Vec<f64> = [0.04, 0.02, 0.01]
        .iter()
        .map(|&dt| {
            let params = NewmarkParams::with_step(dt, 0.5, 0.5, 1.0).unwrap();
            let (_, u1) = startup(&wave, &d, &params).unwrap();
            point_error(&d, &wave, &u1, dt)
        })
        .collect();
    for w in errors.windows(2) {
        assert!(w[0] / w[1] > 3.5, "{errors:?}");
    }
}

#[test]
fn temporal_order_is_two() {
    let d = dirichlet(6, 7, 5);
    let wave = StandingWave::new(1.0);
    let errors: Vec<f64> = [40, 80, 160]
        .iter()
        .map(|&steps| {
            let params = NewmarkParams::new(1.0, steps, 0.5, 0.5, 1.0).unwrap();
            let (state, stats) = run(&wave, &d, &params, |_| {}).unwrap();
            assert!(stats.max_relative_residual() < 1e-8);
            point_error(&d, &wave, &state.u, 1.0)
        })
        .collect();
    for w in errors.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 1.9, "{errors:?}");
    }
}

#[test]
fn average_acceleration_conserves_scalar_energy() {
    // 1×1 analogue: D0 = 1, −c0 D2 = ω²
    let omega2: f64 = 3.7;
    let params = NewmarkParams::with_step(0.05, 0.25, 0.5, 1.0).unwrap();
    let [wn, w0, wp] = params.two_step_weights();
    let dt2 = params.dt * params.dt;
    let energy = |a: f64, b: f64| ((a - b) / params.dt).powi(2) + omega2 * (0.5 * (a + b)).powi(2);
    let (mut prev, mut now) = (1.0, (omega2.sqrt() * params.dt).cos());
    let e0 = energy(now, prev);
    for _ in 0..10_000 {
        let next = ((2.0 * now - prev) / dt2 - omega2 * (w0 * now + wp * prev)) / (1.0 / dt2 + wn * omega2);
        prev = now;
        now = next;
    }
    assert!((energy(now, prev) - e0).abs() < 1e-10 * e0);
}

struct Scaled<D>(f64, D);

impl<D: WaveData> WaveData for Scaled<D> {
    fn source(&self, x: [f64; 2], t: f64) -> f64 {
        self.0 * self.1.source(x, t)
    }
    fn dirichlet(&self, x: [f64; 2], t: f64) -> f64 {
        self.0 * self.1.dirichlet(x, t)
    }
    fn neumann(&self, x: [f64; 2], n: [f64; 2], t: f64) -> f64 {
        self.0 * self.1.neumann(x, n, t)
    }
    fn initial_displacement(&self, x: [f64; 2]) -> f64 {
        self.0 * self.1.initial_displacement(x)
    }
    fn initial_velocity(&self, x: [f64; 2]) -> f64 {
        self.0 * self.1.initial_velocity(x)
    }
}

/// Nonzero source, boundary data and both initial fields.
struct Busy;

impl WaveData for Busy {
    fn source(&self, x: [f64; 2], t: f64) -> f64 {
        (3.0 * x[0] + t).sin() * x[1]
    }
    fn dirichlet(&self, x: [f64; 2], t: f64) -> f64 {
        0.1 * (x[0] - x[1]) * (1.0 + t)
    }
    fn neumann(&self, x: [f64; 2], n: [f64; 2], t: f64) -> f64 {
        (n[0] + 2.0 * n[1]) * (x[0] + t).cos()
    }
    fn initial_displacement(&self, x: [f64; 2]) -> f64 {
        (x[0] * x[1]).sin()
    }
    fn initial_velocity(&self, x: [f64; 2]) -> f64 {
        x[0] - 0.5
    }
}

fn mixed() -> BoundaryConfig {
    BoundaryConfig {
        left: BoundaryCondition::Dirichlet,
        right: BoundaryCondition::Absorbing,
        bottom: BoundaryCondition::Neumann,
        top: BoundaryCondition::Absorbing,
    }
}

#[test]
fn trajectories_are_linear_in_data() {
    let d = Discretization::uniform(4, 4, 2, mixed(), GeometryMap::Identity).unwrap();
    let params = NewmarkParams::new(0.5, 25, 0.3, 0.5, 1.5).unwrap();
    let mut single = Vec::new();
    let mut double = Vec::new();
    run(&Busy, &d, &params, |s| single.push(s.u.clone())).unwrap();
    run(&Scaled(2.0, Busy), &d, &params, |s| double.push(s.u.clone())).unwrap();
    for (a, b) in single.iter().zip(&double) {
        let scale = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (x, y) in a.iter().zip(b) {
            assert!((2.0 * x - y).abs() <= 1e-12 * scale.max(1e-300) * 2.0);
        }
    }
}

#[test]
fn runs_are_bit_identical() {
    let d = Discretization::uniform(3, 5, 1, mixed(), GeometryMap::Identity).unwrap();
    let params = NewmarkParams::new(0.4, 20, 0.0, 0.5, 1.0).unwrap();
    let collect = || {
        let mut v = Vec::new();
        run(&Busy, &d, &params, |s| v.extend(s.u.iter().map(|x| x.to_bits()))).unwrap();
        v
    };
    assert_eq!(collect(), collect());
}

/// Right-moving Gaussian pulse `g(x − √c0 t)`, uniform in `y`.
struct Pulse {
    center: f64,
    width: f64,
}

impl Pulse {
    fn g(&self, s: f64) -> f64 {
        (-((s - self.center) / self.width).powi(2)).exp()
    }
    fn dg(&self, s: f64) -> f64 {
        -2.0 * (s - self.center) / (self.width * self.width) * self.g(s)
    }
}

impl WaveData for Pulse {
    fn initial_displacement(&self, x: [f64; 2]) -> f64 {
        self.g(x[0])
    }
    fn initial_velocity(&self, x: [f64; 2]) -> f64 {
        -self.dg(x[0])
    }
}

#[test]
fn absorbing_edge_reflects_little_at_normal_incidence() {
    let bc = BoundaryConfig {
        left: BoundaryCondition::Absorbing,
        right: BoundaryCondition::Absorbing,
        bottom: BoundaryCondition::Neumann,
        top: BoundaryCondition::Neumann,
    };
    let d = Discretization::uniform(6, 11, 5, bc, GeometryMap::Identity).unwrap();
    let pulse = Pulse { center: 0.4, width: 0.1 };
    let params = NewmarkParams::new(1.4, 280, 0.25, 0.5, 1.0).unwrap();
    let mut incident = 0.0f64;
    let (state, _) = run(&pulse, &d, &params, |s| {
        if s.t < 0.2 {
            incident = incident.max(d.matrices.d0.mul_vec(&s.u).iter().fold(0.0, |m, v| m.max(v.abs())));
        }
    })
    .unwrap();
    let left_over = d.matrices.d0.mul_vec(&state.u).iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(incident > 0.9);
    assert!(left_over < 0.1 * incident, "reflected {left_over} of {incident}");
}
