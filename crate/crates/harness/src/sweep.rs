//! Per-configuration analysis and the parallel sweep driver.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use iga_spectra_core::assembly::{assemble_stiffness, collocation_factor, configuration, Discretization, NewmarkParams};
use iga_spectra_core::grid::GeometryMap;
use iga_spectra_core::linalg::{BandedLu, DenseMatrix};
use iga_spectra_core::newmark::Clock;
use iga_spectra_core::sparse::CsrMatrix;
use iga_spectra_core::spectra::{
    cond_estimate_with, eigenvalues_dense, kronecker_eigenvalues, EigenOutput, MatrixTarget, SpectralReport,
    DENSE_EIGEN_CAP,
};
use iga_spectra_core::Error as CoreError;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{RunConfig, SweepSpec};
use crate::io::{self, fmt_f64, fmt_opt};

/// Wall clock backed by [`Instant`].
#[derive(Debug, Clone, Copy)]
pub struct StdClock {
    origin: Instant,
}

impl Default for StdClock {
    fn default() -> Self {
        Self { origin: Instant::now() }
    }
}

impl Clock for StdClock {
    fn now_ms(&self) -> f64 {
        self.origin.elapsed().as_secs_f64() * 1e3
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Ok,
    /// Dense eigenvalues were requested above the size cap; the run kept
    /// its condition estimate and sparsity data.
    SkippedTooLarge,
    Failed,
}

impl RunStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::SkippedTooLarge => "skipped-too-large",
            RunStatus::Failed => "failed",
        }
    }
}

/// Result of analysing one configuration.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub config: RunConfig,
    pub status: RunStatus,
    pub message: Option<String>,
    pub report: Option<SpectralReport>,
    pub matrix: Option<CsrMatrix>,
}

/// Builds the requested matrix and runs the requested analyses.
pub fn analyze(config: &RunConfig) -> Outcome {
    match try_analyze(config) {
        Ok((report, matrix, status, message)) => Outcome {
            config: *config,
            status,
            message,
            report: Some(report),
            matrix: config.spy.then_some(matrix),
        },
        Err(e) => Outcome {
            config: *config,
            status: RunStatus::Failed,
            message: Some(format!("{e:#}")),
            report: None,
            matrix: None,
        },
    }
}

fn try_analyze(config: &RunConfig) -> Result<(SpectralReport, CsrMatrix, RunStatus, Option<String>)> {
    let clock = StdClock::default();
    let disc = Discretization::uniform(config.p, config.h_den, config.k, config.boundary(), GeometryMap::Identity)?;
    let params = NewmarkParams::with_step(config.dt.unwrap_or(1.0), config.beta.unwrap_or(0.0), config.gamma, config.c0)?;
    let (matrix, core_config) = match config.target {
        MatrixTarget::Mass => (disc.matrices.d0.clone(), configuration(&disc.grid, &params)),
        MatrixTarget::Stiffness => {
            let sys = assemble_stiffness(&disc.matrices, &disc.grid, &params)?;
            let c = *sys.config();
            (sys.into_matrix(), c)
        }
    };
    let assembled = clock.now_ms();

    let mut report = SpectralReport::new(config.target, core_config, &matrix);
    report.assembly_ms = assembled;
    let mut status = RunStatus::Ok;
    let mut message = None;
    if config.cond {
        report.cond_est = Some(match BandedLu::factor(&matrix) {
            Ok(lu) => cond_estimate_with(&matrix, &lu),
            Err(CoreError::SingularMatrix { .. }) => f64::INFINITY,
            Err(e) => return Err(e.into()),
        });
    }
    if config.eig {
        match eigenvalues(&disc, config.target, &matrix)? {
            Some(out) => {
                if !out.converged {
                    message = Some(format!("QR iteration stopped after {} sweeps; partial eigenvalues", out.sweeps));
                }
                report.set_eigenvalues(out);
            }
            None => {
                status = RunStatus::SkippedTooLarge;
                message = Some(format!("{} d.o.f. exceeds the dense eigenvalue cap {}", report.dof, DENSE_EIGEN_CAP));
            }
        }
    }
    report.analysis_ms = clock.now_ms() - assembled;
    Ok((report, matrix, status, message))
}

/// Dense eigenvalues, or `None` when the matrix is above the cap. The mass
/// matrix is `B_y ⊗ B_x`, so above the cap its eigenvalues come from the
/// univariate factors.
pub fn eigenvalues(disc: &Discretization, target: MatrixTarget, matrix: &CsrMatrix) -> Result<Option<EigenOutput>> {
    if matrix.nrows() <= DENSE_EIGEN_CAP {
        return Ok(Some(eigenvalues_dense(&DenseMatrix::from_csr(matrix))?));
    }
    if target == MatrixTarget::Mass {
        let fx = eigenvalues_dense(&collocation_factor(disc.grid.basis_x()))?;
        let fy = eigenvalues_dense(&collocation_factor(disc.grid.basis_y()))?;
        return Ok(Some(EigenOutput {
            values: kronecker_eigenvalues(&fx.values, &fy.values),
            converged: fx.converged && fy.converged,
            sweeps: fx.sweeps + fy.sweeps,
        }));
    }
    Ok(None)
}

/// Worker count: explicit request, then `IGA_SPECTRA_THREADS`, then all
/// cores.
pub fn resolve_threads(requested: Option<usize>) -> usize {
    requested
        .or_else(|| std::env::var("IGA_SPECTRA_THREADS").ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Analyses every configuration on a pool of `threads` workers; results
/// keep input order.
pub fn execute(configs: &[RunConfig], threads: usize) -> Result<Vec<Outcome>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("building worker pool")?;
    Ok(pool.install(|| configs.par_iter().map(analyze).collect()))
}

#[derive(Debug, Clone, Serialize)]
pub struct LedgerEntry {
    pub config: RunConfig,
    pub status: RunStatus,
    pub message: Option<String>,
    pub assembly_ms: Option<f64>,
    pub analysis_ms: Option<f64>,
    pub outputs: Vec<PathBuf>,
    #[serde(skip)]
    pub report: Option<SpectralReport>,
}

/// One entry per configuration of a sweep, in sweep order.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunLedger {
    pub entries: Vec<LedgerEntry>,
}

impl RunLedger {
    pub fn count(&self, status: RunStatus) -> usize {
        self.entries.iter().filter(|e| e.status == status).count()
    }
}

pub fn results_row(config: &RunConfig, report: &SpectralReport) -> Vec<String> {
    let summary = report.summary;
    vec![
        config.bc.map(|b| b.name().to_string()).unwrap_or_default(),
        config.p.to_string(),
        config.k.to_string(),
        config.h_den.to_string(),
        fmt_opt(config.dt),
        fmt_opt(config.beta),
        fmt_f64(config.gamma),
        fmt_f64(config.c0),
        config.target.name().to_string(),
        report.dof.to_string(),
        report.nz.to_string(),
        fmt_opt(report.cond_est),
        fmt_opt(summary.map(|s| s.max_re)),
        fmt_opt(summary.map(|s| s.min_re)),
        fmt_opt(summary.map(|s| s.max_abs_im)),
        report.eig_computed().to_string(),
        format!("{:.3}", report.assembly_ms),
        format!("{:.3}", report.analysis_ms),
    ]
}

/// Runs the sweep and writes `results.csv`, `ledger.json` and the
/// eigenvalue and sparsity side files under `out`.
pub fn run_sweep(spec: &SweepSpec, out: &Path, threads: usize) -> Result<RunLedger> {
    let configs = spec.configurations();
    log::info!("{} configurations on {} workers", configs.len(), threads);
    let outcomes = execute(&configs, threads)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;

    let mut results = io::csv_writer(&out.join("results.csv"))?;
    results.write_record(io::RESULTS_HEADER)?;
    let mut ledger = RunLedger::default();
    for outcome in outcomes {
        let mut outputs = Vec::new();
        if let Some(report) = &outcome.report {
            results.write_record(results_row(&outcome.config, report))?;
            let label = outcome.config.label();
            if report.eig_computed() {
                let dir = out.join("eig");
                fs::create_dir_all(&dir)?;
                let path = dir.join(format!("{label}.csv"));
                io::write_eigenvalues(&path, &report.eigenvalues)?;
                outputs.push(path);
            }
            if let Some(matrix) = &outcome.matrix {
                let dir = out.join("spy");
                fs::create_dir_all(&dir)?;
                let path = dir.join(format!("{label}.csv"));
                io::write_spy(&path, matrix)?;
                outputs.push(path);
            }
        }
        if let Some(msg) = &outcome.message {
            match outcome.status {
                RunStatus::Failed => log::error!("{}: {msg}", outcome.config.label()),
                _ => log::warn!("{}: {msg}", outcome.config.label()),
            }
        }
        ledger.entries.push(LedgerEntry {
            config: outcome.config,
            status: outcome.status,
            message: outcome.message,
            assembly_ms: outcome.report.as_ref().map(|r| r.assembly_ms),
            analysis_ms: outcome.report.as_ref().map(|r| r.analysis_ms),
            outputs,
            report: outcome.report,
        });
    }
    results.flush()?;
    let json = serde_json::to_string_pretty(&ledger)?;
    fs::write(out.join("ledger.json"), json + "\n")?;
    Ok(ledger)
}
