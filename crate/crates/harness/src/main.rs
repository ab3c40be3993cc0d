use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use iga_spectra::config::{parse_bc, Analysis, KSelector, RunConfig, SweepSpec};
use iga_spectra::converge::{run_convergence, ConvergeSpec};
use iga_spectra::sweep::{resolve_threads, run_sweep};
use iga_spectra::{io, report};
use iga_spectra_core::grid::BoundaryCondition;
use iga_spectra_core::spectra::{galerkin_bound, BoundEstimate, MatrixTarget};

/// Condition numbers, eigenvalues and sparsity of isogeometric collocation
/// matrices for the acoustic wave equation.
#[derive(Parser, Debug)]
#[command(name = "iga-spectra", version, about)]
struct Cli {
    /// Worker threads (default: IGA_SPECTRA_THREADS, then all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every configuration of a JSON sweep file
    Sweep {
        config: PathBuf,
        /// Output directory, overriding the file's `out`
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyse one configuration
    Single(SingleArgs),
    /// Temporal convergence on a manufactured standing wave
    Converge(ConvergeArgs),
    /// Evaluate Galerkin condition-number estimates
    Bounds {
        #[arg(long, value_parser = parse_estimate)]
        estimate: BoundEstimate,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<usize>,
        #[arg(long = "h-den", value_delimiter = ',', required = true)]
        h_den: Vec<usize>,
    },
}

#[derive(Args, Debug)]
struct SingleArgs {
    #[arg(long, value_parser = parse_target, default_value = "stiffness")]
    target: MatrixTarget,
    #[arg(long, value_parser = parse_bc, default_value = "dirichlet")]
    bc: BoundaryCondition,
    #[arg(long)]
    p: usize,
    #[arg(long = "h-den")]
    h_den: usize,
    /// min, max or an integer
    #[arg(long, default_value = "min")]
    k: KSelector,
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    c0: f64,
    #[arg(long, value_delimiter = ',', default_value = "cond")]
    analyses: Vec<Analysis>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ConvergeArgs {
    #[arg(long)]
    p: usize,
    #[arg(long = "h-den")]
    h_den: usize,
    #[arg(long, default_value = "max")]
    k: KSelector,
    #[arg(long = "dt-seq", value_delimiter = ',', required = true)]
    dt_seq: Vec<f64>,
    #[arg(long = "T", default_value_t = 1.0)]
    t_final: f64,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    c0: f64,
    #[arg(long, value_parser = parse_bc, default_value = "dirichlet")]
    bc: BoundaryCondition,
    /// Write the trajectory of the finest run to this CSV
    #[arg(long)]
    trajectory: Option<PathBuf>,
}

fn parse_estimate(s: &str) -> Result<BoundEstimate, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_target(s: &str) -> Result<MatrixTarget, String> {
    s.parse().map_err(|e: &str| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let threads = resolve_threads(cli.threads);
    match cli.command {
        Command::Sweep { config, out } => {
            let spec = SweepSpec::from_path(&config)?;
            let out = out.unwrap_or_else(|| spec.out.clone());
            let ledger = run_sweep(&spec, &out, threads)?;
            let summary = report::emit_report(&ledger, &out.join("report"))?;
            print!("{}", summary.text);
            let failed = ledger.count(iga_spectra::RunStatus::Failed);
            println!(
                "{} configurations: {} ok, {} skipped-too-large, {} failed; results in {}",
                ledger.entries.len(),
                ledger.count(iga_spectra::RunStatus::Ok),
                ledger.count(iga_spectra::RunStatus::SkippedTooLarge),
                failed,
                out.display()
            );
            Ok(if failed > 0 { ExitCode::from(2) } else { ExitCode::SUCCESS })
        }
        Command::Single(a) => single(a),
        Command::Converge(a) => converge(a),
        Command::Bounds { estimate, p, h_den } => {
            println!("estimate,p,h_den,value");
            for &p in &p {
                for &n in &h_den {
                    println!("{estimate},{p},{n},{}", io::fmt_f64(galerkin_bound(estimate, p, 1.0 / n as f64)));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn single(a: SingleArgs) -> Result<ExitCode> {
    let k = a.k.resolve(a.p);
    if a.p == 0 || k + 1 > a.p {
        bail!("need 0 <= k <= p-1, got p={} k={k}", a.p);
    }
    let stiffness = a.target == MatrixTarget::Stiffness;
    let config = RunConfig {
        target: a.target,
        bc: stiffness.then_some(a.bc),
        p: a.p,
        k,
        h_den: a.h_den,
        dt: stiffness.then_some(a.dt),
        beta: stiffness.then_some(a.beta),
        gamma: a.gamma,
        c0: a.c0,
        cond: a.analyses.contains(&Analysis::Cond),
        eig: a.analyses.contains(&Analysis::Eig),
        spy: a.analyses.contains(&Analysis::Spy),
    };
    let outcome = iga_spectra::analyze(&config);
    let Some(report) = &outcome.report else {
        bail!("{}", outcome.message.unwrap_or_default());
    };
    std::fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let mut w = io::csv_writer(&a.out.join("results.csv"))?;
    w.write_record(io::RESULTS_HEADER)?;
    let row = iga_spectra::sweep::results_row(&config, report);
    w.write_record(&row)?;
    w.flush()?;
    let label = config.label();
    if report.eig_computed() {
        io::write_eigenvalues(&a.out.join(format!("{label}_eig.csv")), &report.eigenvalues)?;
    }
    if let Some(m) = &outcome.matrix {
        io::write_spy(&a.out.join(format!("{label}_spy.csv")), m)?;
        io::write_coordinate(&a.out.join(format!("{label}.mtx.txt")), m)?;
    }
    if let Some(msg) = &outcome.message {
        log::warn!("{msg}");
    }
    println!("{}", io::RESULTS_HEADER.join(","));
    println!("{}", row.join(","));
    Ok(ExitCode::SUCCESS)
}

fn converge(a: ConvergeArgs) -> Result<ExitCode> {
    let spec = ConvergeSpec {
        p: a.p,
        h_den: a.h_den,
        k: a.k.resolve(a.p),
        dt_seq: a.dt_seq,
        t_final: a.t_final,
        beta: a.beta,
        gamma: a.gamma,
        c0: a.c0,
        bc: a.bc,
    };
    let (rows, trajectory) = run_convergence(&spec)?;
    println!("dt,steps,error,order,max_relative_residual,wall_ms");
    for r in &rows {
        println!(
            "{},{},{},{},{},{:.3}",
            io::fmt_f64(r.dt),
            r.steps,
            io::fmt_f64(r.error),
            io::fmt_opt(r.order),
            io::fmt_f64(r.max_relative_residual),
            r.wall_ms
        );
    }
    if let Some(path) = a.trajectory {
        io::write_trajectory(&path, &trajectory)?;
    }
    Ok(ExitCode::SUCCESS)
}
