//! Plot-ready CSV bundles and the exponent summary.
//!
//! Rows of a ledger are grouped three ways: fixed everything but `1/h`
//! (`cond_vs_h`), fixed everything but `p` with the regularity tracked as
//! `k = 1` or `k = p - 1` (`cond_vs_p`), and fixed everything but `k`
//! (`cond_vs_k`). Each mesh or degree series with at least three points is
//! fitted and printed next to the exponent of the matching Galerkin
//! estimate over the same points.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Result;
use iga_spectra_core::spectra::{fit_scaling, galerkin_bound, BoundEstimate, MatrixTarget, ScalingStudy};

use crate::config::RunConfig;
use crate::io::{self, fmt_f64, fmt_opt};
use crate::sweep::RunLedger;

/// `k = 1` or `k = p - 1`; both at `p = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regularity {
    Min,
    Max,
}

impl Regularity {
    pub fn name(self) -> &'static str {
        match self {
            Regularity::Min => "min",
            Regularity::Max => "max",
        }
    }

    fn of(p: usize, k: usize) -> Vec<Regularity> {
        let mut v = Vec::new();
        if k == 1 {
            v.push(Regularity::Min);
        }
        if k + 1 == p {
            v.push(Regularity::Max);
        }
        v
    }

    /// The sharp estimate closest to this regularity.
    pub fn bound(self, target: MatrixTarget) -> BoundEstimate {
        match (target, self) {
            (MatrixTarget::Mass, Regularity::Min) => BoundEstimate::MassK0,
            (MatrixTarget::Mass, Regularity::Max) => BoundEstimate::MassKmax,
            (MatrixTarget::Stiffness, Regularity::Min) => BoundEstimate::StiffnessK0,
            (MatrixTarget::Stiffness, Regularity::Max) => BoundEstimate::StiffnessKmax,
        }
    }
}

fn sixteen_p(target: MatrixTarget) -> BoundEstimate {
    match target {
        MatrixTarget::Mass => BoundEstimate::MassSixteenP,
        MatrixTarget::Stiffness => BoundEstimate::StiffnessSixteenP,
    }
}

/// Ordered key over the axes shared by a series; floats keyed by bits.
type Axes = (MatrixTarget, String, Option<u64>, Option<u64>);

fn axes(c: &RunConfig) -> Axes {
    (
        c.target,
        c.bc.map(|b| b.name().to_string()).unwrap_or_default(),
        c.dt.map(f64::to_bits),
        c.beta.map(f64::to_bits),
    )
}

struct Point<'a> {
    config: &'a RunConfig,
    cond: f64,
}

/// One fitted series of the summary table.
#[derive(Debug, Clone, PartialEq)]
pub struct FitRow {
    pub study: ScalingStudy,
    pub config: RunConfig,
    pub regularity: Option<Regularity>,
    pub points: usize,
    pub fitted: f64,
    pub bound: BoundEstimate,
    pub bound_fitted: f64,
    pub sixteen_p_fitted: Option<f64>,
}

fn study_name(s: ScalingStudy) -> &'static str {
    match s {
        ScalingStudy::Mesh => "h",
        ScalingStudy::Degree => "p",
    }
}

/// Summary of a ledger: fits plus the rendered table.
#[derive(Debug, Clone, Default)]
pub struct ReportSummary {
    pub fits: Vec<FitRow>,
    pub text: String,
}

/// Writes the bundles under `out` and returns the exponent summary.
pub fn emit_report(ledger: &RunLedger, out: &Path) -> Result<ReportSummary> {
    fs::create_dir_all(out)?;
    let points: Vec<Point> = ledger
        .entries
        .iter()
        .filter_map(|e| {
            let cond = e.report.as_ref()?.cond_est?;
            Some(Point { config: &e.config, cond })
        })
        .collect();
    if points.is_empty() {
        log::warn!("no condition estimates in the ledger; writing empty bundles");
    }

    // cond vs h: everything fixed but h
    let mut by_h: BTreeMap<(Axes, usize, usize), Vec<&Point>> = BTreeMap::new();
    // cond vs p: regularity class fixed, h fixed
    let mut by_p: BTreeMap<(Axes, Regularity, usize), Vec<&Point>> = BTreeMap::new();
    // cond vs k: p and h fixed
    let mut by_k: BTreeMap<(Axes, usize, usize), Vec<&Point>> = BTreeMap::new();
    for pt in &points {
        let c = pt.config;
        by_h.entry((axes(c), c.p, c.k)).or_default().push(pt);
        for reg in Regularity::of(c.p, c.k) {
            by_p.entry((axes(c), reg, c.h_den)).or_default().push(pt);
        }
        by_k.entry((axes(c), c.p, c.h_den)).or_default().push(pt);
    }

    let head = ["target", "bc", "dt", "beta"];
    let prefix = |c: &RunConfig| -> Vec<String> {
        vec![
            c.target.name().into(),
            c.bc.map(|b| b.name().to_string()).unwrap_or_default(),
            fmt_opt(c.dt),
            fmt_opt(c.beta),
        ]
    };

    let mut summary = ReportSummary::default();

    let mut w = io::csv_writer(&out.join("cond_vs_h.csv"))?;
    w.write_record(head.iter().chain(&["p", "k", "h_den", "cond_est"]))?;
    for series in by_h.values() {
        let mut series = series.clone();
        series.sort_by_key(|p| p.config.h_den);
        for pt in &series {
            let c = pt.config;
            let mut row = prefix(c);
            row.extend([c.p.to_string(), c.k.to_string(), c.h_den.to_string(), fmt_f64(pt.cond)]);
            w.write_record(row)?;
        }
        let c = series[0].config;
        let regularity = Regularity::of(c.p, c.k).into_iter().next();
        let data: Vec<(f64, f64)> = series.iter().map(|p| (p.config.h_den as f64, p.cond)).collect();
        if let (Some(reg), Ok(fitted)) = (regularity, fit_scaling(&data, ScalingStudy::Mesh)) {
            let bound = reg.bound(c.target);
            let curve: Vec<(f64, f64)> = data.iter().map(|&(x, _)| (x, galerkin_bound(bound, c.p, 1.0 / x))).collect();
            summary.fits.push(FitRow {
                study: ScalingStudy::Mesh,
                config: *c,
                regularity,
                points: data.len(),
                fitted,
                bound,
                bound_fitted: fit_scaling(&curve, ScalingStudy::Mesh)?,
                sixteen_p_fitted: None,
            });
        }
    }
    w.flush()?;

    let mut w = io::csv_writer(&out.join("cond_vs_p.csv"))?;
    w.write_record(head.iter().chain(&["regularity", "h_den", "p", "k", "cond_est"]))?;
    for ((_, reg, _), series) in &by_p {
        let mut series = series.clone();
        series.sort_by_key(|p| p.config.p);
        for pt in &series {
            let c = pt.config;
            let mut row = prefix(c);
            row.extend([reg.name().into(), c.h_den.to_string(), c.p.to_string(), c.k.to_string(), fmt_f64(pt.cond)]);
            w.write_record(row)?;
        }
        let c = series[0].config;
        let h = 1.0 / c.h_den as f64;
        let data: Vec<(f64, f64)> = series.iter().map(|p| (p.config.p as f64, p.cond)).collect();
        if let Ok(fitted) = fit_scaling(&data, ScalingStudy::Degree) {
            let bound = reg.bound(c.target);
            let curve = |b: BoundEstimate| -> Vec<(f64, f64)> {
                data.iter().map(|&(p, _)| (p, galerkin_bound(b, p as usize, h))).collect()
            };
            summary.fits.push(FitRow {
                study: ScalingStudy::Degree,
                config: *c,
                regularity: Some(*reg),
                points: data.len(),
                fitted,
                bound,
                bound_fitted: fit_scaling(&curve(bound), ScalingStudy::Degree)?,
                sixteen_p_fitted: Some(fit_scaling(&curve(sixteen_p(c.target)), ScalingStudy::Degree)?),
            });
        }
    }
    w.flush()?;

    let mut w = io::csv_writer(&out.join("cond_vs_k.csv"))?;
    w.write_record(head.iter().chain(&["p", "h_den", "k", "cond_est"]))?;
    for series in by_k.values() {
        let mut series = series.clone();
        series.sort_by_key(|p| p.config.k);
        for pt in &series {
            let c = pt.config;
            let mut row = prefix(c);
            row.extend([c.p.to_string(), c.h_den.to_string(), c.k.to_string(), fmt_f64(pt.cond)]);
            w.write_record(row)?;
        }
    }
    w.flush()?;

    let mut w = io::csv_writer(&out.join("eig_cloud.csv"))?;
    w.write_record(["label", "path", "max_re", "min_re", "max_abs_im"])?;
    let mut spy = io::csv_writer(&out.join("spy.csv"))?;
    spy.write_record(["label", "dof", "nz", "path"])?;
    for e in &ledger.entries {
        let Some(r) = &e.report else { continue };
        let label = e.config.label();
        let find = |dir: &str| {
            e.outputs
                .iter()
                .find(|p| p.parent().and_then(|d| d.file_name()).is_some_and(|d| d == dir))
                .map(|p| p.display().to_string())
                .unwrap_or_default()
        };
        if let Some(s) = r.summary {
            w.write_record([label.clone(), find("eig"), fmt_f64(s.max_re), fmt_f64(s.min_re), fmt_f64(s.max_abs_im)])?;
        }
        spy.write_record([label, r.dof.to_string(), r.nz.to_string(), find("spy")])?;
    }
    w.flush()?;
    spy.flush()?;

    let mut w = io::csv_writer(&out.join("summary.csv"))?;
    w.write_record([
        "study", "target", "bc", "dt", "beta", "regularity", "p", "k", "h_den", "points", "fitted", "bound",
        "bound_fitted", "sixteen_p_fitted",
    ])?;
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<5} {:<9} {:<9} {:>6} {:>5} {:<4} {:>3} {:>3} {:>4} {:>8} {:<7} {:>8} {:>8}",
        "study", "target", "bc", "dt", "beta", "reg", "p", "k", "1/h", "fitted", "bound", "bound", "16^p"
    );
    for f in &summary.fits {
        let c = &f.config;
        let (p, k, h) = match f.study {
            ScalingStudy::Mesh => (c.p.to_string(), c.k.to_string(), String::new()),
            ScalingStudy::Degree => (String::new(), String::new(), c.h_den.to_string()),
        };
        let reg = f.regularity.map(Regularity::name).unwrap_or_default();
        w.write_record([
            study_name(f.study).to_string(),
            c.target.name().into(),
            c.bc.map(|b| b.name().to_string()).unwrap_or_default(),
            fmt_opt(c.dt),
            fmt_opt(c.beta),
            reg.into(),
            p.clone(),
            k.clone(),
            h.clone(),
            f.points.to_string(),
            fmt_f64(f.fitted),
            f.bound.id().into(),
            fmt_f64(f.bound_fitted),
            fmt_opt(f.sixteen_p_fitted),
        ])?;
        let _ = writeln!(
            text,
            "{:<5} {:<9} {:<9} {:>6} {:>5} {:<4} {:>3} {:>3} {:>4} {:>8.3} {:<7} {:>8.3} {:>8}",
            study_name(f.study),
            c.target.name(),
            c.bc.map(|b| b.name()).unwrap_or("-"),
            c.dt.map(|d| d.to_string()).unwrap_or("-".into()),
            c.beta.map(|d| d.to_string()).unwrap_or("-".into()),
            reg,
            p,
            k,
            h,
            f.fitted,
            f.bound.id(),
            f.bound_fitted,
            f.sixteen_p_fitted.map(|v| format!("{v:.3}")).unwrap_or_default(),
        );
    }
    w.flush()?;
    if summary.fits.is_empty() {
        text.push_str("(no series with three or more points)\n");
    }
    if points.iter().any(|p| p.config.k == 1) {
        text.push_str("note: minimal regularity runs use k = 1; they are compared with the k = 0 estimates\n");
    }
    summary.text = text;
    Ok(summary)
}
