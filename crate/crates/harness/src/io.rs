//! Output formats. All floats are written with 17 significant digits and
//! every file uses LF line endings.

use std::cmp::Ordering;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use iga_spectra_core::sparse::CsrMatrix;
use iga_spectra_core::Complex64;

pub const RESULTS_HEADER: [&str; 18] = [
    "bc",
    "p",
    "k",
    "h_den",
    "dt",
    "beta",
    "gamma",
    "c0",
    "target",
    "dof",
    "nz",
    "cond_est",
    "max_re",
    "min_re",
    "max_abs_im",
    "eig_computed",
    "assembly_ms",
    "analysis_ms",
];

/// Scientific notation with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("creating {}", path.display()))
}

/// `row col value` triples with 1-based indices.
pub fn write_coordinate(path: &Path, a: &CsrMatrix) -> Result<()> {
    let mut w = create(path)?;
    for (r, c, v) in a.triplets() {
        writeln!(w, "{} {} {}", r + 1, c + 1, fmt_f64(v))?;
    }
    w.flush()?;
    Ok(())
}

/// Structural pattern as 1-based `row,col` pairs.
pub fn write_spy(path: &Path, a: &CsrMatrix) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "row,col")?;
    for (r, c, _) in a.triplets() {
        writeln!(w, "{},{}", r + 1, c + 1)?;
    }
    w.flush()?;
    Ok(())
}

/// Descending `|λ|`, ties broken by descending real part.
pub fn sort_eigenvalues(values: &mut [Complex64]) {
    values.sort_by(|a, b| {
        b.norm()
            .partial_cmp(&a.norm())
            .unwrap_or(Ordering::Equal)
            .then(b.re.partial_cmp(&a.re).unwrap_or(Ordering::Equal))
            .then(b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal))
    });
}

pub fn write_eigenvalues(path: &Path, values: &[Complex64]) -> Result<()> {
    let mut sorted = values.to_vec();
    sort_eigenvalues(&mut sorted);
    let mut w = create(path)?;
    writeln!(w, "re,im")?;
    for z in sorted {
        writeln!(w, "{},{}", fmt_f64(z.re), fmt_f64(z.im))?;
    }
    w.flush()?;
    Ok(())
}

/// One row per recorded time level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub n: usize,
    pub t: f64,
    pub max_norm: f64,
    pub residual: Option<f64>,
}

pub fn write_trajectory(path: &Path, rows: &[TrajectoryRow]) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "n,t,max_norm,residual")?;
    for r in rows {
        writeln!(w, "{},{},{},{}", r.n, fmt_f64(r.t), fmt_f64(r.max_norm), fmt_opt(r.residual))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.trim_start_matches('-').split('e').next().unwrap();
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
    }

    #[test]
    fn eigenvalue_order() {
        let mut v = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, -2.0),
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, 2.0),
            Complex64::new(2.0, 0.0),
        ];
        sort_eigenvalues(&mut v);
        let re: Vec<f64> = v.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![2.0, 0.0, 0.0, -2.0, 1.0]);
        assert_eq!(v[1].im, 2.0);
    }
}
