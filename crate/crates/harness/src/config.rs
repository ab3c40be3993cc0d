//! Sweep descriptions read from JSON.
//!
//! ```json
//! {"p": [2, 4], "h_den": [3, 5], "k": ["min", "max"], "target": "mass"}
//! ```
//!
//! Scalars are accepted wherever a list is, and missing keys take defaults:
//! `dt = [0.1, 0.01]`, `beta = [0, 0.5]`, `gamma = 0.5`, `c0 = 1`,
//! `bc = dirichlet`, `target = stiffness`, `analyses = cond`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use iga_spectra_core::grid::{BoundaryCondition, BoundaryConfig};
use iga_spectra_core::spectra::MatrixTarget;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid sweep: {}", .0.join("; "))]
    Invalid(Vec<String>),
}

/// Regularity choice, resolved per degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KSelector {
    Named(KName),
    Exact(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KName {
    /// `k = 1`, the smallest regularity used in the study.
    Min,
    /// `k = p - 1`.
    Max,
}

impl KSelector {
    pub const MIN: Self = KSelector::Named(KName::Min);
    pub const MAX: Self = KSelector::Named(KName::Max);

    pub fn resolve(self, p: usize) -> usize {
        match self {
            KSelector::Named(KName::Min) => 1,
            KSelector::Named(KName::Max) => p.saturating_sub(1),
            KSelector::Exact(k) => k,
        }
    }
}

impl FromStr for KSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "min" => Ok(KSelector::Named(KName::Min)),
            "max" => Ok(KSelector::Named(KName::Max)),
            other => other
                .parse()
                .map(KSelector::Exact)
                .map_err(|_| format!("expected min, max or an integer, got {s:?}")),
        }
    }
}

impl fmt::Display for KSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KSelector::Named(KName::Min) => f.write_str("min"),
            KSelector::Named(KName::Max) => f.write_str("max"),
            KSelector::Exact(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Analysis {
    Cond,
    Eig,
    Spy,
}

impl FromStr for Analysis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cond" => Ok(Analysis::Cond),
            "eig" => Ok(Analysis::Eig),
            "spy" => Ok(Analysis::Spy),
            other => Err(format!("unknown analysis {other:?} (expected cond, eig or spy)")),
        }
    }
}

pub fn parse_bc(s: &str) -> Result<BoundaryCondition, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "dirichlet" => Ok(BoundaryCondition::Dirichlet),
        "neumann" => Ok(BoundaryCondition::Neumann),
        "abc" | "absorbing" => Ok(BoundaryCondition::Absorbing),
        other => Err(format!("unknown boundary condition {other:?}")),
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    p: OneOrMany<usize>,
    h_den: OneOrMany<usize>,
    k: OneOrMany<KSelector>,
    dt: Option<OneOrMany<f64>>,
    beta: Option<OneOrMany<f64>>,
    gamma: Option<f64>,
    c0: Option<f64>,
    bc: Option<OneOrMany<String>>,
    target: Option<OneOrMany<String>>,
    analyses: Option<OneOrMany<Analysis>>,
    out: Option<PathBuf>,
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub p: Vec<usize>,
    pub h_den: Vec<usize>,
    pub k: Vec<KSelector>,
    pub dt: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: f64,
    pub c0: f64,
    #[serde(serialize_with = "serialize_bcs")]
    pub bc: Vec<BoundaryCondition>,
    #[serde(serialize_with = "serialize_targets")]
    pub target: Vec<MatrixTarget>,
    pub analyses: Vec<Analysis>,
    pub out: PathBuf,
}

fn serialize_bcs<S: serde::Serializer>(v: &[BoundaryCondition], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.name()))
}

fn serialize_targets<S: serde::Serializer>(v: &[MatrixTarget], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|t| t.name()))
}

pub const DEFAULT_DT: [f64; 2] = [0.1, 0.01];
pub const DEFAULT_BETA: [f64; 2] = [0.0, 0.5];

/// One point of the Cartesian product. Mass runs ignore `bc`, `dt` and
/// `beta`, which are `None` for them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(serialize_with = "serialize_target")]
    pub target: MatrixTarget,
    #[serde(serialize_with = "serialize_bc")]
    pub bc: Option<BoundaryCondition>,
    pub p: usize,
    pub k: usize,
    pub h_den: usize,
    pub dt: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: f64,
    pub c0: f64,
    pub eig: bool,
    pub spy: bool,
    pub cond: bool,
}

fn serialize_target<S: serde::Serializer>(t: &MatrixTarget, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(t.name())
}

fn serialize_bc<S: serde::Serializer>(b: &Option<BoundaryCondition>, s: S) -> Result<S::Ok, S::Error> {
    match b {
        Some(b) => s.serialize_str(b.name()),
        None => s.serialize_none(),
    }
}

impl RunConfig {
    pub fn boundary(&self) -> BoundaryConfig {
        BoundaryConfig::uniform(self.bc.unwrap_or(BoundaryCondition::Dirichlet))
    }

    /// File-name stem unique within a sweep.
    pub fn label(&self) -> String {
        match self.target {
            MatrixTarget::Mass => format!("mass_p{}_k{}_h{}", self.p, self.k, self.h_den),
            MatrixTarget::Stiffness => format!(
                "stiffness_{}_p{}_k{}_h{}_dt{}_beta{}",
                self.boundary().left.name(),
                self.p,
                self.k,
                self.h_den,
                self.dt.unwrap_or(0.0),
                self.beta.unwrap_or(0.0)
            ),
        }
    }
}

impl SweepSpec {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            ConfigError::Parse { line, column, message, .. } => ConfigError::Parse {
                path: path.to_path_buf(),
                line,
                column,
                message,
            },
            other => other,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
            path: PathBuf::from("<input>"),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut problems = Vec::new();
        let bc = raw
            .bc
            .map(OneOrMany::into_vec)
            .unwrap_or_else(|| vec!["dirichlet".into()])
            .iter()
            .filter_map(|s| parse_bc(s).map_err(|e| problems.push(e)).ok())
            .collect();
        let target = raw
            .target
            .map(OneOrMany::into_vec)
            .unwrap_or_else(|| vec!["stiffness".into()])
            .iter()
            .filter_map(|s| s.parse::<MatrixTarget>().map_err(|e| problems.push(format!("target {s:?}: {e}"))).ok())
            .collect();
        let spec = SweepSpec {
            p: raw.p.into_vec(),
            h_den: raw.h_den.into_vec(),
            k: raw.k.into_vec(),
            dt: raw.dt.map(OneOrMany::into_vec).unwrap_or_else(|| DEFAULT_DT.to_vec()),
            beta: raw.beta.map(OneOrMany::into_vec).unwrap_or_else(|| DEFAULT_BETA.to_vec()),
            gamma: raw.gamma.unwrap_or(0.5),
            c0: raw.c0.unwrap_or(1.0),
            bc,
            target,
            analyses: raw.analyses.map(OneOrMany::into_vec).unwrap_or_else(|| vec![Analysis::Cond]),
            out: raw.out.unwrap_or_else(|| PathBuf::from("out")),
        };
        if !problems.is_empty() {
            return Err(ConfigError::Invalid(problems));
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut problems = Vec::new();
        for (name, empty) in [
            ("p", self.p.is_empty()),
            ("h_den", self.h_den.is_empty()),
            ("k", self.k.is_empty()),
            ("dt", self.dt.is_empty()),
            ("beta", self.beta.is_empty()),
            ("bc", self.bc.is_empty()),
            ("target", self.target.is_empty()),
            ("analyses", self.analyses.is_empty()),
        ] {
            if empty {
                problems.push(format!("{name} is empty"));
            }
        }
        for &p in &self.p {
            if p == 0 || p > iga_spectra_core::splines::MAX_DEGREE {
                problems.push(format!("p={p} outside 1..={}", iga_spectra_core::splines::MAX_DEGREE));
                continue;
            }
            for &sel in &self.k {
                let k = sel.resolve(p);
                if k + 1 > p {
                    problems.push(format!("(p={p}, k={sel}) resolves to k={k}, need 0 <= k <= p-1"));
                }
            }
        }
        if self.h_den.contains(&0) {
            problems.push("h_den must be positive".into());
        }
        if self.dt.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
            problems.push("dt values must be positive".into());
        }
        if self.beta.iter().any(|&b| !(b >= 0.0)) {
            problems.push("beta values must be nonnegative".into());
        }
        if !(self.gamma >= 0.0) {
            problems.push("gamma must be nonnegative".into());
        }
        if !(self.c0 > 0.0 && self.c0.is_finite()) {
            problems.push("c0 must be positive".into());
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(ConfigError::Invalid(problems))
        }
    }

    /// Resolved regularities for degree `p`, in selector order.
    pub fn resolved_k(&self, p: usize) -> Vec<usize> {
        self.k.iter().map(|s| s.resolve(p)).collect()
    }

    /// The Cartesian product in output order: target, bc, p, k, h, dt, β.
    /// Mass runs collapse the bc, dt and β axes.
    pub fn configurations(&self) -> Vec<RunConfig> {
        let has = |a: Analysis| self.analyses.contains(&a);
        let mut out = Vec::new();
        for &target in &self.target {
            let bcs: Vec<Option<BoundaryCondition>> = match target {
                MatrixTarget::Mass => vec![None],
                MatrixTarget::Stiffness => self.bc.iter().copied().map(Some).collect(),
            };
            let steps: Vec<(Option<f64>, Option<f64>)> = match target {
                MatrixTarget::Mass => vec![(None, None)],
                MatrixTarget::Stiffness => self
                    .dt
                    .iter()
                    .flat_map(|&dt| self.beta.iter().map(move |&b| (Some(dt), Some(b))))
                    .collect(),
            };
            for &bc in &bcs {
                for &p in &self.p {
                    for k in self.resolved_k(p) {
                        for &h_den in &self.h_den {
                            for &(dt, beta) in &steps {
                                out.push(RunConfig {
                                    target,
                                    bc,
                                    p,
                                    k,
                                    h_den,
                                    dt,
                                    beta,
                                    gamma: self.gamma,
                                    c0: self.c0,
                                    cond: has(Analysis::Cond),
                                    eig: has(Analysis::Eig),
                                    spy: has(Analysis::Spy),
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_gets_defaults() {
        let s = SweepSpec::from_json(r#"{"p":[2],"h_den":[3],"k":"min"}"#).unwrap();
        assert_eq!(s.gamma, 0.5);
        assert_eq!(s.c0, 1.0);
        assert_eq!(s.bc, vec![BoundaryCondition::Dirichlet]);
        assert_eq!(s.target, vec![MatrixTarget::Stiffness]);
        assert_eq!(s.analyses, vec![Analysis::Cond]);
        assert_eq!(s.dt, DEFAULT_DT.to_vec());
        assert_eq!(s.beta, DEFAULT_BETA.to_vec());
        assert_eq!(s.configurations().len(), 4);
    }

    #[test]
    fn max_selector_resolves_per_degree() {
        let s = SweepSpec::from_json(r#"{"p":[2,4],"h_den":[3],"k":"max"}"#).unwrap();
        assert_eq!(s.resolved_k(2), vec![1]);
        assert_eq!(s.resolved_k(4), vec![3]);
    }

    #[test]
    fn mass_degree_mesh_sweep_has_fifty_runs() {
        let s = SweepSpec::from_json(
            r#"{"p":[2,4,6,8,10],"h_den":[3,5,7,9,11],"k":["min","max"],"target":"mass"}"#,
        )
        .unwrap();
        assert_eq!(s.configurations().len(), 50);
    }

    #[test]
    fn invalid_pairs_are_listed() {
        let e = SweepSpec::from_json(r#"{"p":[1,3],"h_den":[3],"k":["min",3]}"#).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("p=1"), "{msg}");
        assert!(msg.contains("p=3, k=3"), "{msg}");
    }

    #[test]
    fn parse_errors_carry_line() {
        let e = SweepSpec::from_json("{\n  \"p\": [2,\n}").unwrap_err();
        assert!(matches!(e, ConfigError::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(SweepSpec::from_json(r#"{"p":[2],"h_den":[3],"k":"min","q":1}"#).is_err());
    }
}
