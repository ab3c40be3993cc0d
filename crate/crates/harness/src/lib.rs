//! Experiment driver for isogeometric collocation spectral studies: sweep
//! configuration, parallel execution, CSV output and report bundles.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod converge;
pub mod io;
pub mod report;
pub mod sweep;

pub use config::{ConfigError, KSelector, RunConfig, SweepSpec};
pub use sweep::{analyze, execute, resolve_threads, run_sweep, Outcome, RunLedger, RunStatus, StdClock};
