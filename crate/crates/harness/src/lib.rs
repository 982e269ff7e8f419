//! Experiment plumbing around the `ebgwo` optimizers: TOML experiment specs,
//! deterministic parallel execution, CSV/JSON outputs, reports and
//! convergence curves.

pub mod curves;
pub mod report;
pub mod runner;
pub mod spec;

pub use curves::{emit_convergence, Convergence};
pub use report::{report, summarize_rows, ExperimentSummary};
pub use runner::{cell_seed, execute, run_experiment, ExperimentOutput, ResultRow, RunOptions};
pub use spec::{ExperimentSpec, ResolvedProblem, SuiteSource};
