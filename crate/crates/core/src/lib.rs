//! Grey wolf optimization with elite inheritance and balance search.
//!
//! The crate bundles:
//! - the shared run model ([`Problem`], [`RunConfig`], [`RunResult`], seeded [`RngStream`]s),
//! - classic GWO, mGWO, EBGWO and its two single-mechanism ablations ([`gwo`]),
//! - the SCA and WOA comparison algorithms ([`baselines`]),
//! - a CEC-2014-style benchmark suite with a portable data format ([`cec`]),
//! - three constrained engineering design problems ([`engineering`]),
//! - descriptive statistics, win/tie/loss ranking and the Wilcoxon signed-rank test ([`stats`]).
//!
//! Every run is a pure function of its problem and configuration: identical
//! inputs give bitwise-identical convergence traces.

pub mod algorithm;
pub mod baselines;
pub mod cec;
pub mod engineering;
mod error;
pub mod gwo;
mod position;
mod problem;
mod rng;
mod run;
pub mod stats;

pub use algorithm::{run, Algorithm};
pub use error::{Error, Result};
pub use position::{clamp_to_bounds, Bounds, PositionVector};
pub use problem::{evaluate, Constraint, Objective, Problem, PENALTY_WEIGHT};
pub use rng::{cell_id, derive_seed, derive_stream, RngStream};
pub use run::{BranchCounts, RunConfig, RunResult, Tracker};
