use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use ebgwo::{cell_id, derive_seed, run, Algorithm};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::{summarize_rows, ExperimentSummary};
use crate::spec::{ExperimentSpec, ResolvedProblem};

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const SPEC_FILE: &str = "experiment.toml";
pub const TRACES_DIR: &str = "traces";

/// One row of `results.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub run: usize,
    pub seed: u64,
    pub best_fitness: f64,
    pub evaluations: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome {
    pub row: ResultRow,
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global rayon pool, `Some(1)` runs serially.
    pub threads: Option<usize>,
    pub write_traces: bool,
}

/// Seed of one (algorithm, problem, dim, run) cell.
pub fn cell_seed(base_seed: u64, algorithm: Algorithm, problem: &str, dim: usize, run: usize) -> u64 {
    derive_seed(
        base_seed,
        cell_id(&[algorithm.id(), problem, &dim.to_string(), &run.to_string()]),
    )
}

pub fn trace_file_name(algorithm: &str, problem: &str, dim: usize, run: usize) -> String {
    format!("{algorithm}_{problem}_d{dim}_r{run:03}.csv")
}

/// Executes every cell and returns outcomes in canonical order
/// (problem, then algorithm, both in spec order, then run index).
pub fn execute(spec: &ExperimentSpec, problems: &[ResolvedProblem], threads: Option<usize>) -> Result<Vec<CellOutcome>> {
    let cells: Vec<(&ResolvedProblem, Algorithm, usize)> = problems
        .iter()
        .flat_map(|p| {
            spec.algorithms
                .iter()
                .flat_map(move |&a| (0..spec.runs).map(move |r| (p, a, r)))
        })
        .collect();

    let work = || -> Result<Vec<CellOutcome>> {
        cells
            .par_iter()
            .map(|&(p, algorithm, r)| {
                let seed = cell_seed(spec.base_seed, algorithm, &p.name, p.dim, r);
                let result = run(&p.problem, &spec.run_config(algorithm, seed))
                    .with_context(|| format!("{algorithm} on {} (dim {}), run {r}", p.name, p.dim))?;
                log::debug!("{algorithm} {} d{} r{r}: {:e}", p.name, p.dim, result.best_fitness);
                Ok(CellOutcome {
                    row: ResultRow {
                        algorithm: algorithm.id().to_string(),
                        problem: p.name.clone(),
                        dim: p.dim,
                        run: r,
                        seed,
                        best_fitness: result.best_fitness,
                        evaluations: result.evaluations,
                    },
                    trace: result.trace,
                })
            })
            .collect()
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .context("building worker pool")?
            .install(work),
        None => work(),
    }
}

pub fn write_results(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_results(path: &Path) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<ResultRow>, _>>()
        .with_context(|| format!("parsing {}", path.display()))
}

pub fn write_trace(path: &Path, trace: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(["iteration", "best_fitness"])?;
    for (i, v) in trace.iter().enumerate() {
        w.serialize((i + 1, v))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trace(path: &Path) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    r.deserialize::<(usize, f64)>()
        .map(|rec| Ok(rec?.1))
        .collect::<Result<Vec<f64>>>()
        .with_context(|| format!("parsing {}", path.display()))
}

/// What [`run_experiment`] produced.
#[derive(Debug)]
pub struct ExperimentOutput {
    pub dir: PathBuf,
    pub rows: Vec<ResultRow>,
    pub summary: ExperimentSummary,
}

/// Runs the whole experiment and writes `results.csv`, `summary.json`,
/// `experiment.toml` and (optionally) `traces/` under `out_dir`.
pub fn run_experiment(spec: &ExperimentSpec, out_dir: &Path, opts: &RunOptions) -> Result<ExperimentOutput> {
    let problems = spec.resolve()?;
    fs::create_dir_all(out_dir).with_context(|| format!("creating output directory {}", out_dir.display()))?;
    log::info!(
        "running {} cells ({} algorithms x {} problems x {} runs)",
        spec.algorithms.len() * problems.len() * spec.runs,
        spec.algorithms.len(),
        problems.len(),
        spec.runs
    );
    let outcomes = execute(spec, &problems, opts.threads)?;

    fs::write(out_dir.join(SPEC_FILE), spec.to_toml())?;
    let rows: Vec<ResultRow> = outcomes.iter().map(|o| o.row.clone()).collect();
    write_results(&out_dir.join(RESULTS_FILE), &rows)?;
    if opts.write_traces {
        let traces = out_dir.join(TRACES_DIR);
        fs::create_dir_all(&traces)?;
        for o in &outcomes {
            let r = &o.row;
            write_trace(&traces.join(trace_file_name(&r.algorithm, &r.problem, r.dim, r.run)), &o.trace)?;
        }
    }
    let summary = summarize_rows(&rows, Some(spec.reference().id()))?;
    summary.write(&out_dir.join(SUMMARY_FILE))?;
    Ok(ExperimentOutput {
        dir: out_dir.to_path_buf(),
        rows,
        summary,
    })
}
