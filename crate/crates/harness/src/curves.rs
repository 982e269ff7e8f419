use std::path::Path;

use anyhow::{bail, ensure, Result};

use crate::runner::{read_results, read_trace, trace_file_name, RESULTS_FILE, TRACES_DIR};

/// Mean best-so-far curve per algorithm for one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Convergence {
    pub algorithms: Vec<String>,
    /// `columns[k][t]`: mean over runs of algorithm `k`'s best-so-far after iteration `t + 1`.
    pub columns: Vec<Vec<f64>>,
}

impl Convergence {
    pub fn iterations(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["iteration".to_string()];
        header.extend(self.algorithms.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for t in 0..self.iterations() {
            let mut rec = vec![(t + 1).to_string()];
            rec.extend(self.columns.iter().map(|c| c[t].to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

/// Averages the stored traces of every algorithm run on `problem` at `dim`.
pub fn emit_convergence(dir: &Path, problem: &str, dim: usize) -> Result<Convergence> {
    let results = dir.join(RESULTS_FILE);
    if !results.exists() {
        bail!("{} not found; run an experiment first", results.display());
    }
    let rows: Vec<_> = read_results(&results)?
        .into_iter()
        .filter(|r| r.problem == problem && r.dim == dim)
        .collect();
    if rows.is_empty() {
        bail!("no results for problem {problem} at dimension {dim}");
    }
    let mut algorithms: Vec<String> = Vec::new();
    for r in &rows {
        if !algorithms.contains(&r.algorithm) {
            algorithms.push(r.algorithm.clone());
        }
    }
    let mut columns = Vec::new();
    for a in &algorithms {
        let mut sum: Vec<f64> = Vec::new();
        let mut count = 0usize;
        for r in rows.iter().filter(|r| &r.algorithm == a) {
            let path = dir.join(TRACES_DIR).join(trace_file_name(a, problem, dim, r.run));
            if !path.exists() {
                bail!("missing trace {}; rerun with traces enabled", path.display());
            }
            let trace = read_trace(&path)?;
            if sum.is_empty() {
                sum = vec![0.0; trace.len()];
            }
            ensure!(trace.len() == sum.len(), "trace {} has a different length", path.display());
            for (s, v) in sum.iter_mut().zip(&trace) {
                *s += v;
            }
            count += 1;
        }
        columns.push(sum.into_iter().map(|s| s / count as f64).collect::<Vec<f64>>());
    }
    ensure!(
        columns.iter().all(|c| c.len() == columns[0].len()),
        "algorithms ran for different iteration counts"
    );
    Ok(Convergence { algorithms, columns })
}
