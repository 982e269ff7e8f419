use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ebgwo::stats::{overall_effectiveness, summarize, wilcoxon_signed_rank, wtl_rank, ComparisonTable, PMethod};
use serde::{Deserialize, Serialize};

use crate::runner::{read_results, ResultRow, RESULTS_FILE, SPEC_FILE, SUMMARY_FILE};
use crate::spec::ExperimentSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub runs: usize,
    pub mean: f64,
    pub std: f64,
    pub best: f64,
    pub worst: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub algorithm: String,
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
    /// Overall Effectiveness in percent.
    pub overall_effectiveness: f64,
}

/// Wilcoxon signed-rank test of the reference against another algorithm over per-problem means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTest {
    pub reference: String,
    pub other: String,
    pub problems: usize,
    /// Rank sum of problems where the reference mean is higher (worse).
    pub w_plus: f64,
    /// Rank sum of problems where the reference mean is lower (better).
    pub w_minus: f64,
    pub p_value: Option<f64>,
    pub method: Option<PMethod>,
    /// `reference`, `other`, or `none` when every difference is zero.
    pub favors: String,
    pub significant_at_0_05: bool,
    pub significant_at_0_10: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub reference: String,
    pub cells: Vec<CellSummary>,
    pub ranking: Vec<Ranking>,
    pub wilcoxon: Vec<PairwiseTest>,
}

impl ExperimentSummary {
    pub fn write(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Plain-text rendering for the terminal.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let algorithms: Vec<&str> = self.ranking.iter().map(|r| r.algorithm.as_str()).collect();
        let _ = writeln!(out, "{:<18} {:>5} {:>4}  mean (per algorithm)", "problem", "dim", "runs");
        let mut keys: Vec<(&str, usize)> = Vec::new();
        for c in &self.cells {
            if !keys.contains(&(c.problem.as_str(), c.dim)) {
                keys.push((c.problem.as_str(), c.dim));
            }
        }
        for (problem, dim) in keys {
            let means: Vec<String> = self
                .cells
                .iter()
                .filter(|c| c.problem == problem && c.dim == dim)
                .map(|c| format!("{}={:.6e}", c.algorithm, c.mean))
                .collect();
            let runs = self.cells.iter().find(|c| c.problem == problem && c.dim == dim).map_or(0, |c| c.runs);
            let _ = writeln!(out, "{problem:<18} {dim:>5} {runs:>4}  {}", means.join("  "));
        }
        if !algorithms.is_empty() {
            out.push('\n');
            for r in &self.ranking {
                let _ = writeln!(
                    out,
                    "{:<10} (w/t/l) = ({}/{}/{})  OE = {:.2}%",
                    r.algorithm, r.wins, r.ties, r.losses, r.overall_effectiveness
                );
            }
        }
        if !self.wilcoxon.is_empty() {
            out.push('\n');
            for t in &self.wilcoxon {
                let p = t.p_value.map_or("n/a".to_string(), |p| format!("{p:.4e}"));
                let _ = writeln!(
                    out,
                    "{} vs {}: R+ = {}, R- = {}, p = {p}, favors {}, alpha 0.05: {}, alpha 0.1: {}",
                    t.reference,
                    t.other,
                    t.w_minus,
                    t.w_plus,
                    t.favors,
                    yes_no(t.significant_at_0_05),
                    yes_no(t.significant_at_0_10)
                );
            }
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

fn first_appearance<'a>(items: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen: Vec<String> = Vec::new();
    for s in items {
        if !seen.iter().any(|x| x == s) {
            seen.push(s.to_string());
        }
    }
    seen
}

/// Summary statistics, w/t/l with OE, and Wilcoxon tests against `reference`
/// (defaults to the first algorithm in the rows).
pub fn summarize_rows(rows: &[ResultRow], reference: Option<&str>) -> Result<ExperimentSummary> {
    if rows.is_empty() {
        bail!("no result rows to summarize");
    }
    let mut table = ComparisonTable::new();
    for r in rows {
        table.push_run(&r.algorithm, &r.problem, r.dim, r.best_fitness);
    }
    let algorithms = first_appearance(rows.iter().map(|r| r.algorithm.as_str()));
    let mut problems: Vec<(String, usize)> = Vec::new();
    for r in rows {
        if !problems.iter().any(|(p, d)| *p == r.problem && *d == r.dim) {
            problems.push((r.problem.clone(), r.dim));
        }
    }
    let reference = reference.map(str::to_string).unwrap_or_else(|| algorithms[0].clone());
    if !algorithms.contains(&reference) {
        bail!("reference algorithm {reference} has no results");
    }

    let mut cells = Vec::new();
    for (problem, dim) in &problems {
        for a in &algorithms {
            if let Some(runs) = table.get(a, problem, *dim) {
                let s = summarize(runs)?;
                cells.push(CellSummary {
                    algorithm: a.clone(),
                    problem: problem.clone(),
                    dim: *dim,
                    runs: runs.len(),
                    mean: s.mean,
                    std: s.std,
                    best: s.best,
                    worst: s.worst,
                });
            }
        }
    }

    let mut ranking = Vec::new();
    let mut wilcoxon = Vec::new();
    if algorithms.len() >= 2 {
        let wtl = wtl_rank(&table)?;
        for a in &algorithms {
            let w = wtl[a];
            ranking.push(Ranking {
                algorithm: a.clone(),
                wins: w.wins,
                ties: w.ties,
                losses: w.losses,
                overall_effectiveness: overall_effectiveness(w.total(), w.losses)?,
            });
        }
        for other in algorithms.iter().filter(|a| **a != reference) {
            let (mut ref_means, mut other_means) = (Vec::new(), Vec::new());
            for (problem, dim) in &problems {
                if let (Some(r), Some(o)) = (table.mean(&reference, problem, *dim), table.mean(other, problem, *dim)) {
                    ref_means.push(r);
                    other_means.push(o);
                }
            }
            let test = match wilcoxon_signed_rank(&ref_means, &other_means) {
                Ok(t) => Some(t),
                Err(ebgwo::Error::Stats(_)) => None,
                Err(e) => return Err(e.into()),
            };
            let favors = match test {
                Some(t) if t.w_minus > t.w_plus => reference.clone(),
                Some(t) if t.w_plus > t.w_minus => other.clone(),
                _ => "none".to_string(),
            };
            let p = test.map(|t| t.p);
            wilcoxon.push(PairwiseTest {
                reference: reference.clone(),
                other: other.clone(),
                problems: ref_means.len(),
                w_plus: test.map_or(0.0, |t| t.w_plus),
                w_minus: test.map_or(0.0, |t| t.w_minus),
                p_value: p,
                method: test.map(|t| t.method),
                favors,
                significant_at_0_05: p.is_some_and(|p| p < 0.05),
                significant_at_0_10: p.is_some_and(|p| p < 0.1),
            });
        }
    }
    Ok(ExperimentSummary {
        reference,
        cells,
        ranking,
        wilcoxon,
    })
}

/// Recomputes `summary.json` from a results directory.
pub fn report(dir: &Path) -> Result<ExperimentSummary> {
    let results = dir.join(RESULTS_FILE);
    if !results.exists() {
        bail!("{} not found; run an experiment first", results.display());
    }
    let rows = read_results(&results)?;
    let spec_path = dir.join(SPEC_FILE);
    let reference = if spec_path.exists() {
        let text = std::fs::read_to_string(&spec_path)?;
        Some(ExperimentSpec::from_toml(&text)?.reference().id().to_string())
    } else {
        None
    };
    let summary = summarize_rows(&rows, reference.as_deref())?;
    summary.write(&dir.join(SUMMARY_FILE))?;
    Ok(summary)
}
