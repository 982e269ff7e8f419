//! Summary statistics, win/tie/loss ranking, Overall Effectiveness and the
//! Wilcoxon signed-rank test.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Largest sample size for which p-values are computed exactly.
pub const EXACT_MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (divisor `n - 1`); 0 for a single run.
    pub std: f64,
    pub best: f64,
    pub worst: f64,
}

pub fn summarize(runs: &[f64]) -> Result<Summary> {
    if runs.is_empty() {
        return Err(Error::Stats("cannot summarize an empty run list".into()));
    }
    let n = runs.len() as f64;
    let mean = runs.iter().sum::<f64>() / n;
    let std = if runs.len() == 1 {
        0.0
    } else {
        (runs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    let best = runs.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = runs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(Summary { mean, std, best, worst })
}

/// Key of one comparison cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellKey {
    pub algorithm: String,
    pub function: String,
    pub dim: usize,
}

/// Per-run best fitness for every (algorithm, function, dim) cell.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    cells: BTreeMap<CellKey, Vec<f64>>,
}

impl ComparisonTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, algorithm: &str, function: &str, dim: usize, runs: Vec<f64>) {
        self.cells.insert(
            CellKey {
                algorithm: algorithm.to_string(),
                function: function.to_string(),
                dim,
            },
            runs,
        );
    }

    pub fn push_run(&mut self, algorithm: &str, function: &str, dim: usize, value: f64) {
        self.cells
            .entry(CellKey {
                algorithm: algorithm.to_string(),
                function: function.to_string(),
                dim,
            })
            .or_default()
            .push(value);
    }

    pub fn get(&self, algorithm: &str, function: &str, dim: usize) -> Option<&[f64]> {
        self.cells
            .get(&CellKey {
                algorithm: algorithm.to_string(),
                function: function.to_string(),
                dim,
            })
            .map(Vec::as_slice)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&CellKey, &[f64])> {
        self.cells.iter().map(|(k, v)| (k, v.as_slice()))
    }

    pub fn algorithms(&self) -> Vec<String> {
        self.cells.keys().map(|k| k.algorithm.clone()).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Distinct (function, dim) pairs, sorted.
    pub fn problems(&self) -> Vec<(String, usize)> {
        self.cells
            .keys()
            .map(|k| (k.function.clone(), k.dim))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Ensures every cell holds the same number of runs.
    pub fn check_run_counts(&self) -> Result<usize> {
        let mut counts = self.cells.values().map(Vec::len);
        let first = counts.next().unwrap_or(0);
        if counts.any(|c| c != first) {
            return Err(Error::Stats("cells have differing run counts".into()));
        }
        Ok(first)
    }

    pub fn mean(&self, algorithm: &str, function: &str, dim: usize) -> Option<f64> {
        self.get(algorithm, function, dim)
            .filter(|r| !r.is_empty())
            .map(|r| r.iter().sum::<f64>() / r.len() as f64)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinTieLoss {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

impl WinTieLoss {
    pub fn total(&self) -> usize {
        self.wins + self.ties + self.losses
    }
}

impl std::fmt::Display for WinTieLoss {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}/{}/{})", self.wins, self.ties, self.losses)
    }
}

/// Win/tie/loss counts over every (function, dim) cell.
///
/// In each cell the unique lowest mean wins, algorithms sharing the lowest
/// mean tie, everyone else loses. Cells missing an algorithm are skipped.
pub fn wtl_rank(table: &ComparisonTable) -> Result<BTreeMap<String, WinTieLoss>> {
    let algorithms = table.algorithms();
    if algorithms.len() < 2 {
        return Err(Error::Stats("win/tie/loss ranking needs at least two algorithms".into()));
    }
    let mut out: BTreeMap<String, WinTieLoss> = algorithms.iter().map(|a| (a.clone(), WinTieLoss::default())).collect();
    for (function, dim) in table.problems() {
        let means: Option<Vec<f64>> = algorithms.iter().map(|a| table.mean(a, &function, dim)).collect();
        let Some(means) = means else { continue };
        let lowest = means.iter().copied().fold(f64::INFINITY, f64::min);
        let sharing = means.iter().filter(|&&m| m == lowest).count();
        for (a, &m) in algorithms.iter().zip(&means) {
            let entry = out.get_mut(a).expect("initialized");
            if m != lowest {
                entry.losses += 1;
            } else if sharing == 1 {
                entry.wins += 1;
            } else {
                entry.ties += 1;
            }
        }
    }
    Ok(out)
}

/// `(N - L) / N * 100`.
pub fn overall_effectiveness(total: usize, losses: usize) -> Result<f64> {
    if total == 0 || losses > total {
        return Err(Error::Stats(format!(
            "overall effectiveness needs 0 <= L <= N and N > 0 (N={total}, L={losses})"
        )));
    }
    Ok((total - losses) as f64 / total as f64 * 100.0)
}

/// How the p-value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PMethod {
    Exact,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignedRank {
    /// Rank sum of positive differences `a - b`.
    pub w_plus: f64,
    pub w_minus: f64,
    /// Nonzero differences used.
    pub n: usize,
    /// Two-sided p-value.
    pub p: f64,
    pub method: PMethod,
}

/// Ranks of `values` (1-based) with mid-ranks for ties.
pub fn mid_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).expect("finite values"));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

fn nonzero_differences(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    if a.len() != b.len() {
        return Err(Error::Stats(format!("paired samples differ in length ({} vs {})", a.len(), b.len())));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    if diffs.iter().any(|d| !d.is_finite()) {
        return Err(Error::Stats("non-finite paired difference".into()));
    }
    Ok(diffs)
}

/// Exact two-sided p-value of `W+` given the (mid-)ranks.
///
/// Ranks are doubled to integers and the null distribution of the rank sum
/// over all `2^n` sign assignments is counted by dynamic programming.
pub fn exact_p_value(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; total + 1];
    counts[0] = 1.0;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            let c = counts[s];
            if c != 0.0 {
                counts[s + r] += c;
            }
        }
        reach += r;
    }
    let all = 2f64.powi(ranks.len() as i32);
    let w = (2.0 * w_plus).round() as usize;
    let lower: f64 = counts[..=w].iter().sum();
    let upper: f64 = counts[w..].iter().sum();
    (2.0 * lower.min(upper) / all).min(1.0)
}

/// Normal approximation with tie-corrected variance and continuity correction.
pub fn normal_p_value(ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut ties: BTreeMap<u64, usize> = BTreeMap::new();
    for r in ranks {
        *ties.entry((2.0 * r).round() as u64).or_default() += 1;
    }
    let tie_term: f64 = ties.values().map(|&t| (t * t * t - t) as f64).sum::<f64>() / 48.0;
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term;
    if var <= 0.0 {
        return 1.0;
    }
    let dev = ((w_plus - mean).abs() - 0.5).max(0.0);
    let z = dev / var.sqrt();
    let normal = Normal::standard();
    (2.0 * (1.0 - normal.cdf(z))).clamp(f64::MIN_POSITIVE, 1.0)
}

/// Wilcoxon signed-rank test on paired samples, differences `a - b`.
///
/// Zero differences are dropped. Exact p for `n <= 20`, normal approximation above.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<SignedRank> {
    let diffs = nonzero_differences(a, b)?;
    if diffs.is_empty() {
        return Err(Error::Stats("all paired differences are zero".into()));
    }
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = mid_ranks(&abs);
    // `+ 0.0` turns the empty sum (-0.0) into 0.0
    let w_plus: f64 = diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum::<f64>() + 0.0;
    let n = diffs.len();
    let w_minus = (n * (n + 1)) as f64 / 2.0 - w_plus;
    let (p, method) = if n <= EXACT_MAX_N {
        (exact_p_value(&ranks, w_plus), PMethod::Exact)
    } else {
        (normal_p_value(&ranks, w_plus), PMethod::Normal)
    };
    Ok(SignedRank {
        w_plus,
        w_minus,
        n,
        p,
        method,
    })
}
