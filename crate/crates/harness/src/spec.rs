//! Experiment configuration: a TOML file naming algorithms, problems and run settings.
//!
//! ```toml
//! algorithms = ["EBGWO", "GWO"]
//! problems = ["gear-train", "F1", "F17"]   # "cec14" expands to F1..F30
//! dims = [10]                              # applies to suite functions only
//! runs = 30
//! base_seed = 7
//!
//! [suite]
//! path = "data/suite_{dim}.txt"            # optional; generated when absent
//! seed = 2014
//! ```

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use ebgwo::cec::{self, Suite};
use ebgwo::engineering::{design_problem, DESIGN_PROBLEMS};
use ebgwo::{Algorithm, Problem, RunConfig};
use serde::{Deserialize, Serialize};

fn default_runs() -> usize {
    30
}
fn default_pop() -> usize {
    30
}
fn default_iters() -> usize {
    500
}
fn default_st() -> f64 {
    0.2
}
fn default_dims() -> Vec<usize> {
    vec![10]
}
fn default_suite_seed() -> u64 {
    2014
}
fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSource {
    /// Suite data file; `{dim}` is replaced by the dimension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    /// Generator seed used when no file is configured (or it is missing and fallback is allowed).
    #[serde(default = "default_suite_seed")]
    pub seed: u64,
    #[serde(default = "yes")]
    pub allow_generated_fallback: bool,
}

impl Default for SuiteSource {
    fn default() -> Self {
        Self {
            path: None,
            seed: default_suite_seed(),
            allow_generated_fallback: true,
        }
    }
}

impl SuiteSource {
    pub fn load(&self, dim: usize) -> Result<Suite> {
        let suite = match &self.path {
            Some(p) => {
                let path = PathBuf::from(p.to_string_lossy().replace("{dim}", &dim.to_string()));
                cec::load_or_generate(&path, dim, self.seed, self.allow_generated_fallback)
                    .with_context(|| format!("loading suite data for dimension {dim}"))?
            }
            None => cec::generate_suite_data(self.seed, dim)?,
        };
        if !suite.is_standard_dim() {
            log::warn!("suite dimension {dim} is not one of the standard {:?}", cec::STANDARD_DIMS);
        }
        Ok(suite)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub algorithms: Vec<Algorithm>,
    pub problems: Vec<String>,
    #[serde(default = "default_dims")]
    pub dims: Vec<usize>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default = "default_pop")]
    pub pop_size: usize,
    #[serde(default = "default_iters")]
    pub max_iters: usize,
    #[serde(default = "default_st")]
    pub st: f64,
    #[serde(default)]
    pub base_seed: u64,
    /// Algorithm the pairwise Wilcoxon tests compare against; defaults to the first listed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Algorithm>,
    #[serde(default)]
    pub suite: SuiteSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

/// A problem instance ready to run.
#[derive(Clone)]
pub struct ResolvedProblem {
    pub name: String,
    pub dim: usize,
    pub problem: Problem,
}

impl ExperimentSpec {
    pub fn new(algorithms: Vec<Algorithm>, problems: Vec<String>) -> Self {
        Self {
            algorithms,
            problems,
            dims: default_dims(),
            runs: default_runs(),
            pop_size: default_pop(),
            max_iters: default_iters(),
            st: default_st(),
            base_seed: 0,
            reference: None,
            suite: SuiteSource::default(),
            output_dir: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: Self = toml::from_str(text).context("parsing experiment config")?;
        spec.validate()?;
        Ok(spec)
    }

    /// Reads a config file; relative paths inside it are taken relative to the file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut spec = Self::from_toml(&text).with_context(|| format!("in {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let rebase = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let Some(p) = spec.suite.path.as_mut() {
            rebase(p);
        }
        if let Some(p) = spec.output_dir.as_mut() {
            rebase(p);
        }
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("experiment spec serializes")
    }

    pub fn reference(&self) -> Algorithm {
        self.reference.unwrap_or(self.algorithms[0])
    }

    pub fn run_config(&self, algorithm: Algorithm, seed: u64) -> RunConfig {
        RunConfig {
            pop_size: self.pop_size,
            max_iters: self.max_iters,
            seed,
            st: self.st,
            algorithm,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(!self.algorithms.is_empty(), "no algorithms listed");
        ensure!(!self.problems.is_empty(), "no problems listed");
        ensure!(self.runs > 0, "runs must be positive");
        for (i, a) in self.algorithms.iter().enumerate() {
            ensure!(!self.algorithms[..i].contains(a), "algorithm {a} listed twice");
        }
        if let Some(r) = self.reference {
            ensure!(self.algorithms.contains(&r), "reference algorithm {r} is not among the listed algorithms");
        }
        self.run_config(self.algorithms[0], 0).validate()?;
        let mut uses_suite = false;
        for p in &self.problems {
            match classify(p)? {
                ProblemRef::Suite(_) => uses_suite = true,
                ProblemRef::Design(_) => {}
            }
        }
        if uses_suite {
            ensure!(!self.dims.is_empty(), "suite functions listed but `dims` is empty");
            ensure!(self.dims.iter().all(|&d| d >= 5), "suite dimensions must be at least 5");
        }
        Ok(())
    }

    /// Expands and loads every problem: suite functions once per dimension (in
    /// `dims` order), design problems once.
    pub fn resolve(&self) -> Result<Vec<ResolvedProblem>> {
        self.validate()?;
        let mut suites: BTreeMap<usize, Suite> = BTreeMap::new();
        let mut out: Vec<ResolvedProblem> = Vec::new();
        for name in &self.problems {
            match classify(name)? {
                ProblemRef::Suite(ids) => {
                    for &dim in &self.dims {
                        if let Entry::Vacant(slot) = suites.entry(dim) {
                            slot.insert(self.suite.load(dim)?);
                        }
                        for &id in &ids {
                            let problem = suites[&dim].problem(id).expect("id validated");
                            out.push(ResolvedProblem {
                                name: format!("F{id}"),
                                dim,
                                problem,
                            });
                        }
                    }
                }
                ProblemRef::Design(spec) => out.push(ResolvedProblem {
                    name: spec.problem.name.clone(),
                    dim: spec.problem.dim(),
                    problem: spec.problem,
                }),
            }
        }
        for (i, p) in out.iter().enumerate() {
            if out[..i].iter().any(|q| q.name == p.name && q.dim == p.dim) {
                bail!("problem {} (dimension {}) listed twice", p.name, p.dim);
            }
        }
        Ok(out)
    }
}

enum ProblemRef {
    Suite(Vec<usize>),
    Design(ebgwo::engineering::DesignProblemSpec),
}

fn classify(name: &str) -> Result<ProblemRef> {
    let trimmed = name.trim();
    if trimmed.eq_ignore_ascii_case("cec14") {
        return Ok(ProblemRef::Suite((1..=cec::catalog::FUNCTION_COUNT).collect()));
    }
    if let Some(num) = trimmed.strip_prefix(['F', 'f']) {
        if let Ok(id) = num.parse::<usize>() {
            ensure!(
                (1..=cec::catalog::FUNCTION_COUNT).contains(&id),
                "suite function {trimmed} out of range F1..F30"
            );
            return Ok(ProblemRef::Suite(vec![id]));
        }
    }
    match design_problem(trimmed) {
        Some(spec) => Ok(ProblemRef::Design(spec)),
        None => bail!(
            "unknown problem `{name}`; expected F1..F30, cec14, or one of: {}",
            DESIGN_PROBLEMS.join(", ")
        ),
    }
}
