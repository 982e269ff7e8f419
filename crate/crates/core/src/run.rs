use serde::{Deserialize, Serialize};

use crate::algorithm::Algorithm;
use crate::error::{Error, Result};
use crate::position::PositionVector;
use crate::problem::{evaluate, Problem};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub pop_size: usize,
    pub max_iters: usize,
    pub seed: u64,
    /// Probability of taking the balance-search branch.
    pub st: f64,
    pub algorithm: Algorithm,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            pop_size: 30,
            max_iters: 500,
            seed: 0,
            st: 0.2,
            algorithm: Algorithm::Ebgwo,
        }
    }
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, seed: u64) -> Self {
        Self {
            algorithm,
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 4 {
            return Err(Error::Config(format!(
                "pop_size must be at least 4 (three leaders plus one follower), got {}",
                self.pop_size
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.st) {
            return Err(Error::Config(format!("st must lie in [0, 1], got {}", self.st)));
        }
        Ok(())
    }
}

/// How many position updates took each EBGWO branch.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchCounts {
    pub balance: u64,
    pub leader: u64,
}

impl BranchCounts {
    pub fn total(&self) -> u64 {
        self.balance + self.leader
    }

    pub fn balance_fraction(&self) -> f64 {
        if self.total() == 0 {
            0.0
        } else {
            self.balance as f64 / self.total() as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best_position: PositionVector,
    pub best_fitness: f64,
    /// Best-so-far fitness after each iteration; nonincreasing.
    pub trace: Vec<f64>,
    pub evaluations: u64,
    pub branch_counts: Option<BranchCounts>,
    /// Fitness of the archived elite leader after each iteration (EBGWO family only).
    pub archive_alpha_trace: Option<Vec<f64>>,
}

/// Bookkeeping shared by every algorithm: evaluation count and best-so-far trace.
#[derive(Debug)]
pub struct Tracker {
    best_position: Vec<f64>,
    best_fitness: f64,
    trace: Vec<f64>,
    evaluations: u64,
}

impl Tracker {
    pub fn new(dim: usize, max_iters: usize) -> Self {
        Self {
            best_position: vec![0.0; dim],
            best_fitness: f64::INFINITY,
            trace: Vec::with_capacity(max_iters),
            evaluations: 0,
        }
    }

    /// Evaluates every member of `population` into `fitness`.
    pub fn evaluate_all(&mut self, problem: &Problem, population: &[Vec<f64>], fitness: &mut [f64]) -> Result<()> {
        for (x, f) in population.iter().zip(fitness.iter_mut()) {
            *f = evaluate(problem, x)?;
            self.evaluations += 1;
            if *f < self.best_fitness {
                self.best_fitness = *f;
                self.best_position.copy_from_slice(x);
            }
        }
        Ok(())
    }

    pub fn best_fitness(&self) -> f64 {
        self.best_fitness
    }

    pub fn best_position(&self) -> &[f64] {
        &self.best_position
    }

    pub fn end_iteration(&mut self) {
        self.trace.push(self.best_fitness);
    }

    pub fn finish(self) -> Result<RunResult> {
        Ok(RunResult {
            best_position: PositionVector::new(self.best_position)?,
            best_fitness: self.best_fitness,
            trace: self.trace,
            evaluations: self.evaluations,
            branch_counts: None,
            archive_alpha_trace: None,
        })
    }
}
