use std::borrow::Cow;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::position::Bounds;

/// Static exterior penalty weight applied to squared constraint violations.
pub const PENALTY_WEIGHT: f64 = 1e10;

pub type Objective = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Inequality constraint `g(x) <= 0`.
pub type Constraint = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A minimization task: objective, box bounds and optional inequality constraints.
#[derive(Clone)]
pub struct Problem {
    pub name: String,
    pub bounds: Bounds,
    pub objective: Objective,
    pub constraints: Vec<Constraint>,
    /// Dimensions rounded to the nearest integer before evaluation.
    pub integral_dims: Vec<usize>,
    pub known_fmin: Option<f64>,
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        bounds: Bounds,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            bounds,
            objective: Arc::new(objective),
            constraints: Vec::new(),
            integral_dims: Vec::new(),
            known_fmin: None,
        }
    }

    pub fn with_constraint(mut self, g: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        self.constraints.push(Arc::new(g));
        self
    }

    pub fn with_integral_dims(mut self, dims: Vec<usize>) -> Self {
        self.integral_dims = dims;
        self
    }

    pub fn with_known_fmin(mut self, fmin: f64) -> Self {
        self.known_fmin = Some(fmin);
        self
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    /// The point actually handed to the objective: integral dimensions rounded.
    pub fn effective_point<'a>(&self, x: &'a [f64]) -> Cow<'a, [f64]> {
        if self.integral_dims.is_empty() {
            Cow::Borrowed(x)
        } else {
            let mut v = x.to_vec();
            for &d in &self.integral_dims {
                v[d] = v[d].round();
            }
            Cow::Owned(v)
        }
    }

    /// Raw constraint values at the effective point.
    pub fn constraint_values(&self, x: &[f64]) -> Vec<f64> {
        let xe = self.effective_point(x);
        self.constraints.iter().map(|g| g(&xe)).collect()
    }

    pub fn is_feasible(&self, x: &[f64], tolerance: f64) -> bool {
        self.constraint_values(x).iter().all(|&g| g <= tolerance)
    }
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("constraints", &self.constraints.len())
            .field("integral_dims", &self.integral_dims)
            .field("known_fmin", &self.known_fmin)
            .finish()
    }
}

/// Penalized fitness of `x`.
///
/// Integral dimensions are rounded first; every violated constraint adds
/// `PENALTY_WEIGHT * g^2`. Feasible points get the raw objective exactly.
pub fn evaluate(problem: &Problem, x: &[f64]) -> Result<f64> {
    if x.len() != problem.dim() {
        return Err(Error::DimensionMismatch {
            expected: problem.dim(),
            found: x.len(),
        });
    }
    let xe = problem.effective_point(x);
    let raw = (problem.objective)(&xe);
    if raw.is_nan() {
        return Err(Error::NanObjective { input: x.to_vec() });
    }
    let mut penalty = 0.0;
    for g in &problem.constraints {
        let v = g(&xe);
        if v.is_nan() {
            return Err(Error::NanObjective { input: x.to_vec() });
        }
        if v > 0.0 {
            penalty += PENALTY_WEIGHT * v * v;
        }
    }
    if penalty == 0.0 {
        Ok(raw)
    } else {
        Ok(raw + penalty)
    }
}
