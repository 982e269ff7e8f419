//! CEC-2014-style benchmark suite: 14 base kernels, shift/rotate/scale
//! transforms, hybrid functions and composition functions.
//!
//! Function `F_i` has its minimum `100 i`, reached at its shift `o_i` (for
//! compositions, at the shift of the first member).

pub mod catalog;
pub mod data;
pub mod kernels;
pub mod transform;

use std::sync::Arc;

pub use data::{
    generate_suite_data, load_or_generate, load_suite_data, parse_suite_data, random_rotation, write_suite_data,
    SuiteDataError, STANDARD_DIMS,
};
pub use kernels::{eval_base, Kernel};
pub use transform::{
    chunk_sizes, composition_weights, eval_composition, eval_hybrid, eval_shifted_rotated, CompositionMember,
    CompositionSpec, HybridSpec, MemberFunction, Rotation, TransformData,
};

use crate::position::Bounds;
use crate::problem::Problem;

pub const SEARCH_LOWER: f64 = -100.0;
pub const SEARCH_UPPER: f64 = 100.0;

#[derive(Debug, Clone, PartialEq)]
pub enum SuiteFunction {
    Simple {
        id: usize,
        kernel: Kernel,
        transform: TransformData,
    },
    Hybrid {
        id: usize,
        spec: HybridSpec,
        transform: TransformData,
    },
    Composition {
        id: usize,
        spec: CompositionSpec,
    },
}

impl SuiteFunction {
    pub fn id(&self) -> usize {
        match self {
            SuiteFunction::Simple { id, .. } | SuiteFunction::Hybrid { id, .. } | SuiteFunction::Composition { id, .. } => {
                *id
            }
        }
    }

    /// Function value; `x` must have the suite dimension.
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            SuiteFunction::Simple { kernel, transform, .. } => {
                transform::shifted_rotated_raw(transform, *kernel, x) + transform.bias
            }
            SuiteFunction::Hybrid { spec, transform, .. } => {
                let sizes = spec.chunk_sizes(x.len()).expect("validated at construction");
                transform::hybrid_raw(spec, &sizes, transform, x) + transform.bias
            }
            SuiteFunction::Composition { spec, .. } => {
                eval_composition(spec, x).expect("validated at construction")
            }
        }
    }

    /// Where the known minimum is attained.
    pub fn optimum(&self) -> &[f64] {
        match self {
            SuiteFunction::Simple { transform, .. } | SuiteFunction::Hybrid { transform, .. } => &transform.shift,
            SuiteFunction::Composition { spec, .. } => spec.members[0].function.shift(),
        }
    }

    pub fn known_fmin(&self) -> f64 {
        catalog::function_bias(self.id())
    }
}

/// All thirty functions at one dimension.
#[derive(Debug, Clone)]
pub struct Suite {
    pub dim: usize,
    functions: Vec<Arc<SuiteFunction>>,
}

impl Suite {
    pub(crate) fn new(dim: usize, functions: Vec<SuiteFunction>) -> Self {
        debug_assert!(functions.iter().enumerate().all(|(i, f)| f.id() == i + 1));
        Self {
            dim,
            functions: functions.into_iter().map(Arc::new).collect(),
        }
    }

    pub fn is_standard_dim(&self) -> bool {
        STANDARD_DIMS.contains(&self.dim)
    }

    pub fn functions(&self) -> impl Iterator<Item = &SuiteFunction> {
        self.functions.iter().map(|f| f.as_ref())
    }

    /// Function `F_id`, `id` in `1..=30`.
    pub fn function(&self, id: usize) -> Option<&SuiteFunction> {
        id.checked_sub(1).and_then(|i| self.functions.get(i)).map(|f| f.as_ref())
    }

    /// `F_id` as a box-constrained problem on `[-100, 100]^dim`.
    pub fn problem(&self, id: usize) -> Option<Problem> {
        let f = Arc::clone(self.functions.get(id.checked_sub(1)?)?);
        let bounds = Bounds::uniform(self.dim, SEARCH_LOWER, SEARCH_UPPER).expect("valid bounds");
        let fmin = f.known_fmin();
        Some(Problem::new(format!("F{id}"), bounds, move |x: &[f64]| f.eval(x)).with_known_fmin(fmin))
    }
}
