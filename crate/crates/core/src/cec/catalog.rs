//! Structure of the thirty suite functions (which kernels, how split, how composed).
//! Numeric data (shifts, rotations, permutations) lives in [`super::data`].

use super::kernels::Kernel;
use Kernel::*;

pub const FUNCTION_COUNT: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Definition {
    Simple { kernel: Kernel, rotated: bool },
    Hybrid { kernels: &'static [Kernel], proportions: &'static [f64] },
    Composition {
        /// Member function ids (simple 1..=16 or hybrid 17..=22).
        members: &'static [usize],
        sigma: &'static [f64],
        lambda: &'static [f64],
    },
}

impl Definition {
    pub fn member_count(&self) -> usize {
        match self {
            Definition::Composition { members, .. } => members.len(),
            _ => 1,
        }
    }
}

pub fn definition(id: usize) -> Definition {
    let simple = |kernel, rotated| Definition::Simple { kernel, rotated };
    match id {
        1 => simple(Elliptic, true),
        2 => simple(BentCigar, true),
        3 => simple(Discus, true),
        4 => simple(Rosenbrock, true),
        5 => simple(Ackley, true),
        6 => simple(Weierstrass, true),
        7 => simple(Griewank, true),
        8 => simple(Rastrigin, false),
        9 => simple(Rastrigin, true),
        10 => simple(ModSchwefel, false),
        11 => simple(ModSchwefel, true),
        12 => simple(Katsuura, true),
        13 => simple(HappyCat, true),
        14 => simple(HgBat, true),
        15 => simple(GriewankRosenbrock, true),
        16 => simple(ExpandedScafferF6, true),
        17 => Definition::Hybrid {
            kernels: &[ModSchwefel, Rastrigin, Elliptic],
            proportions: &[0.3, 0.3, 0.4],
        },
        18 => Definition::Hybrid {
            kernels: &[BentCigar, HgBat, Rastrigin],
            proportions: &[0.3, 0.3, 0.4],
        },
        19 => Definition::Hybrid {
            kernels: &[Griewank, Weierstrass, Rosenbrock, ExpandedScafferF6],
            proportions: &[0.2, 0.2, 0.3, 0.3],
        },
        20 => Definition::Hybrid {
            kernels: &[HgBat, Discus, GriewankRosenbrock, Rastrigin],
            proportions: &[0.2, 0.2, 0.3, 0.3],
        },
        21 => Definition::Hybrid {
            kernels: &[ExpandedScafferF6, HgBat, Rosenbrock, ModSchwefel, Elliptic],
            proportions: &[0.1, 0.2, 0.2, 0.2, 0.3],
        },
        22 => Definition::Hybrid {
            kernels: &[Katsuura, HappyCat, GriewankRosenbrock, ModSchwefel, Ackley],
            proportions: &[0.1, 0.2, 0.2, 0.2, 0.3],
        },
        23 => Definition::Composition {
            members: &[4, 1, 2, 3, 1],
            sigma: &[10.0, 20.0, 30.0, 40.0, 50.0],
            lambda: &[1.0, 1e-6, 1e-26, 1e-6, 1e-6],
        },
        24 => Definition::Composition {
            members: &[10, 9, 14],
            sigma: &[20.0, 20.0, 20.0],
            lambda: &[1.0, 1.0, 1.0],
        },
        25 => Definition::Composition {
            members: &[11, 9, 1],
            sigma: &[10.0, 30.0, 50.0],
            lambda: &[0.25, 1.0, 1e-7],
        },
        26 => Definition::Composition {
            members: &[11, 13, 1, 6, 7],
            sigma: &[10.0, 10.0, 10.0, 10.0, 10.0],
            lambda: &[0.25, 1.0, 1e-7, 2.5, 10.0],
        },
        27 => Definition::Composition {
            members: &[14, 9, 11, 6, 1],
            sigma: &[10.0, 10.0, 10.0, 20.0, 20.0],
            lambda: &[10.0, 10.0, 2.5, 25.0, 1e-6],
        },
        28 => Definition::Composition {
            members: &[15, 13, 11, 16, 1],
            sigma: &[10.0, 20.0, 30.0, 40.0, 50.0],
            lambda: &[2.5, 10.0, 2.5, 5e-4, 1e-6],
        },
        29 => Definition::Composition {
            members: &[17, 18, 19],
            sigma: &[10.0, 30.0, 50.0],
            lambda: &[1.0, 1.0, 1.0],
        },
        30 => Definition::Composition {
            members: &[20, 21, 22],
            sigma: &[10.0, 30.0, 50.0],
            lambda: &[1.0, 1.0, 1.0],
        },
        _ => panic!("suite function id {id} out of range 1..=30"),
    }
}

/// Additive bias (and known minimum) of function `id`.
pub fn function_bias(id: usize) -> f64 {
    100.0 * id as f64
}

/// Member biases `0, 100, 200, ...`.
pub fn member_bias(index: usize) -> f64 {
    100.0 * index as f64
}
