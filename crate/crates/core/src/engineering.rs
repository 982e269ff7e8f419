//! Constrained engineering design problems: gear train, pressure vessel, welded beam.

use std::f64::consts::{PI, SQRT_2};

use crate::position::Bounds;
use crate::problem::Problem;

pub const GEAR_RATIO_TARGET: f64 = 1.0 / 6.931;

/// A design problem plus its reporting metadata.
#[derive(Debug, Clone)]
pub struct DesignProblemSpec {
    pub problem: Problem,
    pub variable_names: Vec<&'static str>,
    pub units: Vec<&'static str>,
    /// Best objective value reported for the reference EBGWO runs.
    pub reference_best: f64,
}

/// Squared error between the target ratio and `x3 x2 / (x1 x4)`.
pub fn gear_train(x: &[f64]) -> f64 {
    let ratio = x[2] * x[1] / (x[0] * x[3]);
    (GEAR_RATIO_TARGET - ratio).powi(2)
}

/// Which `g2` the pressure vessel uses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum PressureVesselG2 {
    /// `-x2 + 0.00954 x3 <= 0`
    #[default]
    Standard,
    /// `-x2 + 0.00954 <= 0`
    AsPrinted,
}

pub fn pressure_vessel_cost(x: &[f64]) -> f64 {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3 * x3 + 3.1661 * x1 * x1 * x4 + 19.84 * x1 * x1 * x3
}

pub fn pressure_vessel_constraints(x: &[f64], g2: PressureVesselG2) -> [f64; 4] {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let head = match g2 {
        PressureVesselG2::Standard => 0.00954 * x3,
        PressureVesselG2::AsPrinted => 0.00954,
    };
    [
        -x1 + 0.0193 * x3,
        -x2 + head,
        -PI * x3 * x3 * x4 - 4.0 / 3.0 * PI * x3.powi(3) + 1_296_000.0,
        x4 - 240.0,
    ]
}

/// Cost and the four constraint values `g1..g4` (feasible iff all `<= 0`).
pub fn pressure_vessel(x: &[f64], g2: PressureVesselG2) -> (f64, [f64; 4]) {
    (pressure_vessel_cost(x), pressure_vessel_constraints(x, g2))
}

pub mod welded {
    pub const LOAD: f64 = 6000.0;
    pub const LENGTH: f64 = 14.0;
    pub const YOUNG: f64 = 30e6;
    pub const SHEAR_MODULUS: f64 = 12e6;
    pub const TAU_MAX: f64 = 13_600.0;
    pub const SIGMA_MAX: f64 = 30_000.0;
    pub const DELTA_MAX: f64 = 0.25;
}

pub fn welded_beam_cost(x: &[f64]) -> f64 {
    1.10471 * x[0] * x[0] * x[1] + 0.04811 * x[2] * x[3] * (14.0 + x[1])
}

/// Weld shear stress.
pub fn welded_beam_tau(x: &[f64]) -> f64 {
    use welded::*;
    let (h, l, t) = (x[0], x[1], x[2]);
    let primary = LOAD / (SQRT_2 * h * l);
    let moment = LOAD * (LENGTH + l / 2.0);
    let half = (h + t) / 2.0;
    let r = (l * l / 4.0 + half * half).sqrt();
    let j = 2.0 * (SQRT_2 * h * l * (l * l / 12.0 + half * half));
    let secondary = moment * r / j;
    (primary * primary + primary * secondary * l / r + secondary * secondary).sqrt()
}

pub fn welded_beam_sigma(x: &[f64]) -> f64 {
    use welded::*;
    6.0 * LOAD * LENGTH / (x[3] * x[2] * x[2])
}

pub fn welded_beam_deflection(x: &[f64]) -> f64 {
    use welded::*;
    4.0 * LOAD * LENGTH.powi(3) / (YOUNG * x[2].powi(3) * x[3])
}

/// Bar buckling load.
pub fn welded_beam_buckling(x: &[f64]) -> f64 {
    use welded::*;
    let (t, b) = (x[2], x[3]);
    4.013 * YOUNG * (t * t * b.powi(6) / 36.0).sqrt() / (LENGTH * LENGTH)
        * (1.0 - t / (2.0 * LENGTH) * (YOUNG / (4.0 * SHEAR_MODULUS)).sqrt())
}

/// `g1..g7` in the order shear, bending, deflection, `x1 - x4`, buckling,
/// minimum weld size, cost cap.
pub fn welded_beam_constraints(x: &[f64]) -> [f64; 7] {
    use welded::*;
    [
        welded_beam_tau(x) - TAU_MAX,
        welded_beam_sigma(x) - SIGMA_MAX,
        welded_beam_deflection(x) - DELTA_MAX,
        x[0] - x[3],
        LOAD - welded_beam_buckling(x),
        0.125 - x[0],
        0.10471 * x[0] * x[0] + 0.04811 * x[2] * x[3] * (14.0 + x[1]) - 5.0,
    ]
}

pub fn welded_beam(x: &[f64]) -> (f64, [f64; 7]) {
    (welded_beam_cost(x), welded_beam_constraints(x))
}

pub fn gear_train_problem() -> DesignProblemSpec {
    let problem = Problem::new("gear-train", Bounds::uniform(4, 12.0, 60.0).expect("valid bounds"), gear_train)
        .with_integral_dims(vec![0, 1, 2, 3])
        .with_known_fmin(0.0);
    DesignProblemSpec {
        problem,
        variable_names: vec!["n_A", "n_B", "n_C", "n_D"],
        units: vec!["teeth"; 4],
        reference_best: 2.70086e-12,
    }
}

pub fn pressure_vessel_problem(g2: PressureVesselG2) -> DesignProblemSpec {
    let bounds = Bounds::new(vec![0.0, 0.0, 10.0, 10.0], vec![100.0, 100.0, 200.0, 200.0]).expect("valid bounds");
    let mut problem = Problem::new("pressure-vessel", bounds, pressure_vessel_cost);
    for k in 0..4 {
        problem = problem.with_constraint(move |x: &[f64]| pressure_vessel_constraints(x, g2)[k]);
    }
    DesignProblemSpec {
        problem,
        variable_names: vec!["T_s", "T_h", "R", "L"],
        units: vec!["in"; 4],
        reference_best: 6.05987e3,
    }
}

/// Welded beam with `h, b in [0.1, 2]` and `l, t in [0.1, 10]`.
pub fn welded_beam_problem() -> DesignProblemSpec {
    let bounds = Bounds::new(vec![0.1; 4], vec![2.0, 10.0, 10.0, 2.0]).expect("valid bounds");
    let mut problem = Problem::new("welded-beam", bounds, welded_beam_cost);
    for k in 0..7 {
        problem = problem.with_constraint(move |x: &[f64]| welded_beam_constraints(x)[k]);
    }
    DesignProblemSpec {
        problem,
        variable_names: vec!["h", "l", "t", "b"],
        units: vec!["in"; 4],
        reference_best: 1.72621,
    }
}

pub const DESIGN_PROBLEMS: [&str; 3] = ["gear-train", "pressure-vessel", "welded-beam"];

/// Looks up a design problem by its CLI name.
pub fn design_problem(name: &str) -> Option<DesignProblemSpec> {
    match name {
        "gear-train" => Some(gear_train_problem()),
        "pressure-vessel" => Some(pressure_vessel_problem(PressureVesselG2::Standard)),
        "pressure-vessel-printed-g2" => Some(pressure_vessel_problem(PressureVesselG2::AsPrinted)),
        "welded-beam" => Some(welded_beam_problem()),
        _ => None,
    }
}
