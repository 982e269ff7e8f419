//! Sine Cosine Algorithm and Whale Optimization Algorithm, in their canonical forms.

use std::f64::consts::PI;

use crate::error::Result;
use crate::problem::Problem;
use crate::rng::RngStream;
use crate::run::{RunConfig, RunResult, Tracker};

/// Initial amplitude of the SCA `r1` schedule.
pub const SCA_A: f64 = 2.0;

/// Logarithmic spiral constant of WOA.
pub const WOA_SPIRAL_B: f64 = 1.0;

/// SCA step amplitude `r1 = a - t * a / T`.
pub fn sca_r1(t: usize, max_iters: usize) -> f64 {
    SCA_A - t as f64 * SCA_A / max_iters as f64
}

/// WOA spiral move: `D' * e^(b l) * cos(2 pi l) + best` with `D' = |best - x|`.
pub fn spiral_step(best: f64, x: f64, l: f64) -> f64 {
    let d = (best - x).abs();
    d * (WOA_SPIRAL_B * l).exp() * (2.0 * PI * l).cos() + best
}

fn init(problem: &Problem, n: usize, rng: &mut RngStream) -> Vec<Vec<f64>> {
    let b = &problem.bounds;
    (0..n)
        .map(|_| (0..b.dim()).map(|d| rng.next_in(b.lower()[d], b.upper()[d])).collect())
        .collect()
}

/// Sine Cosine Algorithm.
///
/// Per component: `r2 in [0, 2pi)`, `r3 in [0, 2)`, `r4 in [0, 1)` (drawn in that
/// order); `x += r1 sin(r2) |r3 P - x|` when `r4 < 0.5`, the cosine twin otherwise.
/// `P` is the best position found so far. The update after iteration `t` uses
/// `r1 = sca_r1(t + 1, T)`, reaching 0 on the final step.
pub fn run_sca(problem: &Problem, cfg: &RunConfig) -> Result<RunResult> {
    cfg.validate()?;
    let n = cfg.pop_size;
    let mut rng = RngStream::new(cfg.seed);
    let mut pop = init(problem, n, &mut rng);
    let mut fitness = vec![0.0; n];
    let mut tracker = Tracker::new(problem.dim(), cfg.max_iters);

    for t in 0..cfg.max_iters {
        for x in pop.iter_mut() {
            problem.bounds.clamp_in_place(x);
        }
        tracker.evaluate_all(problem, &pop, &mut fitness)?;
        tracker.end_iteration();
        let dest = tracker.best_position().to_vec();
        let r1 = sca_r1(t + 1, cfg.max_iters);
        for x in pop.iter_mut() {
            for (xj, &pj) in x.iter_mut().zip(&dest) {
                let r2 = 2.0 * PI * rng.next_uniform();
                let r3 = 2.0 * rng.next_uniform();
                let r4 = rng.next_uniform();
                let gap = (r3 * pj - *xj).abs();
                if r4 < 0.5 {
                    *xj += r1 * r2.sin() * gap;
                } else {
                    *xj += r1 * r2.cos() * gap;
                }
            }
        }
    }
    tracker.finish()
}

/// Whale Optimization Algorithm.
///
/// Per whale: `r1`, `r2` (giving `A = 2a r1 - a`, `C = 2 r2`), `l in [-1, 1)`,
/// `p`, and a random-whale index, drawn in that order. With `p < 0.5` the whale
/// encircles the best whale when `|A| < 1` and the random whale otherwise; with
/// `p >= 0.5` it follows the logarithmic spiral around the best.
pub fn run_woa(problem: &Problem, cfg: &RunConfig) -> Result<RunResult> {
    cfg.validate()?;
    let n = cfg.pop_size;
    let mut rng = RngStream::new(cfg.seed);
    let mut pop = init(problem, n, &mut rng);
    let mut next = pop.clone();
    let mut fitness = vec![0.0; n];
    let mut tracker = Tracker::new(problem.dim(), cfg.max_iters);

    for t in 0..cfg.max_iters {
        for x in pop.iter_mut() {
            problem.bounds.clamp_in_place(x);
        }
        tracker.evaluate_all(problem, &pop, &mut fitness)?;
        tracker.end_iteration();
        let best = tracker.best_position().to_vec();
        let a = 2.0 - t as f64 * 2.0 / cfg.max_iters as f64;
        for (x, out) in pop.iter().zip(next.iter_mut()) {
            let r1 = rng.next_uniform();
            let r2 = rng.next_uniform();
            let big_a = 2.0 * a * r1 - a;
            let c = 2.0 * r2;
            let l = 2.0 * rng.next_uniform() - 1.0;
            let p = rng.next_uniform();
            let rand_whale = &pop[rng.next_index(n)];
            if p < 0.5 {
                let guide: &[f64] = if big_a.abs() < 1.0 { &best } else { rand_whale };
                for ((o, &xj), &gj) in out.iter_mut().zip(x).zip(guide) {
                    *o = gj - big_a * (c * gj - xj).abs();
                }
            } else {
                for ((o, &xj), &bj) in out.iter_mut().zip(x).zip(&best) {
                    *o = spiral_step(bj, xj, l);
                }
            }
        }
        std::mem::swap(&mut pop, &mut next);
    }
    tracker.finish()
}
