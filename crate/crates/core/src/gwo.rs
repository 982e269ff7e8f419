//! The grey wolf optimizer family.
//!
//! - classic GWO with the linear `a` schedule, and mGWO with the quadratic one;
//! - EBGWO: an elite archive of the best three wolves seen across consecutive
//!   iterations, plus an ST-gated balance search that swaps the third guide
//!   for a random pack member;
//! - the two single-mechanism ablations (archive only, balance search only).
//!
//! Random draws are consumed in a fixed order per wolf: the ST gate draw (if
//! the variant gates), the random-wolf index draw (balance branch only), then
//! `6 * dim` coefficient draws ordered `A1, C1, A2, C2, A3, C3` per dimension.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::rng::RngStream;
use crate::run::{BranchCounts, RunConfig, RunResult, Tracker};

/// `a = 2 - t * 2 / T`.
pub fn decay_linear(t: usize, max_iters: usize) -> f64 {
    2.0 - t as f64 * (2.0 / max_iters as f64)
}

/// mGWO schedule `a = 2 * (1 - t^2 / T^2)`.
pub fn decay_mgwo(t: usize, max_iters: usize) -> f64 {
    let r = t as f64 / max_iters as f64;
    2.0 * (1.0 - r * r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decay {
    Linear,
    Quadratic,
}

impl Decay {
    pub fn at(self, t: usize, max_iters: usize) -> f64 {
        match self {
            Decay::Linear => decay_linear(t, max_iters),
            Decay::Quadratic => decay_mgwo(t, max_iters),
        }
    }
}

/// Which EBGWO mechanisms are active.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Elite archive and balance search.
    Full,
    /// Archive only: no ST gate; every wolf follows the archived leaders.
    EliteOnly,
    /// Balance search only: the archive is reset to the current leaders every iteration.
    BalanceOnly,
}

/// Per-wolf step coefficients `A_k = 2a r1 - a` and `C_k = 2 r2` for the three guides.
#[derive(Debug, Clone, PartialEq)]
pub struct StepCoefficients {
    pub a: f64,
    pub big_a: [Vec<f64>; 3],
    pub c: [Vec<f64>; 3],
}

impl StepCoefficients {
    pub fn zeros(dim: usize) -> Self {
        Self {
            a: 0.0,
            big_a: [vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]],
            c: [vec![0.0; dim], vec![0.0; dim], vec![0.0; dim]],
        }
    }

    /// Draws fresh coefficients; consumes exactly `6 * dim` uniforms.
    pub fn draw(a: f64, dim: usize, rng: &mut RngStream) -> Self {
        let mut s = Self::zeros(dim);
        s.redraw(a, rng);
        s
    }

    pub fn redraw(&mut self, a: f64, rng: &mut RngStream) {
        self.a = a;
        let dim = self.c[0].len();
        for d in 0..dim {
            for k in 0..3 {
                let r1 = rng.next_uniform();
                let r2 = rng.next_uniform();
                self.big_a[k][d] = 2.0 * a * r1 - a;
                self.c[k][d] = 2.0 * r2;
            }
        }
    }

    /// Constant coefficients on every component, for hand-checked examples.
    pub fn constant(dim: usize, big_a: f64, c: f64) -> Self {
        Self {
            a: big_a.abs(),
            big_a: [vec![big_a; dim], vec![big_a; dim], vec![big_a; dim]],
            c: [vec![c; dim], vec![c; dim], vec![c; dim]],
        }
    }

    pub fn dim(&self) -> usize {
        self.c[0].len()
    }
}

/// Moves `x` toward three guides and writes the averaged position into `out`:
/// `D_k = |C_k * G_k - x|`, `X_k = G_k - A_k * D_k`, `out = (X_1 + X_2 + X_3) / 3`.
fn guided_step(x: &[f64], guides: [&[f64]; 3], coeffs: &StepCoefficients, out: &mut [f64]) {
    for d in 0..x.len() {
        let mut sum = 0.0;
        for k in 0..3 {
            let g = guides[k][d];
            let dist = (coeffs.c[k][d] * g - x[d]).abs();
            sum += g - coeffs.big_a[k][d] * dist;
        }
        out[d] = sum / 3.0;
    }
}

fn check_dims(x: &[f64], others: &[&[f64]], coeffs: &StepCoefficients) -> Result<()> {
    for len in others.iter().map(|o| o.len()).chain([coeffs.dim()]) {
        if len != x.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: len,
            });
        }
    }
    Ok(())
}

/// Classic update guided by alpha, beta and delta. The result is not clamped.
pub fn leader_guided_update(x: &[f64], leaders: &LeaderTriple, coeffs: &StepCoefficients) -> Result<Vec<f64>> {
    let guides = leaders.positions();
    check_dims(x, &guides, coeffs)?;
    let mut out = vec![0.0; x.len()];
    guided_step(x, guides, coeffs, &mut out);
    Ok(out)
}

/// Balance-search update guided by the two best archived wolves and a random pack member.
pub fn balance_update(
    x: &[f64],
    cand1: &[f64],
    cand2: &[f64],
    random_wolf: &[f64],
    coeffs: &StepCoefficients,
) -> Result<Vec<f64>> {
    check_dims(x, &[cand1, cand2, random_wolf], coeffs)?;
    let mut out = vec![0.0; x.len()];
    guided_step(x, [cand1, cand2, random_wolf], coeffs, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Leader {
    pub position: Vec<f64>,
    pub fitness: f64,
}

/// Alpha, beta and delta, ordered by fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct LeaderTriple {
    pub alpha: Leader,
    pub beta: Leader,
    pub delta: Leader,
}

impl LeaderTriple {
    pub fn positions(&self) -> [&[f64]; 3] {
        [&self.alpha.position, &self.beta.position, &self.delta.position]
    }

    pub fn fitnesses(&self) -> [f64; 3] {
        [self.alpha.fitness, self.beta.fitness, self.delta.fitness]
    }

    fn from_sorted(mut members: impl Iterator<Item = Leader>) -> Self {
        let mut next = || members.next().expect("at least three members");
        let alpha = next();
        let beta = next();
        let delta = next();
        Self { alpha, beta, delta }
    }
}

fn by_fitness(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

/// The three fittest wolves; ties keep the lower population index first.
pub fn select_leaders(population: &[Vec<f64>], fitness: &[f64]) -> LeaderTriple {
    assert!(population.len() >= 3 && population.len() == fitness.len());
    let mut order: Vec<usize> = (0..fitness.len()).collect();
    order.sort_by(|&i, &j| by_fitness(fitness[i], fitness[j]));
    LeaderTriple::from_sorted(order.into_iter().take(3).map(|i| Leader {
        position: population[i].clone(),
        fitness: fitness[i],
    }))
}

/// Elite archive: the previous iteration's candidates and the current best three of the pool.
#[derive(Debug, Clone, PartialEq)]
pub struct EliteArchive {
    pub parent3: LeaderTriple,
    pub candidate3: LeaderTriple,
}

impl EliteArchive {
    /// Archive that holds only `current3`, as on the first iteration.
    pub fn seeded(current3: &LeaderTriple) -> Self {
        Self {
            parent3: current3.clone(),
            candidate3: current3.clone(),
        }
    }
}

/// One archive step.
///
/// On `t == 0` (or with no previous archive) the current leaders become both
/// parents and candidates. Otherwise the previous candidates become the
/// parents, and the new candidates are the best three of parents followed by
/// current leaders, stably sorted so parents win ties.
pub fn update_archive(archive: Option<&EliteArchive>, current3: &LeaderTriple, t: usize) -> EliteArchive {
    match archive {
        Some(prev) if t > 0 => {
            let parent3 = prev.candidate3.clone();
            let mut pool: Vec<&Leader> = vec![
                &parent3.alpha,
                &parent3.beta,
                &parent3.delta,
                &current3.alpha,
                &current3.beta,
                &current3.delta,
            ];
            pool.sort_by(|a, b| by_fitness(a.fitness, b.fitness));
            let candidate3 = LeaderTriple::from_sorted(pool.into_iter().take(3).cloned());
            EliteArchive { parent3, candidate3 }
        }
        _ => EliteArchive::seeded(current3),
    }
}

fn init_population(problem: &Problem, pop_size: usize, rng: &mut RngStream) -> Vec<Vec<f64>> {
    let b = &problem.bounds;
    (0..pop_size)
        .map(|_| (0..b.dim()).map(|d| rng.next_in(b.lower()[d], b.upper()[d])).collect())
        .collect()
}

fn check_problem(problem: &Problem, cfg: &RunConfig) -> Result<()> {
    cfg.validate()?;
    if problem.dim() == 0 {
        return Err(Error::Config("problem has no dimensions".into()));
    }
    Ok(())
}

/// Classic GWO (or mGWO, depending on `decay`).
pub fn run_gwo(problem: &Problem, cfg: &RunConfig, decay: Decay) -> Result<RunResult> {
    check_problem(problem, cfg)?;
    let n = cfg.pop_size;
    let mut rng = RngStream::new(cfg.seed);
    let mut pop = init_population(problem, n, &mut rng);
    let mut next = pop.clone();
    let mut fitness = vec![0.0; n];
    let mut coeffs = StepCoefficients::zeros(problem.dim());
    let mut tracker = Tracker::new(problem.dim(), cfg.max_iters);

    for t in 0..cfg.max_iters {
        for x in pop.iter_mut() {
            problem.bounds.clamp_in_place(x);
        }
        tracker.evaluate_all(problem, &pop, &mut fitness)?;
        tracker.end_iteration();
        let leaders = select_leaders(&pop, &fitness);
        let a = decay.at(t, cfg.max_iters);
        for (x, out) in pop.iter().zip(next.iter_mut()) {
            coeffs.redraw(a, &mut rng);
            guided_step(x, leaders.positions(), &coeffs, out);
        }
        std::mem::swap(&mut pop, &mut next);
    }
    tracker.finish()
}

/// EBGWO and its single-mechanism ablations.
pub fn run_ebgwo(problem: &Problem, cfg: &RunConfig, variant: Variant) -> Result<RunResult> {
    check_problem(problem, cfg)?;
    let n = cfg.pop_size;
    let mut rng = RngStream::new(cfg.seed);
    let mut pop = init_population(problem, n, &mut rng);
    let mut next = pop.clone();
    let mut fitness = vec![0.0; n];
    let mut coeffs = StepCoefficients::zeros(problem.dim());
    let mut tracker = Tracker::new(problem.dim(), cfg.max_iters);
    let mut archive: Option<EliteArchive> = None;
    let mut archive_alpha = Vec::with_capacity(cfg.max_iters);
    let mut counts = BranchCounts::default();

    for t in 0..cfg.max_iters {
        for x in pop.iter_mut() {
            problem.bounds.clamp_in_place(x);
        }
        tracker.evaluate_all(problem, &pop, &mut fitness)?;
        tracker.end_iteration();
        let current3 = select_leaders(&pop, &fitness);
        let updated = match variant {
            Variant::BalanceOnly => EliteArchive::seeded(&current3),
            Variant::Full | Variant::EliteOnly => update_archive(archive.as_ref(), &current3, t),
        };
        archive_alpha.push(updated.candidate3.alpha.fitness);
        let candidates = &updated.candidate3;
        let a = decay_linear(t, cfg.max_iters);

        for (x, out) in pop.iter().zip(next.iter_mut()) {
            let balance = variant != Variant::EliteOnly && rng.next_uniform() < cfg.st;
            if balance {
                let r = rng.next_index(n);
                coeffs.redraw(a, &mut rng);
                guided_step(
                    x,
                    [&candidates.alpha.position, &candidates.beta.position, &pop[r]],
                    &coeffs,
                    out,
                );
                counts.balance += 1;
            } else {
                coeffs.redraw(a, &mut rng);
                let guides = match variant {
                    Variant::EliteOnly => candidates.positions(),
                    Variant::Full | Variant::BalanceOnly => current3.positions(),
                };
                guided_step(x, guides, &coeffs, out);
                counts.leader += 1;
            }
        }
        std::mem::swap(&mut pop, &mut next);
        archive = Some(updated);
    }

    let mut result = tracker.finish()?;
    result.branch_counts = Some(counts);
    result.archive_alpha_trace = Some(archive_alpha);
    Ok(result)
}
