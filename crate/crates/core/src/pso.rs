//! Multi-swarm particle swarm optimizer for box domains with general
//! constraints.
//!
//! Several sub-swarms with distinct coefficient sets share one forward ring:
//! each particle reads the personal bests of the `k` particles ahead of it,
//! where `k` widens linearly from `k_min` to `k_max` over the run, moving the
//! search from local neighborhoods toward full cooperation. Selection uses
//! feasibility-priority rules (feasible beats infeasible, then objective,
//! then violation), with equality constraints relaxed by a tolerance that
//! decays to its final value partway through the run.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::problem::{
    ConstraintReport, EvaluationLedger, Phase, ProblemDefinition, SolutionRecord,
    EQUALITY_EPSILON,
};

#[derive(Debug, Error)]
pub enum SwarmError {
    #[error("swarm must contain at least 2 particles, got {got}")]
    TooSmall { got: usize },
    #[error("sub-swarm {index} has zero particles")]
    EmptySubSwarm { index: usize },
    #[error(
        "neighborhood sizes must satisfy 1 <= k_min <= k_max <= swarm size - 1, \
         got k_min = {k_min}, k_max = {k_max} with {size} particles"
    )]
    BadNeighborhood {
        k_min: usize,
        k_max: usize,
        size: usize,
    },
    #[error("coefficients of sub-swarm {index} must be finite and non-negative")]
    BadCoefficients { index: usize },
    #[error("v_max_fraction must be positive and finite, got {got}")]
    BadVelocityClamp { got: f64 },
    #[error(
        "relaxation schedule needs initial_scale >= 1 and 0 <= cutoff_fraction <= 1, \
         got scale = {scale}, cutoff = {cutoff}"
    )]
    BadRelaxation { scale: f64, cutoff: f64 },
}

/// Behavioural weights of one sub-swarm: inertia keeps the previous
/// velocity, individuality pulls toward the particle's own best, social
/// pulls toward the neighborhood best.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoefficientSet {
    pub inertia: f64,
    pub individuality: f64,
    pub social: f64,
}

impl CoefficientSet {
    pub fn new(inertia: f64, individuality: f64, social: f64) -> Self {
        Self {
            inertia,
            individuality,
            social,
        }
    }

    fn is_valid(&self) -> bool {
        [self.inertia, self.individuality, self.social]
            .iter()
            .all(|c| c.is_finite() && *c >= 0.0)
    }
}

/// Equality-tolerance schedule: starts at `initial_scale` times the final
/// tolerance and decays linearly, reaching the final value once
/// `cutoff_fraction` of the iteration budget has elapsed and staying there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RelaxationSchedule {
    pub initial_scale: f64,
    pub cutoff_fraction: f64,
}

impl Default for RelaxationSchedule {
    fn default() -> Self {
        Self {
            initial_scale: 100.0,
            cutoff_fraction: 0.5,
        }
    }
}

impl RelaxationSchedule {
    /// Tolerance applied to equality constraints at iteration `t` of a run
    /// of `max_iterations`. Non-increasing in `t`; exactly
    /// [`EQUALITY_EPSILON`] from the cutoff iteration onward.
    pub fn current_epsilon(&self, t: usize, max_iterations: usize) -> f64 {
        let cutoff = self.cutoff_fraction * max_iterations as f64;
        if (t as f64) >= cutoff || cutoff == 0.0 {
            return EQUALITY_EPSILON;
        }
        let progress = t as f64 / cutoff;
        EQUALITY_EPSILON * (self.initial_scale - (self.initial_scale - 1.0) * progress)
    }

    fn is_valid(&self) -> bool {
        self.initial_scale.is_finite()
            && self.initial_scale >= 1.0
            && self.cutoff_fraction.is_finite()
            && (0.0..=1.0).contains(&self.cutoff_fraction)
    }
}

/// Swarm composition and schedule parameters for one run.
#[derive(Clone, Debug, Serialize)]
pub struct SwarmConfig {
    /// Particle count and coefficients per sub-swarm; blocks are laid out
    /// contiguously on one shared ring.
    pub sub_swarms: Vec<(usize, CoefficientSet)>,
    pub max_iterations: usize,
    /// Optional cap on total ledger FEs; a step only executes if it fits.
    pub max_fes: Option<u64>,
    pub k_min: usize,
    pub k_max: usize,
    /// Velocity clamp per dimension as a fraction of the bound range.
    pub v_max_fraction: f64,
    pub relaxation: RelaxationSchedule,
    pub seed: u64,
    /// Record full particle positions in each trace record (costly; meant
    /// for plotting low-dimensional runs).
    pub record_positions: bool,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        Self {
            sub_swarms: vec![
                (20, CoefficientSet::new(0.9, 2.5, 1.5)),
                (20, CoefficientSet::new(0.72, 1.49, 1.49)),
                (20, CoefficientSet::new(0.4, 1.0, 2.0)),
            ],
            max_iterations: 10_000,
            max_fes: None,
            k_min: 1,
            k_max: 59,
            v_max_fraction: 0.5,
            relaxation: RelaxationSchedule::default(),
            seed: 0,
            record_positions: false,
        }
    }
}

impl SwarmConfig {
    pub fn swarm_size(&self) -> usize {
        self.sub_swarms.iter().map(|(size, _)| size).sum()
    }

    pub fn validate(&self) -> Result<(), SwarmError> {
        let size = self.swarm_size();
        if size < 2 {
            return Err(SwarmError::TooSmall { got: size });
        }
        for (index, (block, coefficients)) in self.sub_swarms.iter().enumerate() {
            if *block == 0 {
                return Err(SwarmError::EmptySubSwarm { index });
            }
            if !coefficients.is_valid() {
                return Err(SwarmError::BadCoefficients { index });
            }
        }
        if !(1 <= self.k_min && self.k_min <= self.k_max && self.k_max <= size - 1) {
            return Err(SwarmError::BadNeighborhood {
                k_min: self.k_min,
                k_max: self.k_max,
                size,
            });
        }
        if !(self.v_max_fraction.is_finite() && self.v_max_fraction > 0.0) {
            return Err(SwarmError::BadVelocityClamp {
                got: self.v_max_fraction,
            });
        }
        if !self.relaxation.is_valid() {
            return Err(SwarmError::BadRelaxation {
                scale: self.relaxation.initial_scale,
                cutoff: self.relaxation.cutoff_fraction,
            });
        }
        Ok(())
    }
}

/// One particle: current position/velocity plus the best point it has
/// visited, judged by [`compare_solutions`].
#[derive(Clone, Debug)]
pub struct Particle {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub pbest_x: Vec<f64>,
    pub pbest_f: f64,
    pub pbest_report: ConstraintReport,
    pub sub_swarm_id: usize,
}

/// One per-iteration trace record; this is the JSON record format consumed
/// by offline plotting.
#[derive(Clone, Debug, Serialize)]
pub struct IterationRecord {
    pub iter: usize,
    pub gbest_f: f64,
    pub gbest_violation: f64,
    pub cog: Vec<f64>,
    pub epsilon: f64,
    pub fes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<Vec<f64>>>,
}

/// Completed run: final solution, per-iteration history, and the FE ledger
/// snapshot at the end of the run.
#[derive(Clone, Debug, Serialize)]
pub struct RunTrace {
    pub problem: String,
    pub final_gbest: SolutionRecord,
    pub iterations_run: usize,
    pub records: Vec<IterationRecord>,
    pub ledger: EvaluationLedger,
}

/// Priority ordering on evaluated points (`Less` means `a` is better):
/// a feasible point (slack 0) beats an infeasible one; feasible points
/// compare by objective; infeasible points compare by violation, then
/// objective. Non-finite keys rank worst; full ties are `Equal`, and
/// callers update only on strict improvement, keeping incumbents.
pub fn compare_solutions(
    f_a: f64,
    report_a: &ConstraintReport,
    f_b: f64,
    report_b: &ConstraintReport,
) -> Ordering {
    let feas_a = report_a.is_feasible(0.0);
    let feas_b = report_b.is_feasible(0.0);
    match (feas_a, feas_b) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => cmp_worst_nan(f_a, f_b),
        (false, false) => cmp_worst_nan(report_a.max_violation, report_b.max_violation)
            .then(cmp_worst_nan(f_a, f_b)),
    }
}

/// Total order on f64 treating NaN as worst (greater than everything).
fn cmp_worst_nan(a: f64, b: f64) -> Ordering {
    match (a.is_nan(), b.is_nan()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => a.partial_cmp(&b).expect("both keys are non-NaN"),
    }
}

/// The indices a particle reads in the shared ring: the `k` particles ahead
/// of `i`, wrapping. Links are one-directional; being read does not grant
/// reading back.
pub fn forward_neighbors(i: usize, k: usize, n: usize) -> Vec<usize> {
    assert!(
        k >= 1 && k <= n - 1,
        "neighborhood size k = {k} out of range 1..={}",
        n - 1
    );
    (1..=k).map(|step| (i + step) % n).collect()
}

/// Neighborhood size at iteration `t`: linear from `k_min` (local search at
/// the start) to `k_max` (full cooperation at the end), rounded to nearest.
pub fn neighborhood_size(t: usize, max_iterations: usize, k_min: usize, k_max: usize) -> usize {
    if max_iterations == 0 {
        return k_min;
    }
    let progress = t as f64 / max_iterations as f64;
    (k_min as f64 + (k_max - k_min) as f64 * progress).round() as usize
}

/// New velocity for one particle: inertia-scaled previous velocity plus
/// individuality and social pulls, each scaled by a fresh uniform draw per
/// dimension, clamped to `±v_max` per dimension. Draw order is fixed
/// (per dimension: individuality then social) so a seeded stream replays.
pub fn velocity_update(
    p: &Particle,
    lbest_x: &[f64],
    c: &CoefficientSet,
    v_max: &[f64],
    rng: &mut impl Rng,
) -> Vec<f64> {
    let mut v_new = Vec::with_capacity(p.v.len());
    for j in 0..p.v.len() {
        let u1: f64 = rng.random();
        let u2: f64 = rng.random();
        let v = c.inertia * p.v[j]
            + c.individuality * u1 * (p.pbest_x[j] - p.x[j])
            + c.social * u2 * (lbest_x[j] - p.x[j]);
        v_new.push(v.clamp(-v_max[j], v_max[j]));
    }
    v_new
}

/// New position `x + v`, clipped into the box; any clipped dimension has its
/// velocity component zeroed (in `v`) so the particle does not keep pushing
/// into the wall.
pub fn position_update(p: &Particle, v_new: &mut [f64], problem: &ProblemDefinition) -> Vec<f64> {
    let lower = problem.lower();
    let upper = problem.upper();
    let mut x_new = Vec::with_capacity(v_new.len());
    for j in 0..v_new.len() {
        let mut x = p.x[j] + v_new[j];
        if x < lower[j] {
            x = lower[j];
            v_new[j] = 0.0;
        } else if x > upper[j] {
            x = upper[j];
            v_new[j] = 0.0;
        }
        x_new.push(x);
    }
    x_new
}

/// Live swarm: particles, the global best so far, and per-iteration history.
#[derive(Clone, Debug)]
pub struct SwarmState {
    pub particles: Vec<Particle>,
    /// Completed iterations; equals `history.len()`.
    pub iteration: usize,
    pub gbest: SolutionRecord,
    pub history: Vec<IterationRecord>,
    pub current_epsilon: f64,
    /// Set once the iteration or FE budget is exhausted; `step` becomes a
    /// no-op.
    pub terminal: bool,
    v_max: Vec<f64>,
}

impl SwarmState {
    /// Build and evaluate the initial population: positions uniform within
    /// bounds, velocities uniform in `±v_max`, personal bests at the initial
    /// points. Charges one FE per particle. History starts empty; records
    /// describe completed steps only.
    pub fn initialize(
        problem: &ProblemDefinition,
        config: &SwarmConfig,
        ledger: &mut EvaluationLedger,
        rng: &mut impl Rng,
    ) -> Result<Self, SwarmError> {
        config.validate()?;
        let n = problem.dim();
        let v_max: Vec<f64> = (0..n)
            .map(|d| config.v_max_fraction * (problem.upper()[d] - problem.lower()[d]))
            .collect();
        let epsilon = config
            .relaxation
            .current_epsilon(0, config.max_iterations);

        let mut particles = Vec::with_capacity(config.swarm_size());
        for (sub_swarm_id, (block, _)) in config.sub_swarms.iter().enumerate() {
            for _ in 0..*block {
                let x: Vec<f64> = (0..n)
                    .map(|d| {
                        let u: f64 = rng.random();
                        problem.lower()[d] + u * (problem.upper()[d] - problem.lower()[d])
                    })
                    .collect();
                let v: Vec<f64> = (0..n)
                    .map(|d| {
                        let u: f64 = rng.random();
                        (2.0 * u - 1.0) * v_max[d]
                    })
                    .collect();
                let (f, report) = problem
                    .evaluate(&x, epsilon, ledger, Phase::Pso)
                    .expect("positions have the problem dimension");
                particles.push(Particle {
                    pbest_x: x.clone(),
                    pbest_f: f,
                    pbest_report: report,
                    x,
                    v,
                    sub_swarm_id,
                });
            }
        }

        let gbest = best_pbest(&particles);
        let terminal = config.max_iterations == 0
            || config
                .max_fes
                .is_some_and(|cap| ledger.total_fes() + particles.len() as u64 > cap);
        Ok(Self {
            particles,
            iteration: 0,
            gbest,
            history: Vec::new(),
            current_epsilon: epsilon,
            terminal,
            v_max,
        })
    }

    /// Advance one iteration; returns `false` without side effects once the
    /// budget is exhausted.
    ///
    /// All velocity draws and moves happen first, against a fixed snapshot
    /// of personal bests, so the outcome is independent of any evaluation
    /// parallelism; then every particle is evaluated and personal bests and
    /// the global best are updated.
    pub fn step(
        &mut self,
        problem: &ProblemDefinition,
        config: &SwarmConfig,
        ledger: &mut EvaluationLedger,
        rng: &mut impl Rng,
    ) -> bool {
        let n_particles = self.particles.len();
        if self.terminal
            || self.iteration >= config.max_iterations
            || config
                .max_fes
                .is_some_and(|cap| ledger.total_fes() + n_particles as u64 > cap)
        {
            self.terminal = true;
            return false;
        }

        let t = self.iteration;
        let epsilon = config
            .relaxation
            .current_epsilon(t, config.max_iterations);
        if epsilon != self.current_epsilon {
            for p in &mut self.particles {
                p.pbest_report = p.pbest_report.relaxed_to(epsilon);
            }
            self.current_epsilon = epsilon;
        }

        let k = neighborhood_size(t, config.max_iterations, config.k_min, config.k_max);

        // Movement phase: fresh draws and moves for every particle against
        // the pre-step personal bests.
        let mut new_positions = Vec::with_capacity(n_particles);
        for i in 0..n_particles {
            let p = &self.particles[i];
            let lbest = &self.particles[self.lbest_index(i, k)];
            let coefficients = &config.sub_swarms[p.sub_swarm_id].1;
            let mut v_new = velocity_update(p, &lbest.pbest_x, coefficients, &self.v_max, rng);
            let x_new = position_update(p, &mut v_new, problem);
            new_positions.push((x_new, v_new));
        }

        // Evaluation phase: move, evaluate, and update personal bests.
        for (p, (x_new, v_new)) in self.particles.iter_mut().zip(new_positions) {
            p.x = x_new;
            p.v = v_new;
            let (f, report) = problem
                .evaluate(&p.x, epsilon, ledger, Phase::Pso)
                .expect("positions have the problem dimension");
            if compare_solutions(f, &report, p.pbest_f, &p.pbest_report) == Ordering::Less {
                p.pbest_x = p.x.clone();
                p.pbest_f = f;
                p.pbest_report = report;
            }
        }

        self.gbest = best_pbest(&self.particles);
        self.iteration += 1;
        self.history.push(IterationRecord {
            iter: self.iteration,
            gbest_f: self.gbest.f,
            gbest_violation: self.gbest.report.max_violation,
            cog: self.centre_of_gravity(),
            epsilon,
            fes: ledger.total_fes(),
            positions: config
                .record_positions
                .then(|| self.particles.iter().map(|p| p.x.clone()).collect()),
        });
        if self.iteration >= config.max_iterations {
            self.terminal = true;
        }
        true
    }

    /// Index of the best personal best among particle `i` and its `k`
    /// forward neighbors. `i` itself competes, so with `k = N − 1` every
    /// particle sees the whole swarm and the result matches the global best.
    fn lbest_index(&self, i: usize, k: usize) -> usize {
        let mut best = i;
        for j in forward_neighbors(i, k, self.particles.len()) {
            let cand = &self.particles[j];
            let incumbent = &self.particles[best];
            if compare_solutions(
                cand.pbest_f,
                &cand.pbest_report,
                incumbent.pbest_f,
                &incumbent.pbest_report,
            ) == Ordering::Less
            {
                best = j;
            }
        }
        best
    }

    /// Arithmetic mean of current particle positions.
    pub fn centre_of_gravity(&self) -> Vec<f64> {
        let n = self.particles[0].x.len();
        let mut cog = vec![0.0; n];
        for p in &self.particles {
            for (c, &x) in cog.iter_mut().zip(&p.x) {
                *c += x;
            }
        }
        let count = self.particles.len() as f64;
        cog.iter_mut().for_each(|c| *c /= count);
        cog
    }

    pub fn into_trace(self, problem: &ProblemDefinition, ledger: EvaluationLedger) -> RunTrace {
        RunTrace {
            problem: problem.name().to_string(),
            final_gbest: self.gbest,
            iterations_run: self.iteration,
            records: self.history,
            ledger,
        }
    }
}

fn best_pbest(particles: &[Particle]) -> SolutionRecord {
    let mut best = 0;
    for i in 1..particles.len() {
        if compare_solutions(
            particles[i].pbest_f,
            &particles[i].pbest_report,
            particles[best].pbest_f,
            &particles[best].pbest_report,
        ) == Ordering::Less
        {
            best = i;
        }
    }
    let p = &particles[best];
    SolutionRecord {
        x: p.pbest_x.clone(),
        f: p.pbest_f,
        report: p.pbest_report.clone(),
        phase: Phase::Pso,
    }
}

/// Run the swarm to its iteration (or FE) budget and return the trace.
/// Identical seeds produce identical traces.
pub fn run(
    problem: &ProblemDefinition,
    config: &SwarmConfig,
    ledger: &mut EvaluationLedger,
) -> Result<RunTrace, SwarmError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = SwarmState::initialize(problem, config, ledger, &mut rng)?;
    while state.step(problem, config, ledger, &mut rng) {}
    Ok(state.into_trace(problem, *ledger))
}
