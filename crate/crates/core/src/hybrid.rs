//! Orchestration of the swarm and the local solver.
//!
//! A hybrid run executes the swarm and, depending on the trigger strategy,
//! launches SQP refinements from swarm solutions: once at the end, on every
//! global-best improvement, periodically from random particles, or as a
//! per-iteration probe used to study *when* local search starts succeeding.
//! Local-search outputs never re-enter the swarm; they only compete for the
//! reported final solution.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problem::{
    success, EvaluationLedger, Phase, ProblemDefinition, SolutionRecord,
};
use crate::pso::{compare_solutions, RunTrace, SwarmConfig, SwarmError, SwarmState};
use crate::sqp::{sqp_solve, SqpConfig, SqpResult};

#[derive(Debug, Error)]
pub enum HybridError {
    #[error(transparent)]
    Swarm(#[from] SwarmError),
    #[error("periodic strategy needs period >= 1 and seeds >= 1, got period = {period}, seeds = {seeds}")]
    BadStrategy { period: usize, seeds: usize },
    #[error("problem {name} has no known optimum; the success study is undefined")]
    NoOptimum { name: String },
}

/// When the local solver is launched during a hybrid run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TriggerStrategy {
    /// One refinement from the final global best.
    FinalOnly,
    /// A success probe from every iteration's global best, charged to a
    /// side ledger, plus a final refinement; used for the first-success
    /// study.
    EveryIteration,
    /// A refinement each time the global best strictly improves.
    OnGbestImprovement,
    /// Every `period` iterations, refinements from the personal bests of
    /// `seeds` random distinct particles; optionally one final refinement.
    PeriodicRandomSeeds {
        period: usize,
        seeds: usize,
        final_refine: bool,
    },
}

impl TriggerStrategy {
    /// Periodic strategy with its default shape: every 50 iterations, 5
    /// random seeds, final refinement on.
    pub fn periodic_default() -> Self {
        Self::PeriodicRandomSeeds {
            period: 50,
            seeds: 5,
            final_refine: true,
        }
    }

    fn validate(&self) -> Result<(), HybridError> {
        if let Self::PeriodicRandomSeeds { period, seeds, .. } = *self {
            if period < 1 || seeds < 1 {
                return Err(HybridError::BadStrategy { period, seeds });
            }
        }
        Ok(())
    }
}

/// One hybrid run: the swarm's own final answer, the best local-solver
/// output (when any ran), and the shared evaluation ledger.
#[derive(Clone, Debug, Serialize)]
pub struct HybridResult {
    pub pso_final: SolutionRecord,
    pub sqp_final: Option<SqpResult>,
    /// Swarm FE count (iteration × swarm size, initialization excluded) of
    /// the earliest iteration whose side-ledger probe succeeded; only the
    /// per-iteration probing strategy fills this.
    pub first_success_fe: Option<u64>,
    pub ledger: EvaluationLedger,
    pub trace: RunTrace,
}

impl HybridResult {
    fn sqp_record(&self) -> Option<SolutionRecord> {
        self.sqp_final.as_ref().map(|sqp| SolutionRecord {
            x: sqp.x.clone(),
            f: sqp.f,
            report: sqp.report.clone(),
            phase: Phase::Sqp,
        })
    }

    /// Best of the swarm answer and the local-solver output under the
    /// strict feasibility-priority comparison; ties keep the swarm answer.
    /// By construction this is never worse than the swarm alone.
    pub fn final_solution(&self) -> SolutionRecord {
        match self.sqp_record() {
            Some(sqp)
                if compare_solutions(sqp.f, &sqp.report, self.pso_final.f, &self.pso_final.report)
                    == Ordering::Less =>
            {
                sqp
            }
            _ => self.pso_final.clone(),
        }
    }

    /// The run's best final record with feasibility judged at each record's
    /// producing-phase slack (zero for the swarm, 1e-12 for the local
    /// solver). Success and feasibility statistics judge this record: a
    /// refined point riding the boundary within solver round-off still
    /// counts, where the strict comparison of [`Self::final_solution`]
    /// would discard it.
    pub fn best_record(&self) -> SolutionRecord {
        match self.sqp_record() {
            Some(sqp) if phase_aware_compare(&sqp, &self.pso_final) == Ordering::Less => sqp,
            _ => self.pso_final.clone(),
        }
    }

    /// Fraction of the run's evaluations spent in the local solver.
    pub fn sqp_fe_share(&self) -> f64 {
        if self.ledger.total_fes() == 0 {
            0.0
        } else {
            self.ledger.sqp_fes as f64 / self.ledger.total_fes() as f64
        }
    }
}

/// Per-iteration success-probe study. `flags[t]` says whether a local solve
/// launched from the global best after `t` iterations (0 = the initial
/// population) reached the optimum; probe evaluations are kept off the main
/// budget and reported per probe in `probe_fes`.
#[derive(Clone, Debug, Serialize)]
pub struct FirstSuccessStudy {
    pub flags: Vec<bool>,
    pub first_success_fe: Option<u64>,
    pub probe_fes: Vec<u64>,
}

/// Runs the swarm with `seed` (overriding the seed in `pso_config`) and
/// applies the local solver per `strategy`. All refinement FEs are charged
/// to the run's shared ledger; per-iteration study probes are the one
/// exception and run against side ledgers.
pub fn run_hybrid(
    problem: &ProblemDefinition,
    pso_config: &SwarmConfig,
    sqp_config: &SqpConfig,
    strategy: &TriggerStrategy,
    seed: u64,
) -> Result<HybridResult, HybridError> {
    strategy.validate()?;
    let mut config = pso_config.clone();
    config.seed = seed;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Particle selection draws come from an independent stream so adding a
    // strategy never perturbs the swarm trajectory for the same seed.
    let mut strategy_rng = ChaCha8Rng::seed_from_u64(seed);
    strategy_rng.set_stream(1);

    let mut ledger = EvaluationLedger::new();
    let mut state = SwarmState::initialize(problem, &config, &mut ledger, &mut rng)?;
    let swarm_size = config.swarm_size() as u64;
    let probing = matches!(strategy, TriggerStrategy::EveryIteration) && problem.optimum_known();

    let mut sqp_outputs: Vec<SqpResult> = Vec::new();
    let mut first_success_fe: Option<u64> = None;
    let mut previous_best = state.gbest.clone();

    if probing && first_success_fe.is_none() {
        if probe_succeeds(problem, &state.gbest, sqp_config) {
            first_success_fe = Some(0);
        }
    }

    while state.step(problem, &config, &mut ledger, &mut rng) {
        match strategy {
            TriggerStrategy::FinalOnly => {}
            TriggerStrategy::EveryIteration => {
                if probing && first_success_fe.is_none() {
                    if probe_succeeds(problem, &state.gbest, sqp_config) {
                        first_success_fe = Some(state.iteration as u64 * swarm_size);
                    }
                }
            }
            TriggerStrategy::OnGbestImprovement => {
                let old = previous_best.report.relaxed_to(state.current_epsilon);
                if compare_solutions(state.gbest.f, &state.gbest.report, previous_best.f, &old)
                    == Ordering::Less
                {
                    previous_best = state.gbest.clone();
                    if evaluable(&state.gbest) {
                        sqp_outputs.push(sqp_solve(
                            problem,
                            &state.gbest.x,
                            sqp_config,
                            &mut ledger,
                        ));
                    }
                }
            }
            TriggerStrategy::PeriodicRandomSeeds { period, seeds, .. } => {
                if state.iteration % period == 0 {
                    let count = (*seeds).min(state.particles.len());
                    let picked =
                        rand::seq::index::sample(&mut strategy_rng, state.particles.len(), count);
                    let starts: Vec<Vec<f64>> = picked
                        .iter()
                        .map(|i| state.particles[i].pbest_x.clone())
                        .collect();
                    for x0 in starts {
                        sqp_outputs.push(sqp_solve(problem, &x0, sqp_config, &mut ledger));
                    }
                }
            }
        }
    }

    let refine_at_end = match strategy {
        TriggerStrategy::FinalOnly | TriggerStrategy::EveryIteration => true,
        TriggerStrategy::OnGbestImprovement => false,
        TriggerStrategy::PeriodicRandomSeeds { final_refine, .. } => *final_refine,
    };
    if refine_at_end && evaluable(&state.gbest) {
        sqp_outputs.push(sqp_solve(problem, &state.gbest.x, sqp_config, &mut ledger));
    }

    let pso_final = state.gbest.clone();
    let sqp_final = best_sqp_output(sqp_outputs);
    let trace = state.into_trace(problem, ledger);
    Ok(HybridResult {
        pso_final,
        sqp_final,
        first_success_fe,
        ledger,
        trace,
    })
}

/// The swarm can only seed a local solve with a fully evaluable point.
fn evaluable(record: &SolutionRecord) -> bool {
    record.x.iter().all(|v| v.is_finite()) && record.f.is_finite()
}

/// Priority-rule comparison with feasibility judged at each record's own
/// phase slack: feasible beats infeasible, feasible records compare by
/// objective, infeasible ones by (violation, objective). NaN ranks worst.
fn phase_aware_compare(a: &SolutionRecord, b: &SolutionRecord) -> Ordering {
    let cmp = |x: f64, y: f64| x.partial_cmp(&y).unwrap_or_else(|| match (x.is_nan(), y.is_nan()) {
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => Ordering::Equal,
    });
    match (a.is_feasible(), b.is_feasible()) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => cmp(a.f, b.f),
        (false, false) => cmp(a.report.max_violation, b.report.max_violation)
            .then_with(|| cmp(a.f, b.f)),
    }
}

fn best_sqp_output(outputs: Vec<SqpResult>) -> Option<SqpResult> {
    outputs.into_iter().reduce(|best, candidate| {
        if compare_solutions(candidate.f, &candidate.report, best.f, &best.report)
            == Ordering::Less
        {
            candidate
        } else {
            best
        }
    })
}

/// One side-ledger probe: does a local solve from this record reach the
/// optimum with per-phase feasibility?
fn probe_succeeds(
    problem: &ProblemDefinition,
    gbest: &SolutionRecord,
    sqp_config: &SqpConfig,
) -> bool {
    if !evaluable(gbest) {
        return false;
    }
    let mut side = EvaluationLedger::new();
    let result = sqp_solve(problem, &gbest.x, sqp_config, &mut side);
    let f_star = problem
        .f_star()
        .expect("probing is only enabled when the optimum is known");
    result.report.is_feasible(Phase::Sqp.feasibility_slack()) && success(result.f, f_star)
}

/// Per-iteration probe study from one seeded swarm run. Probe FEs never
/// touch the swarm budget; they are returned per probe so the harness can
/// report the local solver's own cost at the success point.
pub fn first_success_study(
    problem: &ProblemDefinition,
    pso_config: &SwarmConfig,
    sqp_config: &SqpConfig,
    seed: u64,
) -> Result<FirstSuccessStudy, HybridError> {
    let f_star = problem.f_star().ok_or_else(|| HybridError::NoOptimum {
        name: problem.name().to_string(),
    })?;
    let mut config = pso_config.clone();
    config.seed = seed;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ledger = EvaluationLedger::new();
    let mut state = SwarmState::initialize(problem, &config, &mut ledger, &mut rng)?;
    let swarm_size = config.swarm_size() as u64;

    let mut flags = Vec::with_capacity(config.max_iterations + 1);
    let mut probe_fes = Vec::with_capacity(config.max_iterations + 1);
    let mut first = None;

    let probe = |state: &SwarmState, flags: &mut Vec<bool>, probe_fes: &mut Vec<u64>| {
        let mut side = EvaluationLedger::new();
        let ok = if evaluable(&state.gbest) {
            let result = sqp_solve(problem, &state.gbest.x, sqp_config, &mut side);
            result.report.is_feasible(Phase::Sqp.feasibility_slack())
                && success(result.f, f_star)
        } else {
            false
        };
        flags.push(ok);
        probe_fes.push(side.sqp_fes);
        ok
    };

    if probe(&state, &mut flags, &mut probe_fes) {
        first = Some(0);
    }
    while state.step(problem, &config, &mut ledger, &mut rng) {
        let ok = probe(&state, &mut flags, &mut probe_fes);
        if ok && first.is_none() {
            first = Some(state.iteration as u64 * swarm_size);
        }
    }

    Ok(FirstSuccessStudy {
        flags,
        first_success_fe: first,
        probe_fes,
    })
}

/// Percentage of runs whose best final record is feasible (at its
/// producing phase's slack) and within the success accuracy of `f_star`;
/// `None` ("NA") when the optimum is unknown.
pub fn success_rate(results: &[HybridResult], f_star: Option<f64>) -> Option<f64> {
    let f_star = f_star?;
    let successes = results
        .iter()
        .filter(|r| r.best_record().is_success(f_star))
        .count();
    Some(100.0 * successes as f64 / results.len() as f64)
}

/// Percentage of runs whose best final record is feasible at its producing
/// phase's slack.
pub fn feasibility_rate(results: &[HybridResult]) -> f64 {
    let feasible = results
        .iter()
        .filter(|r| r.best_record().is_feasible())
        .count();
    100.0 * feasible as f64 / results.len() as f64
}

/// FE count at which this run's best-so-far first satisfied the success
/// criterion: the earliest trace record with a feasible, accurate global
/// best, or the full budget when only the final refinement got there.
pub fn fes_to_accuracy(result: &HybridResult, f_star: f64) -> Option<u64> {
    for record in &result.trace.records {
        if record.gbest_violation <= 0.0 && success(record.gbest_f, f_star) {
            return Some(record.fes);
        }
    }
    if result.best_record().is_success(f_star) {
        return Some(result.ledger.total_fes());
    }
    None
}

/// Mean of [`fes_to_accuracy`] over the successful runs only; `None` when
/// no run succeeded or no optimum is known.
pub fn mean_fes_to_accuracy(results: &[HybridResult], f_star: Option<f64>) -> Option<f64> {
    let f_star = f_star?;
    let counts: Vec<u64> = results
        .iter()
        .filter_map(|r| fes_to_accuracy(r, f_star))
        .collect();
    if counts.is_empty() {
        return None;
    }
    Some(counts.iter().sum::<u64>() as f64 / counts.len() as f64)
}
