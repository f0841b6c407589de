//! Experiment configuration and execution: batches of independently seeded
//! hybrid runs, aggregated into per-problem statistics.

use std::path::PathBuf;

use gpso::benchmarks::{self, BenchmarkEntry, BenchmarkError};
use gpso::hybrid::{
    feasibility_rate, mean_fes_to_accuracy, run_hybrid, success_rate, HybridError, HybridResult,
    TriggerStrategy,
};
use gpso::pso::{RunTrace, SwarmConfig};
use gpso::sqp::SqpConfig;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    UnknownProblem(#[from] BenchmarkError),
    #[error("problem selection `{keyword}` is not a name list or the keyword \"all\"")]
    BadSelection { keyword: String },
    #[error("an experiment needs at least one run, got {runs}")]
    BadRuns { runs: usize },
    #[error(transparent)]
    Hybrid(#[from] HybridError),
}

/// Which benchmark problems an experiment covers: explicit names or the
/// keyword `"all"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProblemSelection {
    Names(Vec<String>),
    Keyword(String),
}

impl ProblemSelection {
    pub fn all() -> Self {
        Self::Keyword("all".to_string())
    }

    pub fn resolve(&self) -> Result<Vec<&'static BenchmarkEntry>, ExperimentError> {
        match self {
            Self::Keyword(word) if word == "all" => Ok(benchmarks::all().iter().collect()),
            Self::Keyword(word) => Err(ExperimentError::BadSelection {
                keyword: word.clone(),
            }),
            Self::Names(names) => names
                .iter()
                .map(|n| benchmarks::lookup(n).map_err(ExperimentError::from))
                .collect(),
        }
    }
}

/// Report file format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[serde(alias = "text-table")]
    #[value(alias = "text-table")]
    Table,
}

/// A full experiment: problems × runs under one strategy, with per-run
/// seeds derived as `seed + run_index`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub problems: ProblemSelection,
    pub runs: usize,
    pub seed: u64,
    pub strategy: TriggerStrategy,
    pub iterations: usize,
    /// Report file; stdout when absent.
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
    /// Emit one trace JSON file per run; two-dimensional problems also get
    /// per-iteration particle position snapshots.
    pub trace: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            problems: ProblemSelection::all(),
            runs: 25,
            seed: 1,
            strategy: TriggerStrategy::FinalOnly,
            iterations: 10_000,
            output: None,
            format: OutputFormat::Table,
            trace: false,
        }
    }
}

/// Best / average / standard deviation of one per-run series. The standard
/// deviation is the sample estimate (n − 1 denominator), zero for a single
/// run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct StatBlock {
    pub best: f64,
    pub average: f64,
    pub stdev: f64,
}

impl StatBlock {
    pub fn from_series(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mut best = f64::INFINITY;
        for &v in values {
            if v < best {
                best = v;
            }
        }
        let average = values.iter().sum::<f64>() / n;
        let stdev = if values.len() < 2 {
            0.0
        } else {
            let ss = values.iter().map(|v| (v - average).powi(2)).sum::<f64>();
            (ss / (n - 1.0)).sqrt()
        };
        Self {
            best,
            average,
            stdev,
        }
    }
}

/// Aggregated statistics for one problem. `swarm_*` fields describe the
/// swarm's own final answers, `refined_*` the hybrid final solutions.
#[derive(Clone, Debug, Serialize)]
pub struct ProblemReport {
    pub problem: String,
    pub runs: usize,
    /// Success of the hybrid final solution; absent when the optimum is
    /// unknown.
    pub success_pct: Option<f64>,
    pub feasible_pct: f64,
    /// Success/feasibility of the swarm answer alone, for comparison.
    pub swarm_success_pct: Option<f64>,
    pub swarm_feasible_pct: f64,
    /// Mean FEs at which successful runs first reached the optimum; absent
    /// when no run succeeded.
    pub mean_fes: Option<f64>,
    /// Average share of each run's evaluations spent in the local solver,
    /// in percent.
    pub sqp_fe_share_pct: f64,
    pub swarm_f: StatBlock,
    pub swarm_violation: StatBlock,
    pub refined_f: StatBlock,
    pub refined_violation: StatBlock,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub strategy: TriggerStrategy,
    pub runs: usize,
    pub base_seed: u64,
    pub iterations: usize,
    pub problems: Vec<ProblemReport>,
}

pub struct ProblemTraces {
    pub problem: String,
    pub traces: Vec<RunTrace>,
}

pub struct ExperimentOutcome {
    pub report: ExperimentReport,
    /// One trace list per problem, populated only when tracing is on.
    pub traces: Vec<ProblemTraces>,
}

/// Runs the whole experiment. Problems run sequentially; the runs of each
/// problem fan out across worker threads. Results are reduced in run-index
/// order, so the report does not depend on thread count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome, ExperimentError> {
    if config.runs == 0 {
        return Err(ExperimentError::BadRuns { runs: 0 });
    }
    let entries = config.problems.resolve()?;
    let sqp_config = SqpConfig::default();
    let mut problems = Vec::with_capacity(entries.len());
    let mut traces = Vec::new();
    for entry in entries {
        let swarm_config = SwarmConfig {
            max_iterations: config.iterations,
            record_positions: config.trace && entry.problem.dim() == 2,
            ..SwarmConfig::default()
        };
        let results = (0..config.runs)
            .into_par_iter()
            .map(|run| {
                run_hybrid(
                    &entry.problem,
                    &swarm_config,
                    &sqp_config,
                    &config.strategy,
                    config.seed.wrapping_add(run as u64),
                )
            })
            .collect::<Result<Vec<HybridResult>, HybridError>>()?;
        problems.push(problem_report(entry, &results));
        if config.trace {
            traces.push(ProblemTraces {
                problem: entry.name().to_string(),
                traces: results.into_iter().map(|r| r.trace).collect(),
            });
        }
    }
    Ok(ExperimentOutcome {
        report: ExperimentReport {
            strategy: config.strategy,
            runs: config.runs,
            base_seed: config.seed,
            iterations: config.iterations,
            problems,
        },
        traces,
    })
}

fn problem_report(entry: &BenchmarkEntry, results: &[HybridResult]) -> ProblemReport {
    let swarm_successes = entry.f_star.map(|f_star| {
        results
            .iter()
            .filter(|r| r.pso_final.is_success(f_star))
            .count()
    });
    let swarm_feasible = results
        .iter()
        .filter(|r| r.pso_final.is_feasible())
        .count();
    let n = results.len() as f64;
    let finals: Vec<_> = results.iter().map(|r| r.best_record()).collect();
    ProblemReport {
        problem: entry.name().to_string(),
        runs: results.len(),
        success_pct: success_rate(results, entry.f_star),
        feasible_pct: feasibility_rate(results),
        swarm_success_pct: swarm_successes.map(|s| 100.0 * s as f64 / n),
        swarm_feasible_pct: 100.0 * swarm_feasible as f64 / n,
        mean_fes: mean_fes_to_accuracy(results, entry.f_star),
        sqp_fe_share_pct: 100.0 * results.iter().map(|r| r.sqp_fe_share()).sum::<f64>() / n,
        swarm_f: StatBlock::from_series(
            &results.iter().map(|r| r.pso_final.f).collect::<Vec<_>>(),
        ),
        swarm_violation: StatBlock::from_series(
            &results
                .iter()
                .map(|r| r.pso_final.report.max_violation)
                .collect::<Vec<_>>(),
        ),
        refined_f: StatBlock::from_series(&finals.iter().map(|s| s.f).collect::<Vec<_>>()),
        refined_violation: StatBlock::from_series(
            &finals
                .iter()
                .map(|s| s.report.max_violation)
                .collect::<Vec<_>>(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_all_resolves_the_whole_suite() {
        let entries = ProblemSelection::all().resolve().unwrap();
        assert_eq!(entries.len(), 24);
        assert_eq!(entries[0].name(), "g01");
        assert_eq!(entries[23].name(), "g24");
    }

    #[test]
    fn selection_rejects_unknown_names_and_keywords() {
        let err = ProblemSelection::Names(vec!["g99".to_string()])
            .resolve()
            .unwrap_err();
        assert!(matches!(err, ExperimentError::UnknownProblem(_)));
        let err = ProblemSelection::Keyword("everything".to_string())
            .resolve()
            .unwrap_err();
        assert!(matches!(err, ExperimentError::BadSelection { .. }));
    }

    #[test]
    fn selection_deserializes_from_keyword_or_list() {
        let all: ProblemSelection = serde_json::from_str("\"all\"").unwrap();
        assert_eq!(all, ProblemSelection::all());
        let names: ProblemSelection = serde_json::from_str("[\"g06\", \"g11\"]").unwrap();
        assert_eq!(
            names,
            ProblemSelection::Names(vec!["g06".to_string(), "g11".to_string()])
        );
    }

    #[test]
    fn stat_block_matches_hand_computation() {
        let block = StatBlock::from_series(&[1.0, 2.0, 3.0]);
        assert_eq!(block.best, 1.0);
        assert_eq!(block.average, 2.0);
        assert_eq!(block.stdev, 1.0, "sample stdev of 1,2,3");
        let single = StatBlock::from_series(&[4.5]);
        assert_eq!(single.best, 4.5);
        assert_eq!(single.stdev, 0.0);
    }

    #[test]
    fn zero_runs_are_rejected() {
        let config = ExperimentConfig {
            runs: 0,
            ..ExperimentConfig::default()
        };
        assert!(matches!(
            run_experiment(&config),
            Err(ExperimentError::BadRuns { .. })
        ));
    }

    fn tiny_config(problem: &str, runs: usize, iterations: usize) -> ExperimentConfig {
        ExperimentConfig {
            problems: ProblemSelection::Names(vec![problem.to_string()]),
            runs,
            seed: 1,
            iterations,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn short_experiment_on_an_easy_problem_succeeds_fully() {
        let outcome = run_experiment(&tiny_config("g12", 3, 200)).unwrap();
        let report = &outcome.report.problems[0];
        assert_eq!(report.problem, "g12");
        assert_eq!(report.runs, 3);
        assert_eq!(report.success_pct, Some(100.0));
        assert_eq!(report.feasible_pct, 100.0);
        assert!(report.mean_fes.is_some());
        assert!(report.sqp_fe_share_pct > 0.0 && report.sqp_fe_share_pct <= 100.0);
        assert!(outcome.traces.is_empty(), "tracing was off");
    }

    #[test]
    fn reruns_produce_identical_reports() {
        let config = tiny_config("g24", 4, 50);
        let a = run_experiment(&config).unwrap();
        let b = run_experiment(&config).unwrap();
        assert_eq!(
            serde_json::to_string(&a.report).unwrap(),
            serde_json::to_string(&b.report).unwrap()
        );
    }

    #[test]
    fn tracing_collects_one_trace_per_run_with_positions_in_two_dims() {
        let mut config = tiny_config("g24", 2, 10);
        config.trace = true;
        let outcome = run_experiment(&config).unwrap();
        assert_eq!(outcome.traces.len(), 1);
        let traces = &outcome.traces[0];
        assert_eq!(traces.problem, "g24");
        assert_eq!(traces.traces.len(), 2);
        for trace in &traces.traces {
            assert_eq!(trace.records.len(), 10);
            assert!(trace.records[0].positions.is_some(), "g24 is 2-D");
            assert_eq!(trace.records[0].cog.len(), 2);
        }
        // Higher-dimensional problems trace without position snapshots.
        let mut config = tiny_config("g01", 1, 5);
        config.trace = true;
        let outcome = run_experiment(&config).unwrap();
        assert!(outcome.traces[0].traces[0].records[0].positions.is_none());
    }

    #[test]
    fn config_round_trips_through_json() {
        let config = ExperimentConfig {
            problems: ProblemSelection::Names(vec!["g06".to_string()]),
            runs: 7,
            seed: 42,
            strategy: TriggerStrategy::periodic_default(),
            iterations: 500,
            output: Some(PathBuf::from("report.json")),
            format: OutputFormat::Csv,
            trace: true,
        };
        let text = serde_json::to_string(&config).unwrap();
        let back: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(back, config);
    }

    #[test]
    fn partial_config_files_fall_back_to_defaults() {
        let config: ExperimentConfig =
            serde_json::from_str(r#"{"problems": ["g24"], "runs": 2}"#).unwrap();
        assert_eq!(config.runs, 2);
        assert_eq!(config.seed, 1);
        assert_eq!(config.iterations, 10_000);
        assert_eq!(config.strategy, TriggerStrategy::FinalOnly);
        assert_eq!(config.format, OutputFormat::Table);
    }
}
