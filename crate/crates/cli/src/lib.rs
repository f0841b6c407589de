//! Command-line front end: parses flags and an optional JSON config file,
//! runs the experiment, renders the report, and optionally writes per-run
//! trace files and a comparison against the bundled reference results.

pub mod compare;
pub mod experiment;
pub mod render;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::Parser;

use experiment::{run_experiment, ExperimentConfig, ExperimentError, OutputFormat, ProblemSelection};
use gpso::hybrid::{HybridError, TriggerStrategy};

#[derive(Parser, Debug)]
#[command(
    name = "gpso-bench",
    version,
    about = "Runs the CEC2006 benchmark suite through the swarm/SQP hybrid and reports success statistics"
)]
struct Cli {
    /// Problem name (g01..g24) or "all"; repeat the flag for several.
    #[arg(long = "problem")]
    problems: Vec<String>,
    /// Independent runs per problem (default 25).
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; run k uses seed + k.
    #[arg(long)]
    seed: Option<u64>,
    /// Local-search trigger: final, every, improvement, or periodic.
    #[arg(long)]
    strategy: Option<String>,
    /// Swarm iterations per run (default 10000).
    #[arg(long)]
    iterations: Option<usize>,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Write one trace JSON file per run (trace_<problem>_run<k>.json next
    /// to the report); 2-D problems include particle position snapshots.
    #[arg(long)]
    trace: bool,
    /// JSON file mirroring the experiment configuration; explicit flags
    /// override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Print a measured-vs-reference comparison to stdout after the run.
    #[arg(long)]
    compare: bool,
}

#[derive(Debug)]
enum RunError {
    Usage(String),
    Internal(anyhow::Error),
}

fn parse_strategy(name: &str) -> Result<TriggerStrategy, String> {
    match name {
        "final" | "final-only" => Ok(TriggerStrategy::FinalOnly),
        "every" | "every-iteration" => Ok(TriggerStrategy::EveryIteration),
        "improvement" | "on-gbest-improvement" => Ok(TriggerStrategy::OnGbestImprovement),
        "periodic" => Ok(TriggerStrategy::periodic_default()),
        other => Err(format!(
            "unknown strategy `{other}`; valid strategies are final, every, improvement, periodic"
        )),
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, RunError> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                RunError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            serde_json::from_str::<ExperimentConfig>(&text).map_err(|e| {
                RunError::Usage(format!("malformed config {}: {e}", path.display()))
            })?
        }
        None => ExperimentConfig::default(),
    };
    if !cli.problems.is_empty() {
        config.problems = if cli.problems.iter().any(|p| p == "all") {
            ProblemSelection::all()
        } else {
            ProblemSelection::Names(cli.problems.clone())
        };
    }
    if let Some(runs) = cli.runs {
        config.runs = runs;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(name) = &cli.strategy {
        config.strategy = parse_strategy(name).map_err(RunError::Usage)?;
    }
    if let Some(iterations) = cli.iterations {
        config.iterations = iterations;
    }
    if let Some(out) = &cli.out {
        config.output = Some(out.clone());
    }
    if let Some(format) = cli.format {
        config.format = format;
    }
    config.trace |= cli.trace;
    Ok(config)
}

fn trace_dir(config: &ExperimentConfig) -> PathBuf {
    config
        .output
        .as_deref()
        .and_then(Path::parent)
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."))
}

fn execute(cli: Cli) -> Result<(), RunError> {
    let config = load_config(&cli)?;
    let outcome = run_experiment(&config).map_err(|e| match e {
        ExperimentError::UnknownProblem(_)
        | ExperimentError::BadSelection { .. }
        | ExperimentError::BadRuns { .. }
        | ExperimentError::Hybrid(HybridError::BadStrategy { .. }) => {
            RunError::Usage(e.to_string())
        }
        other => RunError::Internal(anyhow::Error::new(other)),
    })?;

    let rendered = render::render(&outcome.report, config.format);
    match &config.output {
        Some(path) => fs::write(path, &rendered)
            .with_context(|| format!("writing report to {}", path.display()))
            .map_err(RunError::Internal)?,
        None => print!("{rendered}"),
    }

    if config.trace {
        let dir = trace_dir(&config);
        for problem_traces in &outcome.traces {
            for (index, trace) in problem_traces.traces.iter().enumerate() {
                let path = dir.join(format!(
                    "trace_{}_run{}.json",
                    problem_traces.problem, index
                ));
                let mut text = serde_json::to_string_pretty(trace)
                    .map_err(|e| RunError::Internal(e.into()))?;
                text.push('\n');
                fs::write(&path, text)
                    .with_context(|| format!("writing trace to {}", path.display()))
                    .map_err(RunError::Internal)?;
            }
        }
    }

    if cli.compare {
        print!("{}", compare::compare_reference(&outcome.report));
    }
    Ok(())
}

/// Parses and runs; returns the process exit code: 0 on success, 2 on bad
/// arguments (unknown problem, strategy, or malformed flags), 1 on internal
/// errors.
pub fn cli_run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(RunError::Usage(message)) => {
            eprintln!("error: {message}");
            eprintln!("run with --help for usage");
            2
        }
        Err(RunError::Internal(err)) => {
            eprintln!("error: {err:#}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategy_names_map_to_variants() {
        assert_eq!(parse_strategy("final").unwrap(), TriggerStrategy::FinalOnly);
        assert_eq!(
            parse_strategy("every").unwrap(),
            TriggerStrategy::EveryIteration
        );
        assert_eq!(
            parse_strategy("improvement").unwrap(),
            TriggerStrategy::OnGbestImprovement
        );
        assert_eq!(
            parse_strategy("periodic").unwrap(),
            TriggerStrategy::periodic_default()
        );
        let err = parse_strategy("annealed").unwrap_err();
        assert!(err.contains("valid strategies"));
    }

    #[test]
    fn flags_override_config_file_fields() {
        let dir = std::env::temp_dir().join("gpso-bench-test-config");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("config.json");
        fs::write(
            &path,
            r#"{"problems": ["g24"], "runs": 9, "seed": 5, "iterations": 77}"#,
        )
        .unwrap();
        let cli = Cli::try_parse_from([
            "gpso-bench",
            "--config",
            path.to_str().unwrap(),
            "--runs",
            "2",
            "--strategy",
            "periodic",
        ])
        .unwrap();
        let config = load_config(&cli).unwrap();
        assert_eq!(config.runs, 2, "flag wins");
        assert_eq!(config.seed, 5, "file value kept");
        assert_eq!(config.iterations, 77);
        assert_eq!(config.strategy, TriggerStrategy::periodic_default());
        assert_eq!(
            config.problems,
            ProblemSelection::Names(vec!["g24".to_string()])
        );
        fs::remove_file(&path).unwrap();
    }

    #[test]
    fn trace_files_land_next_to_the_report() {
        let config = ExperimentConfig {
            output: Some(PathBuf::from("/tmp/reports/r.json")),
            ..ExperimentConfig::default()
        };
        assert_eq!(trace_dir(&config), PathBuf::from("/tmp/reports"));
        let stdout_config = ExperimentConfig::default();
        assert_eq!(trace_dir(&stdout_config), PathBuf::from("."));
    }
}
