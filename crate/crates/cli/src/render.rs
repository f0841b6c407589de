//! Report rendering: JSON for machines, CSV and fixed-width text tables for
//! eyeballing. Objective values print with 6 decimal places; violations and
//! standard deviations print in scientific notation with one decimal
//! (`5.8E-12` style).

use std::fmt::Write as _;

use crate::experiment::{ExperimentReport, StatBlock};

/// Objective-value formatting: fixed 6 decimals.
pub fn fixed6(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        format!("{x}")
    }
}

/// Violation/stdev formatting: uppercase scientific, 1 decimal.
pub fn sci1(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.1E}")
    } else {
        format!("{x}")
    }
}

/// Percentages and FE counts print with one decimal; absent values say NA.
pub fn pct(x: f64) -> String {
    format!("{x:.1}")
}

pub fn opt_pct(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), pct)
}

pub fn opt_fes(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), |v| format!("{v:.1}"))
}

pub fn to_json(report: &ExperimentReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}

pub fn to_csv(report: &ExperimentReport) -> String {
    let mut out = String::new();
    out.push_str(
        "problem,runs,success_pct,feasible_pct,swarm_success_pct,swarm_feasible_pct,\
         mean_fes,sqp_fe_share_pct,\
         swarm_f_best,swarm_f_average,swarm_f_stdev,\
         swarm_violation_best,swarm_violation_average,swarm_violation_stdev,\
         refined_f_best,refined_f_average,refined_f_stdev,\
         refined_violation_best,refined_violation_average,refined_violation_stdev\n",
    );
    for p in &report.problems {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            p.problem,
            p.runs,
            opt_pct(p.success_pct),
            pct(p.feasible_pct),
            opt_pct(p.swarm_success_pct),
            pct(p.swarm_feasible_pct),
            opt_fes(p.mean_fes),
            pct(p.sqp_fe_share_pct),
            fixed6(p.swarm_f.best),
            fixed6(p.swarm_f.average),
            sci1(p.swarm_f.stdev),
            sci1(p.swarm_violation.best),
            sci1(p.swarm_violation.average),
            sci1(p.swarm_violation.stdev),
            fixed6(p.refined_f.best),
            fixed6(p.refined_f.average),
            sci1(p.refined_f.stdev),
            sci1(p.refined_violation.best),
            sci1(p.refined_violation.average),
            sci1(p.refined_violation.stdev),
        );
    }
    out
}

fn strategy_label(report: &ExperimentReport) -> String {
    serde_json::to_value(report.strategy)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(String::from))
        .unwrap_or_else(|| "unknown".to_string())
}

fn stat_cells(out: &mut String, f: &StatBlock, violation: &StatBlock) {
    let _ = write!(
        out,
        "{:>16}{:>16}{:>10}{:>10}{:>10}{:>10}",
        fixed6(f.best),
        fixed6(f.average),
        sci1(f.stdev),
        sci1(violation.best),
        sci1(violation.average),
        sci1(violation.stdev),
    );
}

pub fn to_table(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "strategy: {}   runs: {}   base seed: {}   iterations: {}",
        strategy_label(report),
        report.runs,
        report.base_seed,
        report.iterations,
    );
    out.push('\n');
    let _ = writeln!(
        out,
        "{:<9}{:>10}{:>11}{:>15}{:>16}{:>14}{:>13}",
        "problem", "success%", "feasible%", "swarm succ%", "swarm feas%", "mean FEs", "SQP share%"
    );
    for p in &report.problems {
        let _ = writeln!(
            out,
            "{:<9}{:>10}{:>11}{:>15}{:>16}{:>14}{:>13}",
            p.problem,
            opt_pct(p.success_pct),
            pct(p.feasible_pct),
            opt_pct(p.swarm_success_pct),
            pct(p.swarm_feasible_pct),
            opt_fes(p.mean_fes),
            pct(p.sqp_fe_share_pct),
        );
    }
    out.push('\n');
    for (title, swarm) in [("swarm solutions", true), ("refined solutions", false)] {
        let _ = writeln!(out, "{title}");
        let _ = writeln!(
            out,
            "{:<9}{:>16}{:>16}{:>10}{:>10}{:>10}{:>10}",
            "problem", "f best", "f average", "f stdev", "v best", "v avg", "v stdev"
        );
        for p in &report.problems {
            let _ = write!(out, "{:<9}", p.problem);
            if swarm {
                stat_cells(&mut out, &p.swarm_f, &p.swarm_violation);
            } else {
                stat_cells(&mut out, &p.refined_f, &p.refined_violation);
            }
            out.push('\n');
        }
        out.push('\n');
    }
    out
}

pub fn render(report: &ExperimentReport, format: crate::experiment::OutputFormat) -> String {
    use crate::experiment::OutputFormat::*;
    match format {
        Json => to_json(report),
        Csv => to_csv(report),
        Table => to_table(report),
    }
}
