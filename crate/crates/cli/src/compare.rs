//! Side-by-side comparison of a measured report against the bundled
//! reference results for GP-PSO, GP-PSO-SQP, PESO+ and DMS-PSO. Purely
//! informational output: deltas quantify the gap, and a trailing `*` flags
//! cells where the measured result is worse than the reference.

use std::fmt::Write as _;

use gpso::benchmarks;

use crate::experiment::{ExperimentReport, ProblemReport};
use crate::render::{opt_fes, opt_pct};

/// Whether larger or smaller measured values count as better for a metric.
#[derive(Clone, Copy)]
enum Better {
    Higher,
    Lower,
}

fn delta_cell(measured: Option<f64>, reference: Option<f64>, better: Better) -> String {
    match (measured, reference) {
        (Some(m), Some(r)) => {
            let delta = m - r;
            let worse = match better {
                Better::Higher => delta < 0.0,
                Better::Lower => delta > 0.0,
            };
            format!("{delta:+.1}{}", if worse { "*" } else { "" })
        }
        (_, None) => "no reference".to_string(),
        (None, _) => "NA".to_string(),
    }
}

fn rate_line(
    out: &mut String,
    label: &str,
    measured: Option<f64>,
    reference: Option<f64>,
) {
    let _ = writeln!(
        out,
        "    {:<12} measured {:>8}   reference {:>8}   delta {:>14}",
        label,
        opt_pct(measured),
        opt_pct(reference),
        delta_cell(measured, reference, Better::Higher),
    );
}

fn fes_line(out: &mut String, label: &str, measured: Option<f64>, reference: Option<f64>) {
    let _ = writeln!(
        out,
        "    {:<12} measured {:>10}   reference {:>10}   delta {:>16}",
        label,
        opt_fes(measured),
        opt_fes(reference),
        delta_cell(measured, reference, Better::Lower),
    );
}

fn compare_problem(out: &mut String, p: &ProblemReport) {
    let _ = writeln!(out, "== {} ==", p.problem);
    let entry = match benchmarks::lookup(&p.problem) {
        Ok(entry) => entry,
        Err(_) => {
            let _ = writeln!(out, "    no reference");
            return;
        }
    };
    let rates = &entry.reference_rates;
    let _ = writeln!(out, "  success rate (% of runs)");
    rate_line(out, "GP-PSO", p.swarm_success_pct, rates.gp_pso.success_pct);
    rate_line(out, "GP-PSO-SQP", p.success_pct, rates.gp_pso_sqp.success_pct);
    rate_line(out, "PESO+", p.success_pct, rates.peso_plus.success_pct);
    rate_line(out, "DMS-PSO", p.success_pct, rates.dms_pso.success_pct);
    let _ = writeln!(out, "  feasibility rate (% of runs)");
    rate_line(
        out,
        "GP-PSO",
        Some(p.swarm_feasible_pct),
        Some(rates.gp_pso.feasible_pct),
    );
    rate_line(
        out,
        "GP-PSO-SQP",
        Some(p.feasible_pct),
        Some(rates.gp_pso_sqp.feasible_pct),
    );
    rate_line(
        out,
        "PESO+",
        Some(p.feasible_pct),
        Some(rates.peso_plus.feasible_pct),
    );
    rate_line(
        out,
        "DMS-PSO",
        Some(p.feasible_pct),
        Some(rates.dms_pso.feasible_pct),
    );
    let fes = &entry.reference_fes;
    let _ = writeln!(out, "  mean FEs to the optimum");
    fes_line(out, "GP-PSO", p.mean_fes, fes.gp_pso);
    fes_line(out, "PESO+", p.mean_fes, fes.peso_plus);
    fes_line(out, "DMS-PSO", p.mean_fes, fes.dms_pso);
}

/// Renders the comparison table. Measured swarm-only rates line up against
/// the GP-PSO reference; measured hybrid rates line up against the three
/// full-algorithm references.
pub fn compare_reference(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "measured vs reference ({} runs, base seed {})",
        report.runs, report.base_seed
    );
    for p in &report.problems {
        compare_problem(&mut out, p);
    }
    out
}
