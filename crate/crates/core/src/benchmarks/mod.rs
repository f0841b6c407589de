//! Compiled-in registry of the 24 constrained benchmark problems (g01–g24)
//! with best-known objective values, a validating optimizer point per
//! problem, and published reference results for comparison output.

mod functions;
mod reference;

pub use reference::{RateReference, ReferenceFes, ReferenceRates, ReferenceStats, StatTriple};

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problem::ProblemDefinition;

#[derive(Debug, Error)]
pub enum BenchmarkError {
    #[error("unknown problem `{name}`; valid names are {valid}")]
    UnknownProblem { name: String, valid: String },
}

/// One benchmark problem plus its bundled reference data.
#[derive(Debug)]
pub struct BenchmarkEntry {
    pub problem: ProblemDefinition,
    /// Best-known objective value; absent for g20, which has no known
    /// attainable optimum.
    pub f_star: Option<f64>,
    /// A point realizing `f_star` (used to validate the transcribed
    /// formulas); absent for g20.
    pub optimum_point: Option<&'static [f64]>,
    pub reference_rates: ReferenceRates,
    pub reference_fes: ReferenceFes,
    pub reference_stats: ReferenceStats,
}

impl BenchmarkEntry {
    pub fn name(&self) -> &str {
        self.problem.name()
    }
}

fn f_star(name: &str) -> Option<f64> {
    Some(match name {
        "g01" => -15.0,
        "g02" => -0.80361910412559,
        "g03" => -1.0005001000100004,
        "g04" => -30665.5386717834,
        "g05" => 5126.4967140071,
        "g06" => -6961.81387558015,
        "g07" => 24.3062090681796,
        "g08" => -0.0958250414180359,
        "g09" => 680.630057374402,
        "g10" => 7049.24802052867,
        "g11" => 0.7499,
        "g12" => -1.0,
        "g13" => 0.053941514041898,
        "g14" => -47.7648884594915,
        "g15" => 961.715022289961,
        "g16" => -1.90515525853479,
        "g17" => 8853.53967480648,
        "g18" => -0.866025403784439,
        "g19" => 32.6555929502463,
        "g20" => return None,
        "g21" => 193.724510070035,
        "g22" => 236.430975504001,
        "g23" => -400.0550999999996,
        "g24" => -5.50801327159536,
        other => panic!("unknown benchmark problem `{other}`"),
    })
}

fn build_entry(name: &str) -> BenchmarkEntry {
    let f_star = f_star(name);
    let mut problem = functions::build(name);
    if let Some(fs) = f_star {
        problem = problem.with_f_star(fs);
    }
    BenchmarkEntry {
        problem,
        f_star,
        optimum_point: functions::optimum_point(name),
        reference_rates: reference::rates(name),
        reference_fes: reference::fes(name),
        reference_stats: reference::stats(name),
    }
}

/// All 24 problem names in suite order.
pub fn names() -> &'static [&'static str] {
    &functions::NAMES
}

/// The full suite, built once and shared.
pub fn all() -> &'static [BenchmarkEntry] {
    static REGISTRY: OnceLock<Vec<BenchmarkEntry>> = OnceLock::new();
    REGISTRY.get_or_init(|| functions::NAMES.iter().map(|n| build_entry(n)).collect())
}

/// Look up one problem by name (`g01` … `g24`).
pub fn lookup(name: &str) -> Result<&'static BenchmarkEntry, BenchmarkError> {
    all()
        .iter()
        .find(|e| e.name() == name)
        .ok_or_else(|| BenchmarkError::UnknownProblem {
            name: name.to_string(),
            valid: functions::NAMES.join(", "),
        })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MetadataFormat {
    Json,
    Csv,
}

/// One problem's exportable metadata. The JSON export round-trips this type
/// losslessly; the CSV export flattens the rate and FE references and omits
/// the result statistics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetadataRecord {
    pub name: String,
    pub dim: usize,
    pub n_ineq: usize,
    pub n_eq: usize,
    pub f_star: Option<f64>,
    pub reference_rates: ReferenceRates,
    pub reference_fes: ReferenceFes,
    pub reference_stats: ReferenceStats,
}

fn metadata_records() -> Vec<MetadataRecord> {
    all()
        .iter()
        .map(|e| MetadataRecord {
            name: e.name().to_string(),
            dim: e.problem.dim(),
            n_ineq: e.problem.n_ineq(),
            n_eq: e.problem.n_eq(),
            f_star: e.f_star,
            reference_rates: e.reference_rates,
            reference_fes: e.reference_fes,
            reference_stats: e.reference_stats,
        })
        .collect()
}

fn push_opt(line: &mut String, value: Option<f64>) {
    line.push(',');
    if let Some(v) = value {
        line.push_str(&v.to_string());
    }
}

/// Export suite metadata for all 24 problems.
pub fn export_metadata(format: MetadataFormat) -> String {
    let records = metadata_records();
    match format {
        MetadataFormat::Json => {
            serde_json::to_string_pretty(&records).expect("metadata is serializable")
        }
        MetadataFormat::Csv => {
            let mut out = String::from(
                "name,dim,n_ineq,n_eq,f_star,\
                 success_gp_pso,feasible_gp_pso,success_gp_pso_sqp,feasible_gp_pso_sqp,\
                 success_peso_plus,feasible_peso_plus,success_dms_pso,feasible_dms_pso,\
                 fes_gp_pso,fes_gp_pso_loc,fes_sqp,fes_peso_plus,fes_dms_pso\n",
            );
            for r in &records {
                let mut line = format!("{},{},{},{}", r.name, r.dim, r.n_ineq, r.n_eq);
                push_opt(&mut line, r.f_star);
                for rate in [
                    r.reference_rates.gp_pso,
                    r.reference_rates.gp_pso_sqp,
                    r.reference_rates.peso_plus,
                    r.reference_rates.dms_pso,
                ] {
                    push_opt(&mut line, rate.success_pct);
                    push_opt(&mut line, Some(rate.feasible_pct));
                }
                push_opt(&mut line, r.reference_fes.gp_pso);
                push_opt(&mut line, r.reference_fes.gp_pso_loc);
                push_opt(&mut line, r.reference_fes.sqp);
                push_opt(&mut line, r.reference_fes.peso_plus);
                push_opt(&mut line, r.reference_fes.dms_pso);
                line.push('\n');
                out.push_str(&line);
            }
            out
        }
    }
}
