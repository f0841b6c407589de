//! Constrained nonlinear optimization toolkit.
//!
//! The crate combines a multi-swarm particle swarm optimizer with feasibility
//! priority rules ([`pso`]) and a dense active-set SQP local solver ([`sqp`]),
//! orchestrated by pluggable trigger strategies ([`hybrid`]). A compiled-in
//! registry of the 24 CEC2006 constrained test problems ([`benchmarks`]) and
//! experiment aggregation/reporting ([`report`]) make up the benchmark
//! harness consumed by the `gpso-bench` CLI.

pub mod benchmarks;
pub mod hybrid;
pub mod problem;
pub mod pso;
pub mod sqp;

pub use problem::{
    success, ConstraintReport, EvaluationLedger, Phase, ProblemDefinition, ProblemError,
    SolutionRecord, EQUALITY_EPSILON, SUCCESS_ACCURACY,
};
