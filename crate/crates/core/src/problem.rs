//! Problem abstractions shared by every solver: bound-constrained problems
//! with inequality and relaxed equality constraints, feasibility testing, and
//! function-evaluation accounting.

use serde::Serialize;
use thiserror::Error;

/// Relaxation width applied to every equality constraint: `h(x) = 0` is
/// treated as the inequality `|h(x)| - EQUALITY_EPSILON <= 0`.
pub const EQUALITY_EPSILON: f64 = 1e-4;

/// A run is successful when its best feasible objective value lies within
/// this distance above the known optimum.
pub const SUCCESS_ACCURACY: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("dimension mismatch: problem `{name}` expects {expected} coordinates, got {got}")]
    DimensionMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("invalid bounds for `{name}`: lower[{dim}] = {lower} must be < upper[{dim}] = {upper}")]
    InvalidBounds {
        name: String,
        dim: usize,
        lower: f64,
        upper: f64,
    },
    #[error("problem `{name}` must have at least one dimension")]
    EmptyDomain { name: String },
}

/// Which solver issued an evaluation. Determines the ledger counter charged
/// and the feasibility slack applied to records the solver produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Pso,
    Sqp,
}

impl Phase {
    /// Slack under which this phase's outputs are judged feasible: the swarm
    /// uses zero tolerance, the local solver absorbs round-off up to 1e-12.
    pub fn feasibility_slack(self) -> f64 {
        match self {
            Phase::Pso => 0.0,
            Phase::Sqp => 1e-12,
        }
    }
}

/// Running count of function evaluations, split by the issuing solver.
/// One FE is one joint evaluation of the objective and all constraints.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvaluationLedger {
    pub pso_fes: u64,
    pub sqp_fes: u64,
}

impl EvaluationLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total_fes(&self) -> u64 {
        self.pso_fes + self.sqp_fes
    }

    pub fn charge(&mut self, phase: Phase) {
        match phase {
            Phase::Pso => self.pso_fes += 1,
            Phase::Sqp => self.sqp_fes += 1,
        }
    }

    pub fn absorb(&mut self, other: &EvaluationLedger) {
        self.pso_fes += other.pso_fes;
        self.sqp_fes += other.sqp_fes;
    }
}

impl Serialize for EvaluationLedger {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("EvaluationLedger", 3)?;
        s.serialize_field("total_fes", &self.total_fes())?;
        s.serialize_field("pso_fes", &self.pso_fes)?;
        s.serialize_field("sqp_fes", &self.sqp_fes)?;
        s.end()
    }
}

/// Constraint values at a point: raw inequality values, relaxed equality
/// values (`|h_j(x)| - epsilon`), and their clamped maximum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintReport {
    pub g_values: Vec<f64>,
    pub relaxed_h_values: Vec<f64>,
    pub epsilon_used: f64,
    /// `max(0, all g_values, all relaxed_h_values)`; +inf when any entry is
    /// non-finite so that broken evaluations rank worst everywhere.
    pub max_violation: f64,
}

impl ConstraintReport {
    pub fn new(g_values: Vec<f64>, h_values: &[f64], epsilon: f64) -> Self {
        let relaxed_h_values: Vec<f64> = h_values.iter().map(|h| h.abs() - epsilon).collect();
        let max_violation = clamped_max(&g_values, &relaxed_h_values);
        Self {
            g_values,
            relaxed_h_values,
            epsilon_used: epsilon,
            max_violation,
        }
    }

    /// Recompute the clamped maximum violation as if the equalities had been
    /// relaxed with `epsilon` instead of `epsilon_used` (no re-evaluation).
    pub fn violation_at(&self, epsilon: f64) -> f64 {
        let shift = self.epsilon_used - epsilon;
        let relaxed: Vec<f64> = self.relaxed_h_values.iter().map(|r| r + shift).collect();
        clamped_max(&self.g_values, &relaxed)
    }

    /// The same evaluation re-expressed under a different equality
    /// relaxation, without re-evaluating the constraints (costs no FE).
    pub fn relaxed_to(&self, epsilon: f64) -> ConstraintReport {
        let shift = self.epsilon_used - epsilon;
        let relaxed_h_values: Vec<f64> =
            self.relaxed_h_values.iter().map(|r| r + shift).collect();
        let max_violation = clamped_max(&self.g_values, &relaxed_h_values);
        ConstraintReport {
            g_values: self.g_values.clone(),
            relaxed_h_values,
            epsilon_used: epsilon,
            max_violation,
        }
    }

    /// True when every constraint value is at most `slack` (`slack >= 0`).
    /// Equivalent to `max_violation <= slack`, so a report carrying any
    /// non-finite value is never feasible.
    pub fn is_feasible(&self, slack: f64) -> bool {
        self.max_violation <= slack
    }

    /// Largest signed constraint value (no clamping at zero); `None` for an
    /// unconstrained report. This is the quantity reported as "max
    /// constraint" in result tables, where negative values show how far
    /// inside the feasible region a solution sits.
    pub fn signed_max(&self) -> Option<f64> {
        self.g_values
            .iter()
            .chain(self.relaxed_h_values.iter())
            .copied()
            .reduce(|a, b| if b > a || a.is_nan() { b } else { a })
    }

    pub fn is_finite(&self) -> bool {
        self.g_values.iter().all(|v| v.is_finite())
            && self.relaxed_h_values.iter().all(|v| v.is_finite())
    }
}

fn clamped_max(g_values: &[f64], relaxed_h_values: &[f64]) -> f64 {
    let mut max = 0.0_f64;
    for v in g_values.iter().chain(relaxed_h_values.iter()) {
        if !v.is_finite() {
            return f64::INFINITY;
        }
        if *v > max {
            max = *v;
        }
    }
    max
}

/// True when `f` lies within [`SUCCESS_ACCURACY`] above the known optimum.
/// The test is one-sided: a feasible value below `f_star` also counts.
pub fn success(f: f64, f_star: f64) -> bool {
    f - f_star <= SUCCESS_ACCURACY
}

/// An evaluated point together with the phase that produced it. Feasibility
/// of a record is always judged at its producing phase's slack.
#[derive(Clone, Debug, Serialize)]
pub struct SolutionRecord {
    pub x: Vec<f64>,
    pub f: f64,
    pub report: ConstraintReport,
    pub phase: Phase,
}

impl SolutionRecord {
    pub fn is_feasible(&self) -> bool {
        self.report.is_feasible(self.phase.feasibility_slack())
    }

    /// Feasible at the phase slack and within [`SUCCESS_ACCURACY`] of `f_star`.
    pub fn is_success(&self, f_star: f64) -> bool {
        self.is_feasible() && success(self.f, f_star)
    }
}

type ScalarFn = Box<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type JointFn = Box<dyn Fn(&[f64], &mut Vec<f64>, &mut Vec<f64>) -> f64 + Send + Sync>;

enum Evaluator {
    /// Independent closures per function.
    Separate {
        objective: ScalarFn,
        inequalities: Vec<ScalarFn>,
        equalities: Vec<ScalarFn>,
    },
    /// One closure filling both constraint vectors and returning the
    /// objective; avoids recomputing shared subexpressions.
    Joint {
        n_ineq: usize,
        n_eq: usize,
        eval: JointFn,
    },
}

/// An immutable constrained minimization problem over a box domain.
pub struct ProblemDefinition {
    name: String,
    n: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
    evaluator: Evaluator,
    f_star: Option<f64>,
}

impl ProblemDefinition {
    /// Build a problem from separate objective/constraint closures.
    pub fn new(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        inequalities: Vec<ScalarFn>,
        equalities: Vec<ScalarFn>,
    ) -> Result<Self, ProblemError> {
        Self::build(
            name,
            lower,
            upper,
            Evaluator::Separate {
                objective: Box::new(objective),
                inequalities,
                equalities,
            },
        )
    }

    /// Build a problem from a single joint evaluator that writes `n_ineq`
    /// inequality values and `n_eq` equality values per call.
    pub fn from_joint(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        n_ineq: usize,
        n_eq: usize,
        eval: impl Fn(&[f64], &mut Vec<f64>, &mut Vec<f64>) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, ProblemError> {
        Self::build(
            name,
            lower,
            upper,
            Evaluator::Joint {
                n_ineq,
                n_eq,
                eval: Box::new(eval),
            },
        )
    }

    fn build(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        evaluator: Evaluator,
    ) -> Result<Self, ProblemError> {
        let name = name.into();
        let n = lower.len();
        if n == 0 || upper.len() != n {
            return Err(ProblemError::EmptyDomain { name });
        }
        for d in 0..n {
            if !(lower[d] < upper[d]) {
                return Err(ProblemError::InvalidBounds {
                    name,
                    dim: d,
                    lower: lower[d],
                    upper: upper[d],
                });
            }
        }
        Ok(Self {
            name,
            n,
            lower,
            upper,
            evaluator,
            f_star: None,
        })
    }

    /// Attach the known optimal objective value.
    pub fn with_f_star(mut self, f_star: f64) -> Self {
        self.f_star = Some(f_star);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn n_ineq(&self) -> usize {
        match &self.evaluator {
            Evaluator::Separate { inequalities, .. } => inequalities.len(),
            Evaluator::Joint { n_ineq, .. } => *n_ineq,
        }
    }

    pub fn n_eq(&self) -> usize {
        match &self.evaluator {
            Evaluator::Separate { equalities, .. } => equalities.len(),
            Evaluator::Joint { n_eq, .. } => *n_eq,
        }
    }

    pub fn f_star(&self) -> Option<f64> {
        self.f_star
    }

    pub fn optimum_known(&self) -> bool {
        self.f_star.is_some()
    }

    /// Evaluate the objective and every constraint at `x`, relaxing
    /// equalities by `epsilon`, and charge exactly one FE to `phase`.
    ///
    /// Non-finite objective or constraint values are not errors: the report
    /// carries them and ranks as worst-possible (`max_violation = +inf`).
    pub fn evaluate(
        &self,
        x: &[f64],
        epsilon: f64,
        ledger: &mut EvaluationLedger,
        phase: Phase,
    ) -> Result<(f64, ConstraintReport), ProblemError> {
        let (f, g_values, h_values) = self.evaluate_raw(x, ledger, phase)?;
        Ok((f, ConstraintReport::new(g_values, &h_values, epsilon)))
    }

    /// Evaluate the objective, inequality values, and *signed* equality
    /// values at `x`, charging exactly one FE to `phase`. Local solvers use
    /// this form because linearization needs the equality sign that
    /// [`ConstraintReport`] folds away.
    pub fn evaluate_raw(
        &self,
        x: &[f64],
        ledger: &mut EvaluationLedger,
        phase: Phase,
    ) -> Result<(f64, Vec<f64>, Vec<f64>), ProblemError> {
        if x.len() != self.n {
            return Err(ProblemError::DimensionMismatch {
                name: self.name.clone(),
                expected: self.n,
                got: x.len(),
            });
        }
        ledger.charge(phase);
        let (f, g_values, h_values) = match &self.evaluator {
            Evaluator::Separate {
                objective,
                inequalities,
                equalities,
            } => (
                objective(x),
                inequalities.iter().map(|g| g(x)).collect::<Vec<f64>>(),
                equalities.iter().map(|h| h(x)).collect::<Vec<f64>>(),
            ),
            Evaluator::Joint { n_ineq, n_eq, eval } => {
                let mut g = Vec::with_capacity(*n_ineq);
                let mut h = Vec::with_capacity(*n_eq);
                let f = eval(x, &mut g, &mut h);
                debug_assert_eq!(g.len(), *n_ineq);
                debug_assert_eq!(h.len(), *n_eq);
                (f, g, h)
            }
        };
        Ok((f, g_values, h_values))
    }

    /// Clip `x` into the box domain in place.
    pub fn clip_to_bounds(&self, x: &mut [f64]) {
        for d in 0..self.n {
            x[d] = x[d].clamp(self.lower[d], self.upper[d]);
        }
    }
}

impl std::fmt::Debug for ProblemDefinition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemDefinition")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("n_ineq", &self.n_ineq())
            .field("n_eq", &self.n_eq())
            .field("f_star", &self.f_star)
            .finish()
    }
}
