//! Sequential quadratic programming local solver.
//!
//! Each major iteration linearizes the constraints at the current iterate
//! (forward finite differences, one joint probe per dimension with the base
//! point cached), models the Lagrangian Hessian with a Powell-damped BFGS
//! matrix, solves a convex QP for the step, and accepts a step length by
//! backtracking on an l1 merit function. Equality constraints enter through
//! the same relaxed inequality pair used everywhere else in the toolkit
//! (|h| ≤ ε), so "feasible" means the same thing to the swarm and to the
//! local solver. Bound constraints become linear rows of the QP.
//!
//! All failure modes are reported statuses, never panics: local search on
//! multimodal constrained problems is expected to fail routinely, and the
//! caller (usually the hybrid driver) treats a failed refinement as "keep
//! the swarm's answer".

pub mod qp;

use nalgebra::{DMatrix, DVector};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::problem::{
    ConstraintReport, EvaluationLedger, Phase, ProblemDefinition, EQUALITY_EPSILON,
};
pub use qp::{solve_qp, QpSolution, QpStatus, QpSubproblem};

/// Tolerance bundle and iteration budget for one local solve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SqpConfig {
    /// Step-size stopping threshold (∞-norm of the QP step).
    pub tol_x: f64,
    /// Constraint-violation snap tolerance inside the merit function.
    pub tol_con: f64,
    /// Merit-stall and KKT-residual threshold for declaring convergence.
    pub tol_fun: f64,
    /// Violation allowed in a point still called feasible.
    pub feasibility_slack: f64,
    pub max_iterations: usize,
    /// Base forward-difference step, scaled per dimension by `1 + |x_d|`.
    pub fd_step: f64,
}

impl Default for SqpConfig {
    fn default() -> Self {
        Self {
            tol_x: 1e-12,
            tol_con: 1e-14,
            tol_fun: 1e-14,
            feasibility_slack: 1e-12,
            max_iterations: 150,
            fd_step: f64::EPSILON.sqrt(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SqpStatus {
    Converged,
    MaxIter,
    QpInfeasible,
    LineSearchFailure,
    NonFinite,
}

/// Outcome of one local solve. `fes` is the exact number of evaluations the
/// solve charged to the ledger (base samples, gradient probes, and line
/// search trials).
#[derive(Clone, Debug)]
pub struct SqpResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub report: ConstraintReport,
    pub status: SqpStatus,
    pub iterations: usize,
    pub fes: u64,
    /// Scaled stationarity residual of the last QP model; `converged` is
    /// only reported when this is at most `tol_fun` and the point is
    /// feasible at `feasibility_slack`.
    pub kkt_residual: f64,
}

impl Serialize for SqpResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SqpResult", 7)?;
        s.serialize_field("x", &self.x)?;
        s.serialize_field("f", &self.f)?;
        s.serialize_field("max_violation", &self.report.max_violation)?;
        s.serialize_field("status", &self.status)?;
        s.serialize_field("iterations", &self.iterations)?;
        s.serialize_field("fes", &self.fes)?;
        s.serialize_field("kkt_residual", &self.kkt_residual)?;
        s.end()
    }
}

/// Forward-difference gradient of a scalar function; charges exactly
/// `n + 1` FEs (base plus one probe per dimension) to the local-search
/// phase of the ledger.
pub fn fd_gradient(
    f: impl Fn(&[f64]) -> f64,
    x: &[f64],
    h: f64,
    ledger: &mut EvaluationLedger,
) -> Vec<f64> {
    assert!(h > 0.0, "finite-difference step must be positive");
    let base = f(x);
    ledger.charge(Phase::Sqp);
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for d in 0..x.len() {
        probe[d] = x[d] + h;
        let sample = f(&probe);
        ledger.charge(Phase::Sqp);
        grad.push((sample - base) / h);
        probe[d] = x[d];
    }
    grad
}

/// Powell-damped BFGS update of a symmetric positive definite matrix.
/// When the curvature `sᵀy` falls below `0.2·sᵀBs`, `y` is blended with
/// `Bs` just enough to restore it, so the result stays positive definite
/// even for `sᵀy < 0`. A degenerate step (`sᵀBs ≤ 0`) returns `B` unchanged.
pub fn bfgs_update(b: &DMatrix<f64>, s: &DVector<f64>, y: &DVector<f64>) -> DMatrix<f64> {
    let bs = b * s;
    let sbs = s.dot(&bs);
    if !(sbs > 0.0) || !sbs.is_finite() {
        return b.clone();
    }
    let sy = s.dot(y);
    let damped = if sy < 0.2 * sbs {
        let theta = 0.8 * sbs / (sbs - sy);
        theta * y + (1.0 - theta) * &bs
    } else {
        y.clone()
    };
    let s_damped = s.dot(&damped);
    let updated =
        b - (&bs * bs.transpose()) / sbs + (&damped * damped.transpose()) / s_damped;
    (&updated + updated.transpose()) * 0.5
}

/// One joint evaluation: objective, inequality values, signed equality
/// values.
#[derive(Clone, Debug)]
struct Sample {
    f: f64,
    g: Vec<f64>,
    h: Vec<f64>,
}

impl Sample {
    fn take(
        problem: &ProblemDefinition,
        x: &[f64],
        ledger: &mut EvaluationLedger,
    ) -> Sample {
        let (f, g, h) = problem
            .evaluate_raw(x, ledger, Phase::Sqp)
            .expect("iterates have the problem dimension");
        Sample { f, g, h }
    }

    fn is_finite(&self) -> bool {
        self.f.is_finite()
            && self.g.iter().all(|v| v.is_finite())
            && self.h.iter().all(|v| v.is_finite())
    }

    /// Total l1 violation of inequalities and relaxed equalities.
    fn violation_sum(&self, epsilon: f64, snap: f64) -> f64 {
        let mut total = 0.0;
        for &g in &self.g {
            let v = g.max(0.0);
            total += if v <= snap { 0.0 } else { v };
        }
        for &h in &self.h {
            let v = (h.abs() - epsilon).max(0.0);
            total += if v <= snap { 0.0 } else { v };
        }
        total
    }

    fn merit(&self, mu: f64, epsilon: f64, snap: f64) -> f64 {
        self.f + mu * self.violation_sum(epsilon, snap)
    }

    fn report(&self, epsilon: f64) -> ConstraintReport {
        ConstraintReport::new(self.g.clone(), &self.h, epsilon)
    }
}

/// Finite-difference gradients of the objective and every constraint from
/// `n` joint probes (the base sample is reused, so a full Jacobian costs
/// exactly `n` FEs). Probes step forward, flipping direction at the upper
/// bound. `None` when any probe produces a non-finite value.
struct Jacobian {
    df: DVector<f64>,
    dg: Vec<DVector<f64>>,
    dh: Vec<DVector<f64>>,
}

fn joint_jacobian(
    problem: &ProblemDefinition,
    x: &[f64],
    base: &Sample,
    fd_step: f64,
    ledger: &mut EvaluationLedger,
) -> Option<Jacobian> {
    let n = problem.dim();
    let mut df = DVector::zeros(n);
    let mut dg = vec![DVector::zeros(n); base.g.len()];
    let mut dh = vec![DVector::zeros(n); base.h.len()];
    let mut probe = x.to_vec();
    for d in 0..n {
        let mut step = fd_step * (1.0 + x[d].abs());
        if x[d] + step > problem.upper()[d] {
            step = -step;
        }
        probe[d] = x[d] + step;
        let sample = Sample::take(problem, &probe, ledger);
        probe[d] = x[d];
        if !sample.is_finite() {
            return None;
        }
        df[d] = (sample.f - base.f) / step;
        for (j, grad) in dg.iter_mut().enumerate() {
            grad[d] = (sample.g[j] - base.g[j]) / step;
        }
        for (j, grad) in dh.iter_mut().enumerate() {
            grad[d] = (sample.h[j] - base.h[j]) / step;
        }
    }
    Some(Jacobian { df, dg, dh })
}

/// Assemble the QP in the step variable `d`: minimize `½dᵀBd + ∇fᵀd`
/// subject to every linearized constraint and the box rows. Inequalities
/// contribute `∇g·d ≤ −g(x)`; each equality contributes its relaxed pair
/// `±∇h·d ≤ −(±h(x) − ε)`; each dimension contributes `d ≤ upper − x` and
/// `−d ≤ x − lower`. Constraint rows come first so callers can slice their
/// multipliers off the front.
fn build_qp(
    x: &[f64],
    b: &DMatrix<f64>,
    jac: &Jacobian,
    base: &Sample,
    problem: &ProblemDefinition,
) -> QpSubproblem {
    let n = problem.dim();
    let m_c = base.g.len() + 2 * base.h.len();
    let rows = m_c + 2 * n;
    let mut a_in = DMatrix::zeros(rows, n);
    let mut b_in = DVector::zeros(rows);
    let mut r = 0;
    for (j, grad) in jac.dg.iter().enumerate() {
        a_in.row_mut(r).copy_from(&grad.transpose());
        b_in[r] = -base.g[j];
        r += 1;
    }
    for (j, grad) in jac.dh.iter().enumerate() {
        a_in.row_mut(r).copy_from(&grad.transpose());
        b_in[r] = EQUALITY_EPSILON - base.h[j];
        r += 1;
        a_in.row_mut(r).copy_from(&(-grad).transpose());
        b_in[r] = EQUALITY_EPSILON + base.h[j];
        r += 1;
    }
    for d in 0..n {
        a_in[(r, d)] = 1.0;
        b_in[r] = problem.upper()[d] - x[d];
        r += 1;
        a_in[(r, d)] = -1.0;
        b_in[r] = x[d] - problem.lower()[d];
        r += 1;
    }
    QpSubproblem {
        h: b.clone(),
        g: jac.df.clone(),
        a_in,
        b_in,
        a_eq: DMatrix::zeros(0, n),
        b_eq: DVector::zeros(0),
    }
}

struct QpOutcome {
    d: DVector<f64>,
    /// Multipliers for every inequality row of the QP, constraint rows
    /// first, bounds rows last.
    multipliers: DVector<f64>,
    used_elastic: bool,
}

/// Solve the step QP, falling back to a two-phase elastic relaxation when
/// the linearized constraints are inconsistent: first minimize the total
/// linearized violation, then re-solve with the attained slack granted.
fn solve_step_qp(qp: &QpSubproblem, n: usize, m_c: usize) -> Option<QpOutcome> {
    let direct = solve_qp(qp);
    if direct.status == QpStatus::Optimal {
        return Some(QpOutcome {
            d: direct.d,
            multipliers: direct.in_multipliers,
            used_elastic: false,
        });
    }

    // Phase 1: minimize Σs over (d, s) with A_c·d − s ≤ b_c, s ≥ 0, and the
    // original bound rows on d; a small quadratic term keeps it strictly
    // convex.
    let rows = qp.a_in.nrows();
    let wide = n + m_c;
    let delta = 1e-6;
    let mut g1 = DVector::zeros(wide);
    for i in 0..m_c {
        g1[n + i] = 1.0;
    }
    let mut a1 = DMatrix::zeros(rows + m_c, wide);
    let mut b1 = DVector::zeros(rows + m_c);
    for i in 0..m_c {
        for d in 0..n {
            a1[(i, d)] = qp.a_in[(i, d)];
        }
        a1[(i, n + i)] = -1.0;
        b1[i] = qp.b_in[i];
        a1[(rows + i, n + i)] = -1.0;
    }
    for i in m_c..rows {
        for d in 0..n {
            a1[(i, d)] = qp.a_in[(i, d)];
        }
        b1[i] = qp.b_in[i];
    }
    let phase1 = solve_qp(&QpSubproblem {
        h: delta * DMatrix::identity(wide, wide),
        g: g1,
        a_in: a1,
        b_in: b1,
        a_eq: DMatrix::zeros(0, wide),
        b_eq: DVector::zeros(0),
    });
    if phase1.status != QpStatus::Optimal {
        return None;
    }

    // Phase 2: original QP with each constraint row granted the violation
    // phase 1 could not remove.
    // The margin sits below the caller's step tolerance so a fully pinned
    // step (no movement can reduce the linearized violation) still registers
    // as zero-length.
    let d1 = phase1.d.rows(0, n).into_owned();
    let mut relaxed = qp.clone();
    for i in 0..m_c {
        let slack = (qp.a_in.row(i).transpose().dot(&d1) - qp.b_in[i]).max(0.0);
        relaxed.b_in[i] += slack + 1e-13;
    }
    let phase2 = solve_qp(&relaxed);
    if phase2.status != QpStatus::Optimal {
        return None;
    }
    Some(QpOutcome {
        d: phase2.d,
        multipliers: phase2.in_multipliers,
        used_elastic: true,
    })
}

/// Stationarity residual of the QP model at its solution, scaled by the
/// magnitude of the data so it is comparable across problems.
fn scaled_stationarity(qp: &QpSubproblem, d: &DVector<f64>, multipliers: &DVector<f64>) -> f64 {
    let mut residual = &qp.h * d + &qp.g;
    let mut denom: f64 = 1.0_f64.max(qp.g.amax());
    for i in 0..qp.a_in.nrows() {
        let lambda = multipliers[i];
        if lambda != 0.0 {
            let row = qp.a_in.row(i).transpose();
            residual.axpy(lambda, &row, 1.0);
            denom = denom.max(lambda.abs() * row.amax());
        }
    }
    residual.amax() / denom
}

/// Gradient of the Lagrangian `f + Σλ·g + Σ(λ⁺−λ⁻)·h` at one Jacobian.
/// Bound rows have constant gradients and cancel inside BFGS differences,
/// so they are excluded.
fn lagrangian_gradient(jac: &Jacobian, lambda_c: &DVector<f64>) -> DVector<f64> {
    let mut grad = jac.df.clone();
    for (j, dg) in jac.dg.iter().enumerate() {
        let l = lambda_c[j];
        if l != 0.0 {
            grad.axpy(l, dg, 1.0);
        }
    }
    let m_in = jac.dg.len();
    for (j, dh) in jac.dh.iter().enumerate() {
        let net = lambda_c[m_in + 2 * j] - lambda_c[m_in + 2 * j + 1];
        if net != 0.0 {
            grad.axpy(net, dh, 1.0);
        }
    }
    grad
}

struct SearchOutcome {
    alpha: f64,
    x_new: Vec<f64>,
    sample: Sample,
    merit_new: f64,
}

const ARMIJO_C1: f64 = 1e-4;
const MAX_HALVINGS: u32 = 20;

/// Backtracking line search on the l1 merit function: try
/// `α ∈ {1, ½, …, 2⁻²⁰}` and accept the first trial satisfying an Armijo
/// decrease with slope `model_slope` (non-positive). Each trial charges one
/// FE; a zero direction short-circuits to `α = 1` without any evaluation.
fn merit_search(
    problem: &ProblemDefinition,
    x: &[f64],
    base: &Sample,
    d: &[f64],
    mu: f64,
    model_slope: f64,
    snap: f64,
    ledger: &mut EvaluationLedger,
) -> Result<SearchOutcome, ()> {
    let merit_0 = base.merit(mu, EQUALITY_EPSILON, snap);
    if d.iter().all(|&v| v == 0.0) {
        return Ok(SearchOutcome {
            alpha: 1.0,
            x_new: x.to_vec(),
            sample: base.clone(),
            merit_new: merit_0,
        });
    }
    for k in 0..=MAX_HALVINGS {
        let alpha = 0.5_f64.powi(k as i32);
        let mut trial: Vec<f64> = x.iter().zip(d).map(|(xi, di)| xi + alpha * di).collect();
        problem.clip_to_bounds(&mut trial);
        let sample = Sample::take(problem, &trial, ledger);
        let merit_new = sample.merit(mu, EQUALITY_EPSILON, snap);
        if merit_new <= merit_0 + ARMIJO_C1 * alpha * model_slope {
            return Ok(SearchOutcome {
                alpha,
                x_new: trial,
                sample,
                merit_new,
            });
        }
    }
    Err(())
}

/// Backtracking merit line search as a standalone operation: evaluates the
/// merit at `x` itself (one FE) and then applies the same trial schedule as
/// the solver, requiring plain merit decrease. Returns the accepted
/// `(alpha, x_new)`, or `Err(())` when the floor `2⁻²⁰` is reached without
/// any decrease (21 failed trials).
pub fn merit_line_search(
    problem: &ProblemDefinition,
    x: &[f64],
    d: &[f64],
    mu: f64,
    ledger: &mut EvaluationLedger,
) -> Result<(f64, Vec<f64>), ()> {
    if d.iter().all(|&v| v == 0.0) {
        return Ok((1.0, x.to_vec()));
    }
    let base = Sample::take(problem, x, ledger);
    let snap = SqpConfig::default().tol_con;
    merit_search(problem, x, &base, d, mu, 0.0, snap, ledger)
        .map(|out| (out.alpha, out.x_new))
}

/// Run the local solver from `x0` (clipped into the box). Never panics on
/// numerical failure: every abnormal end is a reported status, and the
/// returned point is the last accepted iterate.
pub fn sqp_solve(
    problem: &ProblemDefinition,
    x0: &[f64],
    config: &SqpConfig,
    ledger: &mut EvaluationLedger,
) -> SqpResult {
    let fes_start = ledger.total_fes();
    let n = problem.dim();
    let m_c = problem.n_ineq() + 2 * problem.n_eq();
    let epsilon = EQUALITY_EPSILON;

    let mut x = x0.to_vec();
    problem.clip_to_bounds(&mut x);
    let mut base = Sample::take(problem, &x, ledger);
    let mut status = SqpStatus::MaxIter;
    let mut iterations = 0;
    let mut kkt_residual = f64::INFINITY;

    if !base.is_finite() {
        status = SqpStatus::NonFinite;
    } else {
        let mut b_mat = DMatrix::identity(n, n);
        let mut mu: f64 = 1.0;
        // BFGS data carried across iterations: (step, ∇L at the old point,
        // multipliers used for both Lagrangian gradients).
        let mut pending: Option<(DVector<f64>, DVector<f64>, DVector<f64>)> = None;
        let mut stalls = 0;

        for iter in 1..=config.max_iterations {
            iterations = iter;
            let Some(jac) = joint_jacobian(problem, &x, &base, config.fd_step, ledger) else {
                status = SqpStatus::NonFinite;
                break;
            };
            if let Some((s, gl_old, lambda_c)) = pending.take() {
                let y = lagrangian_gradient(&jac, &lambda_c) - gl_old;
                b_mat = bfgs_update(&b_mat, &s, &y);
            }

            let qp = build_qp(&x, &b_mat, &jac, &base, problem);
            let Some(outcome) = solve_step_qp(&qp, n, m_c) else {
                status = SqpStatus::QpInfeasible;
                break;
            };
            kkt_residual = scaled_stationarity(&qp, &outcome.d, &outcome.multipliers);

            let lambda_max = if m_c > 0 {
                outcome.multipliers.rows(0, m_c).amax()
            } else {
                0.0
            };
            mu = lambda_max.max(0.5 * (mu + lambda_max));

            let step_norm = outcome.d.amax();
            if outcome.used_elastic && step_norm <= config.tol_x {
                // The linearized violation cannot be reduced and the point
                // cannot move: no feasible region is reachable from here.
                status = SqpStatus::QpInfeasible;
                break;
            }
            let feasible =
                base.report(epsilon).max_violation <= config.feasibility_slack;
            if step_norm <= config.tol_x {
                status = if feasible && kkt_residual <= config.tol_fun {
                    SqpStatus::Converged
                } else {
                    SqpStatus::MaxIter
                };
                break;
            }

            let slope = (jac.df.dot(&outcome.d)
                - mu * base.violation_sum(epsilon, config.tol_con))
            .min(0.0);
            let merit_old = base.merit(mu, epsilon, config.tol_con);
            let search = merit_search(
                problem,
                &x,
                &base,
                outcome.d.as_slice(),
                mu,
                slope,
                config.tol_con,
                ledger,
            );
            let accepted = match search {
                Ok(out) => out,
                Err(()) => {
                    status = SqpStatus::LineSearchFailure;
                    break;
                }
            };

            let lambda_c = outcome.multipliers.rows(0, m_c).into_owned();
            let gl_old = lagrangian_gradient(&jac, &lambda_c);
            let s = DVector::from_iterator(
                n,
                accepted.x_new.iter().zip(&x).map(|(new, old)| new - old),
            );
            pending = Some((s, gl_old, lambda_c));

            let merit_change = (accepted.merit_new - merit_old).abs();
            x = accepted.x_new;
            base = accepted.sample;

            if merit_change <= config.tol_fun * (1.0 + merit_old.abs()) {
                let feasible =
                    base.report(epsilon).max_violation <= config.feasibility_slack;
                if feasible && kkt_residual <= config.tol_fun {
                    status = SqpStatus::Converged;
                    break;
                }
                stalls += 1;
                if stalls >= 3 {
                    // Merit no longer moves but the convergence gates fail;
                    // further iterations would only replay the same point.
                    break;
                }
            } else {
                stalls = 0;
            }
        }
    }

    SqpResult {
        f: base.f,
        report: base.report(epsilon),
        x,
        status,
        iterations,
        fes: ledger.total_fes() - fes_start,
        kkt_residual,
    }
}
