//! Dense convex quadratic programming by a dual active-set method.
//!
//! Minimizes `½dᵀHd + gᵀd` (H positive definite) subject to linear
//! equalities `A_eq·d = b_eq` and inequalities `A_in·d ≤ b_in`. Starting
//! from the unconstrained minimizer, the solver drives equality rows and
//! the most-violated inequality row into a working set one at a time,
//! dropping working rows whose multipliers would turn negative, until no
//! violated row remains. Each working-set change re-solves the dense KKT
//! system by full-pivot LU with one iterative-refinement pass.
//!
//! Rows are normalized to unit length internally; reported multipliers are
//! rescaled back to the caller's row scaling.

use nalgebra::{DMatrix, DVector};

/// Inputs of one QP. Row `i` of `a_in`/`a_eq` is one constraint gradient.
#[derive(Clone, Debug)]
pub struct QpSubproblem {
    pub h: DMatrix<f64>,
    pub g: DVector<f64>,
    pub a_in: DMatrix<f64>,
    pub b_in: DVector<f64>,
    pub a_eq: DMatrix<f64>,
    pub b_eq: DVector<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpStatus {
    Optimal,
    /// The linear constraints admit no common point.
    Infeasible,
    /// Cycling guard tripped before optimality; treat like a failed solve.
    IterationLimit,
}

#[derive(Clone, Debug)]
pub struct QpSolution {
    pub d: DVector<f64>,
    /// One multiplier per equality row, sign-free.
    pub eq_multipliers: DVector<f64>,
    /// One multiplier per inequality row, non-negative, zero when inactive.
    pub in_multipliers: DVector<f64>,
    pub status: QpStatus,
    /// Worst of the four KKT measures (stationarity, primal feasibility,
    /// multiplier sign, complementary slackness) on the normalized rows.
    pub kkt_residual: f64,
}

/// A row `a·d (≤ or =) b`, normalized so ‖a‖₂ = 1.
struct Row {
    a: DVector<f64>,
    b: f64,
    /// Original ‖a‖₂, used to rescale multipliers for the caller.
    scale: f64,
    is_eq: bool,
    orig: usize,
}

const FEAS_TOL: f64 = 1e-11;
const DEP_TOL: f64 = 1e-11;
const BLOCK_TOL: f64 = 1e-14;

pub fn solve_qp(qp: &QpSubproblem) -> QpSolution {
    Solver::new(qp).run(qp)
}

struct Solver {
    rows: Vec<Row>,
    /// Indices into `rows` currently held active.
    working: Vec<usize>,
    /// Multipliers aligned with `working`.
    lambda: Vec<f64>,
    d: DVector<f64>,
    n: usize,
    budget: usize,
    hit_limit: bool,
}

enum Drive {
    Done,
    Infeasible,
}

impl Solver {
    fn new(qp: &QpSubproblem) -> Self {
        let n = qp.g.len();
        let mut rows = Vec::with_capacity(qp.a_eq.nrows() + qp.a_in.nrows());
        for i in 0..qp.a_eq.nrows() {
            rows.push(Row::build(qp.a_eq.row(i).transpose(), qp.b_eq[i], true, i));
        }
        for i in 0..qp.a_in.nrows() {
            rows.push(Row::build(qp.a_in.row(i).transpose(), qp.b_in[i], false, i));
        }
        let budget = 50 * (rows.len() + 2);
        Self {
            rows,
            working: Vec::new(),
            lambda: Vec::new(),
            d: DVector::zeros(n),
            n,
            budget,
            hit_limit: false,
        }
    }

    fn run(mut self, qp: &QpSubproblem) -> QpSolution {
        // Degenerate rows (zero gradient) cannot be driven; they are either
        // vacuous or contradictions.
        for row in &self.rows {
            if row.scale == 0.0 {
                let broken = if row.is_eq {
                    row.b.abs() > FEAS_TOL
                } else {
                    row.b < -FEAS_TOL
                };
                if broken {
                    return self.finish(qp, QpStatus::Infeasible);
                }
            }
        }

        // Unconstrained minimizer.
        let neg_g = -&qp.g;
        match solve_refined(&qp.h, &neg_g) {
            Some(d) => self.d = d,
            None => return self.finish(qp, QpStatus::Infeasible),
        }

        // Equality rows are always held active (or proven redundant).
        for p in 0..self.rows.len() {
            if self.rows[p].is_eq && self.rows[p].scale > 0.0 {
                match self.drive(&qp.h, p) {
                    Ok(Drive::Done) => {}
                    Ok(Drive::Infeasible) => return self.finish(qp, QpStatus::Infeasible),
                    Err(()) => return self.finish(qp, QpStatus::IterationLimit),
                }
            }
        }

        // Add the most violated inequality until none remain.
        loop {
            let mut worst = FEAS_TOL;
            let mut target = None;
            for p in 0..self.rows.len() {
                let row = &self.rows[p];
                if row.is_eq || row.scale == 0.0 || self.working.contains(&p) {
                    continue;
                }
                let violation = row.a.dot(&self.d) - row.b;
                if violation > worst {
                    worst = violation;
                    target = Some(p);
                }
            }
            let Some(p) = target else {
                return self.finish(qp, QpStatus::Optimal);
            };
            match self.drive(&qp.h, p) {
                Ok(Drive::Done) => {}
                Ok(Drive::Infeasible) => return self.finish(qp, QpStatus::Infeasible),
                Err(()) => return self.finish(qp, QpStatus::IterationLimit),
            }
        }
    }

    /// Move row `p` into the working set (or prove it redundant or the
    /// problem infeasible), taking partial dual steps that drop blocking
    /// rows on the way. `Err(())` means the cycling budget ran out.
    fn drive(&mut self, h: &DMatrix<f64>, p: usize) -> Result<Drive, ()> {
        let mut lambda_p = 0.0;
        loop {
            if self.budget == 0 {
                self.hit_limit = true;
                return Err(());
            }
            self.budget -= 1;

            let rho = self.rows[p].a.dot(&self.d) - self.rows[p].b;
            let satisfied = if self.rows[p].is_eq {
                rho.abs() <= FEAS_TOL
            } else {
                rho <= FEAS_TOL
            };

            // Primal/dual directions for increasing this row's multiplier:
            // H·z + A_Wᵀ·r = a_p with A_W·z = 0.
            let Some((z, r)) = self.kkt_directions(h, p) else {
                return Ok(Drive::Infeasible);
            };
            let zhz = self.rows[p].a.dot(&z);

            if zhz > DEP_TOL {
                let s_full = rho / zhz;
                let (s, blocker) = self.blocking_step(s_full, &r);
                // d moves along −z; working multipliers along −r.
                self.d.axpy(-s, &z, 1.0);
                for (slot, l) in self.lambda.iter_mut().enumerate() {
                    *l -= s * r[slot];
                    if !self.rows[self.working[slot]].is_eq {
                        *l = l.max(0.0);
                    }
                }
                lambda_p += s;
                match blocker {
                    Some(slot) => self.drop_row(slot),
                    None => {
                        self.working.push(p);
                        self.lambda.push(lambda_p);
                        return Ok(Drive::Done);
                    }
                }
            } else {
                // a_p depends linearly on the working rows: the primal
                // point cannot move toward this row.
                if satisfied {
                    return Ok(Drive::Done);
                }
                let sigma = rho.signum();
                let mut step: Option<(f64, usize)> = None;
                for (slot, &i) in self.working.iter().enumerate() {
                    if self.rows[i].is_eq || sigma * r[slot] <= BLOCK_TOL {
                        continue;
                    }
                    let cand = self.lambda[slot] / r[slot];
                    if step.is_none_or(|(best, _)| cand.abs() < best.abs()) {
                        step = Some((cand, slot));
                    }
                }
                let Some((s, slot)) = step else {
                    return Ok(Drive::Infeasible);
                };
                for (k, l) in self.lambda.iter_mut().enumerate() {
                    *l -= s * r[k];
                    if !self.rows[self.working[k]].is_eq {
                        *l = l.max(0.0);
                    }
                }
                lambda_p += s;
                self.drop_row(slot);
            }
        }
    }

    /// Largest admissible multiple of the drive direction: the full step
    /// unless a working inequality multiplier reaches zero first.
    fn blocking_step(&self, s_full: f64, r: &DVector<f64>) -> (f64, Option<usize>) {
        let mut s = s_full;
        let mut blocker = None;
        for (slot, &i) in self.working.iter().enumerate() {
            if self.rows[i].is_eq {
                continue;
            }
            let ri = r[slot];
            let moves_down = (s_full > 0.0 && ri > BLOCK_TOL) || (s_full < 0.0 && ri < -BLOCK_TOL);
            if !moves_down {
                continue;
            }
            let cand = self.lambda[slot] / ri;
            if cand.abs() < s.abs() {
                s = cand;
                blocker = Some(slot);
            }
        }
        (s, blocker)
    }

    fn drop_row(&mut self, slot: usize) {
        self.working.swap_remove(slot);
        self.lambda.swap_remove(slot);
    }

    /// Solve the working-set KKT system for the drive directions of row `p`.
    fn kkt_directions(&self, h: &DMatrix<f64>, p: usize) -> Option<(DVector<f64>, DVector<f64>)> {
        let k = self.working.len();
        let kkt = self.kkt_matrix(h);
        let mut rhs = DVector::zeros(self.n + k);
        rhs.rows_mut(0, self.n).copy_from(&self.rows[p].a);
        let sol = solve_refined(&kkt, &rhs)?;
        Some((
            sol.rows(0, self.n).into_owned(),
            sol.rows(self.n, k).into_owned(),
        ))
    }

    fn kkt_matrix(&self, h: &DMatrix<f64>) -> DMatrix<f64> {
        let k = self.working.len();
        let mut kkt = DMatrix::zeros(self.n + k, self.n + k);
        kkt.view_mut((0, 0), (self.n, self.n)).copy_from(h);
        for (slot, &i) in self.working.iter().enumerate() {
            for d in 0..self.n {
                kkt[(d, self.n + slot)] = self.rows[i].a[d];
                kkt[(self.n + slot, d)] = self.rows[i].a[d];
            }
        }
        kkt
    }

    /// Re-solve the final working-set system directly (discarding drift from
    /// the incremental updates), rescale multipliers, and measure residuals.
    fn finish(mut self, qp: &QpSubproblem, status: QpStatus) -> QpSolution {
        let status = if self.hit_limit && status == QpStatus::Optimal {
            QpStatus::IterationLimit
        } else {
            status
        };
        if status == QpStatus::Optimal && !self.working.is_empty() {
            let k = self.working.len();
            let kkt = self.kkt_matrix(&qp.h);
            let mut rhs = DVector::zeros(self.n + k);
            for d in 0..self.n {
                rhs[d] = -qp.g[d];
            }
            for (slot, &i) in self.working.iter().enumerate() {
                rhs[self.n + slot] = self.rows[i].b;
            }
            if let Some(sol) = solve_refined(&kkt, &rhs) {
                self.d = sol.rows(0, self.n).into_owned();
                for slot in 0..k {
                    let l = sol[self.n + slot];
                    self.lambda[slot] = if self.rows[self.working[slot]].is_eq {
                        l
                    } else {
                        l.max(0.0)
                    };
                }
            }
        } else if status == QpStatus::Optimal {
            let neg_g = -&qp.g;
            if let Some(d) = solve_refined(&qp.h, &neg_g) {
                self.d = d;
            }
        }

        let mut eq_multipliers = DVector::zeros(qp.a_eq.nrows());
        let mut in_multipliers = DVector::zeros(qp.a_in.nrows());
        for (slot, &i) in self.working.iter().enumerate() {
            let row = &self.rows[i];
            let rescaled = self.lambda[slot] / row.scale;
            if row.is_eq {
                eq_multipliers[row.orig] = rescaled;
            } else {
                in_multipliers[row.orig] = rescaled;
            }
        }

        let kkt_residual = self.kkt_measures(qp);
        QpSolution {
            d: self.d,
            eq_multipliers,
            in_multipliers,
            status,
            kkt_residual,
        }
    }

    /// Worst of stationarity, primal feasibility, multiplier negativity,
    /// and complementary slackness on the normalized rows.
    fn kkt_measures(&self, qp: &QpSubproblem) -> f64 {
        let mut stationarity = &qp.h * &self.d + &qp.g;
        let mut primal: f64 = 0.0;
        let mut negativity: f64 = 0.0;
        let mut slackness: f64 = 0.0;
        for (slot, &i) in self.working.iter().enumerate() {
            let row = &self.rows[i];
            stationarity.axpy(self.lambda[slot], &row.a, 1.0);
            if !row.is_eq {
                negativity = negativity.max(-self.lambda[slot]);
            }
        }
        for row in &self.rows {
            if row.scale == 0.0 {
                continue;
            }
            let resid = row.a.dot(&self.d) - row.b;
            if row.is_eq {
                primal = primal.max(resid.abs());
            } else {
                primal = primal.max(resid.max(0.0));
            }
        }
        for (slot, &i) in self.working.iter().enumerate() {
            let row = &self.rows[i];
            if !row.is_eq {
                let resid = row.a.dot(&self.d) - row.b;
                slackness = slackness.max((self.lambda[slot] * resid).abs());
            }
        }
        stationarity
            .amax()
            .max(primal)
            .max(negativity)
            .max(slackness)
    }
}

impl Row {
    fn build(a: DVector<f64>, b: f64, is_eq: bool, orig: usize) -> Self {
        let scale = a.norm();
        if scale > 0.0 {
            Self {
                a: a / scale,
                b: b / scale,
                scale,
                is_eq,
                orig,
            }
        } else {
            Self {
                a,
                b,
                scale: 0.0,
                is_eq,
                orig,
            }
        }
    }
}

/// Full-pivot LU solve with one iterative-refinement pass; `None` when the
/// system is singular or the refined residual stays large (treated as a
/// rank-deficient working set by the caller).
fn solve_refined(m: &DMatrix<f64>, rhs: &DVector<f64>) -> Option<DVector<f64>> {
    let lu = m.clone().full_piv_lu();
    let mut sol = lu.solve(rhs)?;
    let residual = rhs - m * &sol;
    if let Some(correction) = lu.solve(&residual) {
        sol += correction;
    }
    let residual = (rhs - m * &sol).amax();
    if residual > 1e-8 * rhs.amax().max(1.0) {
        return None;
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qp(
        h: DMatrix<f64>,
        g: Vec<f64>,
        ineq: Vec<(Vec<f64>, f64)>,
        eq: Vec<(Vec<f64>, f64)>,
    ) -> QpSubproblem {
        let n = g.len();
        let a_in = DMatrix::from_fn(ineq.len(), n, |i, j| ineq[i].0[j]);
        let b_in = DVector::from_iterator(ineq.len(), ineq.iter().map(|r| r.1));
        let a_eq = DMatrix::from_fn(eq.len(), n, |i, j| eq[i].0[j]);
        let b_eq = DVector::from_iterator(eq.len(), eq.iter().map(|r| r.1));
        QpSubproblem {
            h,
            g: DVector::from_vec(g),
            a_in,
            b_in,
            a_eq,
            b_eq,
        }
    }

    fn identity(n: usize) -> DMatrix<f64> {
        DMatrix::identity(n, n)
    }

    #[test]
    fn unconstrained_newton_step() {
        let sol = solve_qp(&qp(identity(2), vec![-3.0, 4.0], vec![], vec![]));
        assert_eq!(sol.status, QpStatus::Optimal);
        assert!((sol.d[0] - 3.0).abs() < 1e-12);
        assert!((sol.d[1] + 4.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_equality_splits_evenly() {
        // minimize dᵀd subject to d1 + d2 = 1
        let sol = solve_qp(&qp(
            2.0 * identity(2),
            vec![0.0, 0.0],
            vec![],
            vec![(vec![1.0, 1.0], 1.0)],
        ));
        assert_eq!(sol.status, QpStatus::Optimal);
        assert!((sol.d[0] - 0.5).abs() < 1e-10);
        assert!((sol.d[1] - 0.5).abs() < 1e-10);
        // 2d + λa = 0 at d = (½, ½) gives λ = −1.
        assert!((sol.eq_multipliers[0] + 1.0).abs() < 1e-10);
    }

    #[test]
    fn active_inequality_with_hand_solved_multiplier() {
        let sol = solve_qp(&qp(
            identity(2),
            vec![-2.0, -2.0],
            vec![(vec![1.0, 1.0], 1.0)],
            vec![],
        ));
        assert_eq!(sol.status, QpStatus::Optimal);
        assert!((sol.d[0] - 0.5).abs() < 1e-10);
        assert!((sol.d[1] - 0.5).abs() < 1e-10);
        assert!((sol.in_multipliers[0] - 1.5).abs() < 1e-10);
        assert!(sol.kkt_residual <= 1e-10);
    }

    #[test]
    fn slack_inequality_keeps_zero_multiplier() {
        let sol = solve_qp(&qp(
            identity(2),
            vec![-2.0, -2.0],
            vec![(vec![1.0, 1.0], 10.0)],
            vec![],
        ));
        assert_eq!(sol.status, QpStatus::Optimal);
        assert!((sol.d[0] - 2.0).abs() < 1e-12);
        assert!((sol.d[1] - 2.0).abs() < 1e-12);
        assert_eq!(sol.in_multipliers[0], 0.0);
    }

    #[test]
    fn box_rows_clamp_the_step() {
        // minimize ½d² − 10d subject to d ≤ 7, −d ≤ 3
        let sol = solve_qp(&qp(
            identity(1),
            vec![-10.0],
            vec![(vec![1.0], 7.0), (vec![-1.0], 3.0)],
            vec![],
        ));
        assert_eq!(sol.status, QpStatus::Optimal);
        assert!((sol.d[0] - 7.0).abs() < 1e-10);
        assert!((sol.in_multipliers[0] - 3.0).abs() < 1e-10);
        assert_eq!(sol.in_multipliers[1], 0.0);
    }

    #[test]
    fn contradictory_halfspaces_are_infeasible() {
        // d ≤ −1 and d ≥ 1
        let sol = solve_qp(&qp(
            identity(1),
            vec![0.0],
            vec![(vec![1.0], -1.0), (vec![-1.0], -1.0)],
            vec![],
        ));
        assert_eq!(sol.status, QpStatus::Infeasible);
    }

    #[test]
    fn contradictory_equalities_are_infeasible() {
        let sol = solve_qp(&qp(
            identity(2),
            vec![0.0, 0.0],
            vec![],
            vec![(vec![1.0, 1.0], 1.0), (vec![1.0, 1.0], 2.0)],
        ));
        assert_eq!(sol.status, QpStatus::Infeasible);
    }

    #[test]
    fn zero_rows_are_vacuous_or_contradictions() {
        let sol = solve_qp(&qp(
            identity(1),
            vec![1.0],
            vec![(vec![0.0], 1.0)],
            vec![],
        ));
        assert_eq!(sol.status, QpStatus::Optimal);
        assert!((sol.d[0] + 1.0).abs() < 1e-12);

        let sol = solve_qp(&qp(
            identity(1),
            vec![1.0],
            vec![(vec![0.0], -1.0)],
            vec![],
        ));
        assert_eq!(sol.status, QpStatus::Infeasible);
    }

    #[test]
    fn duplicate_rows_still_satisfy_kkt() {
        let sol = solve_qp(&qp(
            identity(2),
            vec![-2.0, -2.0],
            vec![(vec![1.0, 1.0], 1.0), (vec![1.0, 1.0], 1.0)],
            vec![],
        ));
        assert_eq!(sol.status, QpStatus::Optimal);
        assert!((sol.d[0] - 0.5).abs() < 1e-9);
        assert!(sol.kkt_residual <= 1e-10);
        // Split between duplicates is arbitrary; the total is determined.
        let total: f64 = sol.in_multipliers.iter().sum();
        assert!((total - 1.5).abs() < 1e-9);
    }

    #[test]
    fn mixed_equality_and_binding_inequality() {
        // minimize ‖d‖² subject to d1 + d2 = 1 and d1 ≤ 0.2
        let sol = solve_qp(&qp(
            2.0 * identity(2),
            vec![0.0, 0.0],
            vec![(vec![1.0, 0.0], 0.2)],
            vec![(vec![1.0, 1.0], 1.0)],
        ));
        assert_eq!(sol.status, QpStatus::Optimal);
        assert!((sol.d[0] - 0.2).abs() < 1e-10);
        assert!((sol.d[1] - 0.8).abs() < 1e-10);
        assert!((sol.eq_multipliers[0] + 1.6).abs() < 1e-9);
        assert!((sol.in_multipliers[0] - 1.2).abs() < 1e-9);
    }

    /// Reference answer by enumerating candidate active sets: for each
    /// subset of inequality rows, solve the equality-constrained system and
    /// keep solutions that are primal feasible with non-negative
    /// multipliers. A strictly convex QP has exactly one optimum, so any
    /// surviving candidate is the answer.
    fn brute_force(qp: &QpSubproblem) -> Option<DVector<f64>> {
        let n = qp.g.len();
        let m = qp.a_in.nrows();
        let me = qp.a_eq.nrows();
        let mut best: Option<(f64, DVector<f64>)> = None;
        for mask in 0..(1u32 << m) {
            let active: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
            let k = me + active.len();
            if k > n {
                continue;
            }
            let mut kkt = DMatrix::zeros(n + k, n + k);
            kkt.view_mut((0, 0), (n, n)).copy_from(&qp.h);
            let mut rhs = DVector::zeros(n + k);
            for d in 0..n {
                rhs[d] = -qp.g[d];
            }
            for (slot, i) in (0..me).enumerate() {
                for d in 0..n {
                    kkt[(d, n + slot)] = qp.a_eq[(i, d)];
                    kkt[(n + slot, d)] = qp.a_eq[(i, d)];
                }
                rhs[n + slot] = qp.b_eq[i];
            }
            for (slot, &i) in active.iter().enumerate() {
                let slot = me + slot;
                for d in 0..n {
                    kkt[(d, n + slot)] = qp.a_in[(i, d)];
                    kkt[(n + slot, d)] = qp.a_in[(i, d)];
                }
                rhs[n + slot] = qp.b_in[i];
            }
            let Some(sol) = solve_refined(&kkt, &rhs) else {
                continue;
            };
            let d = sol.rows(0, n).into_owned();
            let feasible_eq = (0..me).all(|i| {
                (qp.a_eq.row(i).transpose().dot(&d) - qp.b_eq[i]).abs() <= 1e-9
            });
            let feasible_in = (0..m).all(|i| {
                qp.a_in.row(i).transpose().dot(&d) - qp.b_in[i] <= 1e-9
            });
            let multipliers_ok = active
                .iter()
                .enumerate()
                .all(|(slot, _)| sol[n + me + slot] >= -1e-9);
            if feasible_eq && feasible_in && multipliers_ok {
                let value = 0.5 * d.dot(&(&qp.h * &d)) + qp.g.dot(&d);
                if best.as_ref().is_none_or(|(v, _)| value < *v) {
                    best = Some((value, d));
                }
            }
        }
        best.map(|(_, d)| d)
    }

    /// Full KKT audit on the caller-visible (unnormalized) data.
    fn kkt_measures_original(qp: &QpSubproblem, sol: &QpSolution) -> f64 {
        let mut stationarity = &qp.h * &sol.d + &qp.g;
        for i in 0..qp.a_eq.nrows() {
            stationarity.axpy(sol.eq_multipliers[i], &qp.a_eq.row(i).transpose(), 1.0);
        }
        for i in 0..qp.a_in.nrows() {
            stationarity.axpy(sol.in_multipliers[i], &qp.a_in.row(i).transpose(), 1.0);
        }
        let mut worst = stationarity.amax();
        for i in 0..qp.a_eq.nrows() {
            worst = worst.max((qp.a_eq.row(i).transpose().dot(&sol.d) - qp.b_eq[i]).abs());
        }
        for i in 0..qp.a_in.nrows() {
            let resid = qp.a_in.row(i).transpose().dot(&sol.d) - qp.b_in[i];
            worst = worst.max(resid.max(0.0));
            worst = worst.max(-sol.in_multipliers[i]);
            worst = worst.max((sol.in_multipliers[i] * resid).abs());
        }
        worst
    }

    #[test]
    fn random_qps_match_brute_force_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        let mut feasible_count = 0;
        let mut infeasible_count = 0;
        for case in 0..1000 {
            let n = rng.random_range(1..=4);
            let m = rng.random_range(0..=4);
            let mat = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
            let h = &mat * mat.transpose() + 0.3 * identity(n);
            let g: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
            // Most cases keep d = 0 strictly feasible; the tail allows
            // infeasible instances to exercise that path.
            let ineq: Vec<(Vec<f64>, f64)> = (0..m)
                .map(|_| {
                    let a: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
                    let b = if case % 5 == 4 {
                        rng.random_range(-1.0..1.0)
                    } else {
                        rng.random_range(0.05..1.0)
                    };
                    (a, b)
                })
                .collect();
            let problem = qp(h, g, ineq, vec![]);
            let sol = solve_qp(&problem);
            match brute_force(&problem) {
                Some(reference) => {
                    assert_eq!(sol.status, QpStatus::Optimal, "case {case}");
                    let gap = (&sol.d - &reference).amax();
                    assert!(gap <= 1e-8, "case {case}: gap {gap:e}");
                    let residual = kkt_measures_original(&problem, &sol);
                    assert!(residual <= 1e-10, "case {case}: residual {residual:e}");
                    feasible_count += 1;
                }
                None => {
                    assert_eq!(sol.status, QpStatus::Infeasible, "case {case}");
                    infeasible_count += 1;
                }
            }
        }
        assert!(feasible_count >= 900, "got {feasible_count}");
        assert!(infeasible_count >= 10, "got {infeasible_count}");
    }
}
