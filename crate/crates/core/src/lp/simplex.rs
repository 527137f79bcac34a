//! Dense-tableau two-phase primal simplex.
//!
//! Pricing picks the most negative reduced cost. After a run of degenerate
//! pivots the solver switches to Bland's lowest-index rule until the
//! objective moves again, which rules out cycling. Pure Bland pricing is
//! available but needs far more pivots on the larger models.
//!
//! Rows are stored row-major over the full column range (structural columns,
//! then one slack per `>=` row, then one artificial per row that needs it).
//! Only rows with a nonzero entry in the pivot column are touched by a pivot,
//! and only at the nonzero positions of the pivot row.

use alloc::vec;
use alloc::vec::Vec;

use super::model::{LinearProgram, RowKind};
use crate::error::{Error, Result};
use crate::rational::to_f64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pricing {
    /// Lowest-index entering column throughout.
    Bland,
    /// Most negative reduced cost, falling back to Bland's rule after
    /// `degenerate_limit` consecutive degenerate pivots.
    Dantzig { degenerate_limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    /// Reduced-cost, pivot and feasibility tolerance.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub pricing: Pricing,
    /// Pivots between rebuilds of the tableau from the original columns.
    pub refactor_interval: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            max_iterations: 2_000_000,
            pricing: Pricing::Dantzig { degenerate_limit: 50 },
            refactor_interval: 100,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
    /// The monitor callback asked the solver to stop (e.g. a time limit).
    Interrupted,
}

/// A basic variable, in the orientation of the original rows:
/// `a·x - s = rhs` for a slack and `a·x + t = rhs` for an artificial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasicVar {
    Structural(usize),
    Slack(usize),
    Artificial(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<f64>,
    pub objective: f64,
    /// One dual value per row; nonnegative for `>=` rows at optimality.
    pub duals: Vec<f64>,
    /// Basic variable of every row.
    pub basis: Vec<BasicVar>,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColKind {
    Structural(usize),
    Slack(usize),
    Artificial(usize),
}

struct Tableau {
    rows: usize,
    width: usize,
    /// `rows × (width + 1)`; the last entry of each row is the right-hand side.
    data: Vec<f64>,
    /// Phase-one and phase-two reduced costs; last entry is minus the objective.
    phase1: Vec<f64>,
    phase2: Vec<f64>,
    basis: Vec<usize>,
    kinds: Vec<ColKind>,
    scratch: Vec<usize>,
    /// Original (sign-adjusted) columns and right-hand side, for rebuilding.
    columns: Vec<Vec<(usize, f64)>>,
    rhs: Vec<f64>,
    cost1: Vec<f64>,
    cost2: Vec<f64>,
}

/// Entries smaller than this are treated as zero after a pivot.
const DROP_TOLERANCE: f64 = 1e-12;

impl Tableau {
    fn stride(&self) -> usize {
        self.width + 1
    }

    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.stride() + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.data[r * self.stride() + self.width]
    }

    fn pivot(&mut self, pr: usize, pc: usize) -> Result<()> {
        let stride = self.stride();
        let pivot = self.data[pr * stride + pc];
        if !pivot.is_finite() || pivot == 0.0 {
            return Err(Error::SingularBasis);
        }
        let inv = 1.0 / pivot;
        let prow_start = pr * stride;
        self.scratch.clear();
        for c in 0..stride {
            let v = &mut self.data[prow_start + c];
            if *v != 0.0 {
                *v *= inv;
                self.scratch.push(c);
            }
        }
        self.data[prow_start + pc] = 1.0;
        let (before, rest) = self.data.split_at_mut(prow_start);
        let (prow, after) = rest.split_at_mut(stride);
        let nz = &self.scratch;
        let eliminate = |row: &mut [f64]| {
            let factor = row[pc];
            if factor != 0.0 {
                for &c in nz {
                    let v = row[c] - factor * prow[c];
                    row[c] = if v.abs() < DROP_TOLERANCE { 0.0 } else { v };
                }
                row[pc] = 0.0;
            }
        };
        for row in before.chunks_exact_mut(stride) {
            eliminate(row);
        }
        for row in after.chunks_exact_mut(stride) {
            eliminate(row);
        }
        eliminate(&mut self.phase1);
        eliminate(&mut self.phase2);
        self.basis[pr] = pc;
        Ok(())
    }

    /// Rebuilds every row and both cost rows from the original columns and
    /// an explicit inverse of the current basis.
    fn refactor(&mut self) -> Result<()> {
        let m = self.rows;
        let stride = self.stride();
        let mut b = vec![0.0f64; m * m];
        for (k, &c) in self.basis.iter().enumerate() {
            for &(r, a) in &self.columns[c] {
                b[r * m + k] = a;
            }
        }
        let inv = invert(&mut b, m)?;
        self.data.iter_mut().for_each(|v| *v = 0.0);
        for (j, col) in self.columns.iter().enumerate() {
            for &(k, a) in col {
                for r in 0..m {
                    self.data[r * stride + j] += inv[r * m + k] * a;
                }
            }
        }
        for r in 0..m {
            let row = &mut self.data[r * stride..(r + 1) * stride];
            for v in row.iter_mut() {
                if v.abs() < DROP_TOLERANCE {
                    *v = 0.0;
                }
            }
            row[self.width] = (0..m).map(|k| inv[r * m + k] * self.rhs[k]).sum();
        }
        for (r, &c) in self.basis.iter().enumerate() {
            for rr in 0..m {
                self.data[rr * stride + c] = if rr == r { 1.0 } else { 0.0 };
            }
        }
        let rebuild = |costs: &[f64], out: &mut Vec<f64>, data: &[f64], basis: &[usize], columns: &[Vec<(usize, f64)>]| {
            let cb: Vec<f64> = basis.iter().map(|&c| costs[c]).collect();
            let y: Vec<f64> = (0..m).map(|k| (0..m).map(|r| cb[r] * inv[r * m + k]).sum()).collect();
            for (j, col) in columns.iter().enumerate() {
                let v = costs[j] - col.iter().map(|&(k, a)| y[k] * a).sum::<f64>();
                out[j] = if v.abs() < DROP_TOLERANCE { 0.0 } else { v };
            }
            for &c in basis {
                out[c] = 0.0;
            }
            out[stride - 1] = -(0..m).map(|r| cb[r] * data[r * stride + stride - 1]).sum::<f64>();
        };
        rebuild(&self.cost1, &mut self.phase1, &self.data, &self.basis, &self.columns);
        rebuild(&self.cost2, &mut self.phase2, &self.data, &self.basis, &self.columns);
        Ok(())
    }

    /// No nonbasic column usable in phase two has a negative reduced cost.
    fn dual_feasible(&self, tol: f64) -> bool {
        (0..self.width).all(|c| self.phase2[c] >= -tol || matches!(self.kinds[c], ColKind::Artificial(_)))
    }

    fn eligible(&self, costs: &[f64], c: usize, tol: f64) -> bool {
        costs[c] < -tol && !matches!(self.kinds[c], ColKind::Artificial(_))
    }

    fn entering(&self, costs: &[f64], bland: bool, tol: f64) -> Option<usize> {
        if bland {
            return (0..self.width).find(|&c| self.eligible(costs, c, tol));
        }
        let mut best: Option<usize> = None;
        for c in 0..self.width {
            if self.eligible(costs, c, tol) && best.is_none_or(|b| costs[c] < costs[b]) {
                best = Some(c);
            }
        }
        best
    }

    /// Minimum ratio. Ties go to the row whose basic variable has the lowest
    /// index under Bland's rule and to the largest pivot element otherwise.
    fn leaving(&self, pc: usize, tol: f64, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for r in 0..self.rows {
            let a = self.at(r, pc);
            if a <= tol {
                continue;
            }
            let ratio = self.rhs(r).max(0.0) / a;
            best = match best {
                None => Some((r, ratio)),
                Some((br, bv)) => {
                    let scale = 1.0f64.max(bv.abs());
                    let tie_wins = if bland { self.basis[r] < self.basis[br] } else { a > self.at(br, pc) };
                    if ratio < bv - tol * scale || (ratio <= bv + tol * scale && tie_wins) {
                        Some((r, ratio))
                    } else {
                        Some((br, bv))
                    }
                }
            };
        }
        best.map(|(r, _)| r)
    }
}

/// Tableau columns of `start`, if every entry exists and none repeats.
fn warm_basis(t: &Tableau, start: &[BasicVar], slack_col: &[Option<usize>]) -> Option<Vec<usize>> {
    if start.len() != t.rows {
        return None;
    }
    let mut used = vec![false; t.width];
    let mut out = Vec::with_capacity(start.len());
    for v in start {
        let c = match *v {
            BasicVar::Structural(j) => matches!(t.kinds.get(j), Some(ColKind::Structural(_))).then_some(j)?,
            BasicVar::Slack(r) => (*slack_col.get(r)?)?,
            BasicVar::Artificial(r) => t.kinds.iter().position(|k| *k == ColKind::Artificial(r))?,
        };
        if core::mem::replace(&mut used[c], true) {
            return None;
        }
        out.push(c);
    }
    Some(out)
}

/// Gauss-Jordan inverse with partial pivoting of the row-major `m × m`
/// matrix `a` (destroyed).
fn invert(a: &mut [f64], m: usize) -> Result<Vec<f64>> {
    let mut inv = vec![0.0f64; m * m];
    for i in 0..m {
        inv[i * m + i] = 1.0;
    }
    for col in 0..m {
        let p = (col..m)
            .max_by(|&x, &y| a[x * m + col].abs().total_cmp(&a[y * m + col].abs()))
            .expect("nonempty");
        let pivot = a[p * m + col];
        if pivot.abs() < 1e-12 {
            return Err(Error::SingularBasis);
        }
        if p != col {
            for k in 0..m {
                a.swap(p * m + k, col * m + k);
                inv.swap(p * m + k, col * m + k);
            }
        }
        let scale = 1.0 / pivot;
        for k in 0..m {
            a[col * m + k] *= scale;
            inv[col * m + k] *= scale;
        }
        for r in 0..m {
            if r == col {
                continue;
            }
            let factor = a[r * m + col];
            if factor == 0.0 {
                continue;
            }
            for k in 0..m {
                a[r * m + k] -= factor * a[col * m + k];
                inv[r * m + k] -= factor * inv[col * m + k];
            }
        }
    }
    Ok(inv)
}

enum DualEnd {
    Feasible,
    /// No pivot restores feasibility, or the tableau degraded numerically.
    Failed,
    Stopped(LpStatus),
}

/// Dual simplex on the phase-two costs: the most infeasible row leaves and
/// the entering column keeps every reduced cost nonnegative.
fn run_dual_phase(
    t: &mut Tableau,
    options: &SolverOptions,
    iterations: &mut usize,
    monitor: &mut dyn FnMut(usize) -> bool,
) -> Result<DualEnd> {
    let tol = options.tolerance;
    let mut since_refactor = 0usize;
    loop {
        if since_refactor >= options.refactor_interval.max(1) {
            t.refactor()?;
            since_refactor = 0;
            if !t.dual_feasible(tol) {
                return Ok(DualEnd::Failed);
            }
        }
        if *iterations >= options.max_iterations {
            return Ok(DualEnd::Stopped(LpStatus::IterationLimit));
        }
        if iterations.is_multiple_of(64) && !monitor(*iterations) {
            return Ok(DualEnd::Stopped(LpStatus::Interrupted));
        }
        let leaving = (0..t.rows)
            .filter(|&r| t.rhs(r) < -tol)
            .min_by(|&a, &b| t.rhs(a).total_cmp(&t.rhs(b)).then(a.cmp(&b)));
        let Some(pr) = leaving else {
            return Ok(DualEnd::Feasible);
        };
        let mut best: Option<(usize, f64)> = None;
        for c in 0..t.width {
            let a = t.at(pr, c);
            if a >= -tol || matches!(t.kinds[c], ColKind::Artificial(_)) {
                continue;
            }
            let ratio = t.phase2[c].max(0.0) / -a;
            if best.is_none_or(|(bc, bv)| ratio < bv || (ratio == bv && a < t.at(pr, bc))) {
                best = Some((c, ratio));
            }
        }
        let Some((pc, _)) = best else {
            return Ok(DualEnd::Failed);
        };
        t.pivot(pr, pc)?;
        *iterations += 1;
        since_refactor += 1;
    }
}

enum PhaseEnd {
    Optimal,
    Unbounded,
    Stopped(LpStatus),
}

fn run_phase(
    t: &mut Tableau,
    phase_one: bool,
    options: &SolverOptions,
    iterations: &mut usize,
    monitor: &mut dyn FnMut(usize) -> bool,
) -> Result<PhaseEnd> {
    let tol = options.tolerance;
    let mut degenerate_run = 0usize;
    let mut since_refactor = 0usize;
    loop {
        if since_refactor >= options.refactor_interval.max(1) {
            t.refactor()?;
            since_refactor = 0;
        }
        if *iterations >= options.max_iterations {
            return Ok(PhaseEnd::Stopped(LpStatus::IterationLimit));
        }
        if iterations.is_multiple_of(64) && !monitor(*iterations) {
            return Ok(PhaseEnd::Stopped(LpStatus::Interrupted));
        }
        let bland = match options.pricing {
            Pricing::Bland => true,
            Pricing::Dantzig { degenerate_limit } => degenerate_run >= degenerate_limit,
        };
        let costs = if phase_one { &t.phase1 } else { &t.phase2 };
        let Some(pc) = t.entering(costs, bland, tol) else {
            if since_refactor > 0 {
                t.refactor()?;
                since_refactor = 0;
                continue;
            }
            return Ok(PhaseEnd::Optimal);
        };
        let Some(pr) = t.leaving(pc, tol, bland) else {
            if since_refactor > 0 {
                t.refactor()?;
                since_refactor = 0;
                continue;
            }
            return Ok(PhaseEnd::Unbounded);
        };
        if t.rhs(pr) <= tol {
            degenerate_run += 1;
        } else {
            degenerate_run = 0;
        }
        t.pivot(pr, pc)?;
        *iterations += 1;
        since_refactor += 1;
    }
}

pub fn solve(lp: &LinearProgram, options: &SolverOptions) -> Result<LpSolution> {
    solve_with_monitor(lp, options, &mut |_| true)
}

/// Like [`solve`]; `monitor(iterations)` is polled periodically and stops
/// the solver with [`LpStatus::Interrupted`] when it returns `false`.
pub fn solve_with_monitor(
    lp: &LinearProgram,
    options: &SolverOptions,
    monitor: &mut dyn FnMut(usize) -> bool,
) -> Result<LpSolution> {
    solve_from(lp, options, None, monitor)
}

/// Like [`solve_with_monitor`], starting phase two from `start` when that
/// basis is nonsingular and primal feasible; otherwise starts cold.
pub fn solve_warm(
    lp: &LinearProgram,
    options: &SolverOptions,
    start: &[BasicVar],
    monitor: &mut dyn FnMut(usize) -> bool,
) -> Result<LpSolution> {
    solve_from(lp, options, Some(start), monitor)
}

fn solve_from(
    lp: &LinearProgram,
    options: &SolverOptions,
    start: Option<&[BasicVar]>,
    monitor: &mut dyn FnMut(usize) -> bool,
) -> Result<LpSolution> {
    let tol = options.tolerance;
    if tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let m = lp.row_count();
    let n = lp.column_count();
    let rhs: Vec<f64> = lp.rows.iter().map(|r| to_f64(&r.rhs)).collect();

    // Row orientation and the column that starts basic in each row.
    let mut kinds: Vec<ColKind> = (0..n).map(ColKind::Structural).collect();
    let mut negate = vec![false; m];
    let mut slack_col = vec![None; m];
    for (r, row) in lp.rows.iter().enumerate() {
        if row.kind == RowKind::AtLeast {
            slack_col[r] = Some(kinds.len());
            kinds.push(ColKind::Slack(r));
            negate[r] = rhs[r] <= 0.0;
        } else {
            negate[r] = rhs[r] < 0.0;
        }
    }
    let mut start_col = vec![0usize; m];
    for r in 0..m {
        match (lp.rows[r].kind, negate[r]) {
            (RowKind::AtLeast, true) => start_col[r] = slack_col[r].expect("slack"),
            _ => {
                start_col[r] = kinds.len();
                kinds.push(ColKind::Artificial(r));
            }
        }
    }
    let width = kinds.len();
    let stride = width + 1;
    let mut data = vec![0.0f64; m * stride];
    for (j, col) in lp.columns.iter().enumerate() {
        for (r, a) in col {
            let v = to_f64(a);
            data[r * stride + j] = if negate[*r] { -v } else { v };
        }
    }
    for r in 0..m {
        if let Some(s) = slack_col[r] {
            data[r * stride + s] = if negate[r] { 1.0 } else { -1.0 };
        }
        if let ColKind::Artificial(_) = kinds[start_col[r]] {
            data[r * stride + start_col[r]] = 1.0;
        }
        data[r * stride + width] = if negate[r] { -rhs[r] } else { rhs[r] };
    }
    let mut phase1 = vec![0.0f64; stride];
    let mut phase2 = vec![0.0f64; stride];
    for (j, c) in lp.objective.iter().enumerate() {
        phase2[j] = to_f64(c);
    }
    for r in 0..m {
        if let ColKind::Artificial(_) = kinds[start_col[r]] {
            for c in 0..stride {
                phase1[c] -= data[r * stride + c];
            }
            phase1[start_col[r]] = 0.0;
        }
    }
    let mut columns = vec![Vec::new(); width];
    for r in 0..m {
        for (c, col) in columns.iter_mut().enumerate() {
            let v = data[r * stride + c];
            if v != 0.0 {
                col.push((r, v));
            }
        }
    }
    let oriented_rhs = (0..m).map(|r| data[r * stride + width]).collect();
    let cost1 = kinds
        .iter()
        .map(|k| if matches!(k, ColKind::Artificial(_)) { 1.0 } else { 0.0 })
        .collect();
    let cost2 = phase2[..width].to_vec();
    let mut t = Tableau {
        rows: m,
        width,
        data,
        phase1,
        phase2,
        basis: start_col,
        kinds,
        scratch: Vec::with_capacity(stride),
        columns,
        rhs: oriented_rhs,
        cost1,
        cost2,
    };

    let mut iterations = 0usize;
    let mut status = None;

    // A warm basis is used if it is primal feasible, or dual feasible so
    // that dual simplex pivots can restore primal feasibility.
    let mut warm = false;
    if let Some(b) = start.and_then(|st| warm_basis(&t, st, &slack_col)) {
        let cold = core::mem::replace(&mut t.basis, b);
        if t.refactor().is_ok() {
            if (0..m).all(|r| t.rhs(r) >= -tol) {
                warm = true;
            } else if t.dual_feasible(tol) {
                match run_dual_phase(&mut t, options, &mut iterations, monitor)? {
                    DualEnd::Feasible => warm = true,
                    DualEnd::Stopped(st) => status = Some(st),
                    DualEnd::Failed => {}
                }
            }
        }
        if !warm && status.is_none() {
            t.basis = cold;
            t.refactor()?;
        }
    }

    // Phase one.
    if !warm && status.is_none() {
        match run_phase(&mut t, true, options, &mut iterations, monitor)? {
            PhaseEnd::Optimal => {}
            PhaseEnd::Unbounded => return Err(Error::SingularBasis),
            PhaseEnd::Stopped(st) => status = Some(st),
        }
        if status.is_none() && -t.phase1[width] > tol * 10.0 {
            status = Some(LpStatus::Infeasible);
        }
    }
    if status.is_none() {
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if !matches!(t.kinds[t.basis[r]], ColKind::Artificial(_)) {
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            for c in 0..width {
                if matches!(t.kinds[c], ColKind::Artificial(_)) {
                    continue;
                }
                let a = t.at(r, c).abs();
                if a > tol && best.is_none_or(|(_, b)| a > b) {
                    best = Some((c, a));
                }
            }
            if let Some((c, _)) = best {
                t.pivot(r, c)?;
                iterations += 1;
            }
        }
        // Phase two.
        status = Some(match run_phase(&mut t, false, options, &mut iterations, monitor)? {
            PhaseEnd::Optimal => LpStatus::Optimal,
            PhaseEnd::Unbounded => LpStatus::Unbounded,
            PhaseEnd::Stopped(st) => st,
        });
    }
    let status = status.expect("set above");

    let mut primal = vec![0.0f64; n];
    for r in 0..m {
        if let ColKind::Structural(j) = t.kinds[t.basis[r]] {
            primal[j] = t.rhs(r).max(0.0);
        }
    }
    if primal.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularBasis);
    }
    let objective = lp.objective.iter().zip(&primal).map(|(c, x)| to_f64(c) * x).sum();
    let initial: Vec<usize> = (0..m)
        .map(|r| match (lp.rows[r].kind, negate[r]) {
            (RowKind::AtLeast, true) => slack_col[r].expect("slack"),
            _ => t
                .kinds
                .iter()
                .position(|k| *k == ColKind::Artificial(r))
                .expect("artificial"),
        })
        .collect();
    let duals = (0..m)
        .map(|r| {
            let d = t.phase2[initial[r]];
            if negate[r] {
                d
            } else {
                -d
            }
        })
        .collect();
    let basis = t
        .basis
        .iter()
        .map(|&c| match t.kinds[c] {
            ColKind::Structural(j) => BasicVar::Structural(j),
            ColKind::Slack(r) => BasicVar::Slack(r),
            ColKind::Artificial(r) => BasicVar::Artificial(r),
        })
        .collect();
    Ok(LpSolution {
        status,
        primal,
        objective,
        duals,
        basis,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::model::{Row, RowRole};
    use crate::rational::{int, Rational};
    use num_traits::Zero;

    fn row(kind: RowKind, rhs: i64) -> Row {
        Row {
            kind,
            rhs: int(rhs),
            role: RowRole::Other,
        }
    }

    #[test]
    fn warm_start_reuses_a_basis() {
        let build = |b0: i64| {
            let mut lp = LinearProgram::new(vec![row(RowKind::AtLeast, b0), row(RowKind::AtLeast, -6)]);
            lp.add_column(int(-1), vec![(0, int(-1)), (1, int(-3))]);
            lp.add_column(int(-1), vec![(0, int(-2)), (1, int(-1))]);
            lp
        };
        let opts = SolverOptions::default();
        let cold = solve(&build(-4), &opts).unwrap();
        let again = solve_warm(&build(-4), &opts, &cold.basis, &mut |_| true).unwrap();
        assert_eq!(again.iterations, 0);
        assert!((again.objective - cold.objective).abs() < 1e-12);
        // Tightening the first row makes the old basis primal infeasible
        // but leaves it dual feasible.
        let fixed = solve_warm(&build(-1), &opts, &cold.basis, &mut |_| true).unwrap();
        assert_eq!(fixed.status, LpStatus::Optimal);
        assert!((fixed.objective + 1.0).abs() < 1e-12);
        assert!(fixed.iterations >= 1);
        // A malformed basis falls back to a cold start.
        let junk = solve_warm(&build(-4), &opts, &[BasicVar::Structural(0)], &mut |_| true).unwrap();
        assert!((junk.objective - cold.objective).abs() < 1e-12);
    }

    #[test]
    fn small_textbook_problem() {
        // min -x - y  s.t.  -x - 2y >= -4,  -3x - y >= -6
        let mut lp = LinearProgram::new(vec![row(RowKind::AtLeast, -4), row(RowKind::AtLeast, -6)]);
        lp.add_column(int(-1), vec![(0, int(-1)), (1, int(-3))]);
        lp.add_column(int(-1), vec![(0, int(-2)), (1, int(-1))]);
        let s = solve(&lp, &SolverOptions::default()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective + 2.8).abs() < 1e-12);
        assert!((s.primal[0] - 1.6).abs() < 1e-12);
        assert!((s.primal[1] - 1.2).abs() < 1e-12);
        // dual objective equals primal objective
        let dual_obj: f64 = s.duals.iter().zip([-4.0, -6.0]).map(|(y, b)| y * b).sum();
        assert!((dual_obj - s.objective).abs() < 1e-12);
        assert!(s.duals.iter().all(|&y| y >= -1e-12));
    }

    #[test]
    fn infeasible_problem() {
        // x0 + x1 = 1 with both variables forced to zero
        let mut lp = LinearProgram::new(vec![row(RowKind::Equal, 1), row(RowKind::AtLeast, 0), row(RowKind::AtLeast, 0)]);
        lp.add_column(int(1), vec![(0, int(1)), (1, int(-1))]);
        lp.add_column(int(1), vec![(0, int(1)), (2, int(-1))]);
        let s = solve(&lp, &SolverOptions::default()).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_problem() {
        let mut lp = LinearProgram::new(vec![row(RowKind::AtLeast, 1)]);
        lp.add_column(int(-1), vec![(0, int(1))]);
        let s = solve(&lp, &SolverOptions::default()).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
    }

    #[test]
    fn redundant_equality_keeps_artificial() {
        let mut lp = LinearProgram::new(vec![row(RowKind::Equal, 2), row(RowKind::Equal, 2)]);
        lp.add_column(int(1), vec![(0, int(1)), (1, int(1))]);
        lp.add_column(int(3), vec![(0, int(1)), (1, int(1))]);
        let s = solve(&lp, &SolverOptions::default()).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 2.0).abs() < 1e-12);
        assert!(s.basis.iter().any(|b| matches!(b, BasicVar::Artificial(_))));
    }

    #[test]
    fn iteration_limit_and_interrupt() {
        let mut lp = LinearProgram::new(vec![row(RowKind::Equal, 1)]);
        lp.add_column(int(1), vec![(0, int(1))]);
        let opts = SolverOptions {
            max_iterations: 0,
            ..SolverOptions::default()
        };
        assert_eq!(solve(&lp, &opts).unwrap().status, LpStatus::IterationLimit);
        let s = solve_with_monitor(&lp, &SolverOptions::default(), &mut |_| false).unwrap();
        assert_eq!(s.status, LpStatus::Interrupted);
        assert!(solve(&lp, &SolverOptions { tolerance: 0.0, ..SolverOptions::default() }).is_err());
        let _ = Rational::zero();
    }
}
