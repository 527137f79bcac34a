//! Column generation for programs with many more columns than rows.
//!
//! A restricted program holds a subset of the columns plus one penalized
//! artificial column per row that cannot start at zero. Each round solves
//! the restricted program in floating point, warm-started from the previous
//! basis, and adds the columns whose reduced cost under its duals is most
//! negative. Once no column prices out, the restricted basis is certified exactly and its duals are checked
//! against every column of the full program; exact violators are added and
//! the loop continues.

use alloc::vec::Vec;

use num_traits::Zero;

use super::certify::{certify, verify_dual, verify_primal, ExactSolution};
use super::model::{LinearProgram, RowKind};
use super::simplex::{solve_warm, BasicVar, LpSolution, LpStatus, SolverOptions};
use crate::error::{Error, Result};
use crate::rational::{int, ratio, to_f64, Rational};

/// Cost of the penalized artificial columns.
const PENALTY: i64 = 1000;
/// Columns added per round, at most.
const BATCH: usize = 2000;
/// Upper limit on restricted solves.
const MAX_ROUNDS: usize = 500;

/// Outcome of [`solve_by_columns`], expressed for the full program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedSolution {
    pub exact: ExactSolution,
    /// Simplex pivots over all rounds.
    pub iterations: usize,
    pub rounds: usize,
    /// Full-program columns in the final restricted program.
    pub active_columns: usize,
}

struct Restricted {
    program: LinearProgram,
    /// Full-program index of each restricted column; `None` for artificials.
    origin: Vec<Option<usize>>,
}

/// Relaxation of row `r` while perturbed: a few millionths, varying by row.
fn perturbation(r: usize) -> Rational {
    let k = 1000 + (r as i64).wrapping_mul(7919).rem_euclid(1000);
    ratio(k, 1_000_000_000)
}

fn restricted(lp: &LinearProgram, active: &[usize], perturbed: bool) -> Restricted {
    let mut rows = lp.rows.clone();
    if perturbed {
        for (r, row) in rows.iter_mut().enumerate() {
            if row.kind == RowKind::AtLeast && row.rhs.is_zero() {
                row.rhs = -perturbation(r);
            }
        }
    }
    let mut program = LinearProgram::new(rows);
    let mut origin = Vec::new();
    for (r, row) in program.rows.clone().iter().enumerate() {
        let needed = match row.kind {
            RowKind::Equal => !row.rhs.is_zero(),
            RowKind::AtLeast => row.rhs > Rational::zero(),
        };
        if needed {
            let sign = if row.rhs < Rational::zero() { int(-1) } else { int(1) };
            program.add_column(int(PENALTY), alloc::vec![(r, sign)]);
            origin.push(None);
        }
    }
    for &j in active {
        program.add_column(lp.objective[j].clone(), lp.columns[j].clone());
        origin.push(Some(j));
    }
    Restricted { program, origin }
}

/// Adds up to [`BATCH`] inactive columns with reduced cost below `-tol`,
/// most negative first. Returns how many were added.
fn price(lp_f: &[(f64, Vec<(usize, f64)>)], y: &[f64], in_set: &mut [bool], active: &mut Vec<usize>, tol: f64) -> usize {
    let mut candidates: Vec<(f64, usize)> = lp_f
        .iter()
        .enumerate()
        .filter(|(j, _)| !in_set[*j])
        .map(|(j, (c, col))| (c - col.iter().map(|(r, a)| a * y[*r]).sum::<f64>(), j))
        .filter(|(d, _)| *d < -tol)
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    candidates.truncate(BATCH);
    for &(_, j) in &candidates {
        in_set[j] = true;
        active.push(j);
    }
    candidates.len()
}

fn exact_violators(lp: &LinearProgram, y: &[Rational], in_set: &mut [bool], active: &mut Vec<usize>) -> usize {
    let mut added = 0;
    for (j, col) in lp.columns.iter().enumerate() {
        if in_set[j] {
            continue;
        }
        let ya: Rational = col.iter().map(|(r, a)| a * &y[*r]).sum();
        if lp.objective[j] < ya {
            in_set[j] = true;
            active.push(j);
            added += 1;
        }
    }
    added
}

fn check_status(s: &LpSolution) -> Result<()> {
    match s.status {
        LpStatus::Optimal => Ok(()),
        LpStatus::IterationLimit => Err(Error::Solver("iteration limit reached".into())),
        LpStatus::Interrupted => Err(Error::Solver("interrupted".into())),
        other => Err(Error::Solver(alloc::format!("program is {other:?}"))),
    }
}

/// Solves `lp` by column generation starting from the columns in `initial`
/// and certifies the result exactly against the full program.
pub fn solve_by_columns(
    lp: &LinearProgram,
    initial: &[usize],
    options: &SolverOptions,
    monitor: &mut dyn FnMut(usize) -> bool,
) -> Result<GeneratedSolution> {
    let lp_f: Vec<(f64, Vec<(usize, f64)>)> = lp
        .objective
        .iter()
        .zip(&lp.columns)
        .map(|(c, col)| (to_f64(c), col.iter().map(|(r, a)| (*r, to_f64(a))).collect()))
        .collect();
    let mut in_set = alloc::vec![false; lp.column_count()];
    let mut active = Vec::new();
    for &j in initial {
        if j < in_set.len() && !in_set[j] {
            in_set[j] = true;
            active.push(j);
        }
    }
    let mut iterations = 0usize;
    // Columns are only ever appended, so the previous optimal basis stays
    // feasible for the next restricted program.
    let mut basis: Vec<BasicVar> = Vec::new();
    // Restricted programs are solved with the zero right-hand sides relaxed
    // slightly, which keeps the simplex off degenerate vertices; the last
    // rounds run on the exact rows.
    let mut perturbed = true;
    for round in 1..=MAX_ROUNDS {
        let sub = restricted(lp, &active, perturbed);
        let offset = iterations;
        let s = solve_warm(&sub.program, options, &basis, &mut |i| monitor(offset + i))?;
        iterations += s.iterations;
        check_status(&s)?;
        basis.clone_from(&s.basis);
        if price(&lp_f, &s.duals, &mut in_set, &mut active, options.tolerance) > 0 {
            continue;
        }
        if perturbed {
            perturbed = false;
            continue;
        }
        let exact = certify(&sub.program, &s)?;
        if exact_violators(lp, &exact.duals, &mut in_set, &mut active) > 0 {
            continue;
        }
        let mut primal = alloc::vec![Rational::zero(); lp.column_count()];
        for (k, v) in exact.primal.iter().enumerate() {
            match sub.origin[k] {
                Some(j) => primal[j] = v.clone(),
                None if !v.is_zero() => return Err(Error::Solver("program is Infeasible".into())),
                None => {}
            }
        }
        let upper = verify_primal(lp, &primal)?;
        let lower = verify_dual(lp, &exact.duals)?;
        let basis = exact
            .basis
            .iter()
            .map(|b| match *b {
                BasicVar::Structural(k) => sub.origin[k].map_or(BasicVar::Artificial(k), BasicVar::Structural),
                other => other,
            })
            .collect();
        return Ok(GeneratedSolution {
            exact: ExactSolution {
                primal,
                duals: exact.duals,
                lower,
                upper,
                basis,
                repair_pivots: exact.repair_pivots,
            },
            iterations,
            rounds: round,
            active_columns: active.len(),
        });
    }
    Err(Error::Solver("column generation did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{build_lp, certify as certify_basis, solve};
    use crate::rational::ratio;
    use crate::selection::StepFunction;

    fn full(f: &StepFunction) -> Rational {
        let m = build_lp(f);
        let s = solve(&m.program, &SolverOptions::default()).unwrap();
        certify_basis(&m.program, &s).unwrap().lower
    }

    #[test]
    fn matches_full_solve_from_empty_start() {
        for f in [
            StepFunction::uniform(),
            StepFunction::f_delta(&ratio(1, 3)).unwrap(),
            StepFunction::clamped_linear_discretized(8).unwrap(),
        ] {
            let m = build_lp(&f);
            let g = solve_by_columns(&m.program, &[], &SolverOptions::default(), &mut |_| true).unwrap();
            assert_eq!(g.exact.lower, g.exact.upper, "{f}");
            assert_eq!(g.exact.lower, full(&f), "{f}");
            assert!(g.rounds >= 2);
        }
    }

    #[test]
    fn infeasible_program_is_reported() {
        use crate::lp::{Row, RowRole};
        let mut lp = LinearProgram::new(alloc::vec![Row {
            kind: RowKind::Equal,
            rhs: int(1),
            role: RowRole::Cut,
        }]);
        lp.add_column(int(1), alloc::vec![(0, int(-1))]);
        let r = solve_by_columns(&lp, &[0], &SolverOptions::default(), &mut |_| true);
        assert!(matches!(r, Err(Error::Solver(_))));
    }
}
