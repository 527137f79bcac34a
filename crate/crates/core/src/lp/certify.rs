//! Exact rational re-verification of a floating-point optimal basis.
//!
//! The basis reported by the simplex solver is re-solved in rationals. The
//! resulting primal point and dual vector are then checked for feasibility
//! independently of how they were obtained, so weak duality brackets the
//! optimum: `b·y <= optimum <= c·x`. If the floating basis turns out to be
//! slightly suboptimal, a few exact primal simplex pivots repair it.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::exact::SparseSystem;
use super::model::{LinearProgram, RowKind};
use super::simplex::{BasicVar, LpSolution, LpStatus};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exact primal-dual pair with its objective values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub primal: Vec<Rational>,
    pub duals: Vec<Rational>,
    /// Dual objective `b·y`.
    pub lower: Rational,
    /// Primal objective `c·x`.
    pub upper: Rational,
    pub basis: Vec<BasicVar>,
    /// Exact pivots needed to repair the floating basis.
    pub repair_pivots: usize,
}

/// Upper limit on exact repair pivots.
pub const MAX_REPAIR_PIVOTS: usize = 10_000;

fn column_of(lp: &LinearProgram, var: BasicVar) -> Vec<(usize, Rational)> {
    match var {
        BasicVar::Structural(j) => lp.columns[j].clone(),
        BasicVar::Slack(r) => alloc::vec![(r, -Rational::one())],
        BasicVar::Artificial(r) => alloc::vec![(r, Rational::one())],
    }
}

fn basis_matrix(lp: &LinearProgram, basis: &[BasicVar]) -> SparseSystem {
    let mut m = SparseSystem::new(lp.row_count());
    for (k, var) in basis.iter().enumerate() {
        for (r, v) in column_of(lp, *var) {
            m.add(r, k, &v);
        }
    }
    m
}

fn basis_cost(lp: &LinearProgram, var: BasicVar) -> Rational {
    match var {
        BasicVar::Structural(j) => lp.objective[j].clone(),
        _ => Rational::zero(),
    }
}

fn dot(col: &[(usize, Rational)], y: &[Rational]) -> Rational {
    col.iter().map(|(r, a)| a * &y[*r]).sum()
}

/// Checks `x >= 0` and every row exactly; returns `c·x`.
pub fn verify_primal(lp: &LinearProgram, x: &[Rational]) -> Result<Rational> {
    if x.len() != lp.column_count() {
        return Err(Error::LengthMismatch {
            expected: lp.column_count(),
            actual: x.len(),
        });
    }
    if let Some(j) = x.iter().position(|v| *v < Rational::zero()) {
        return Err(Error::CertificateInvalid(format!("primal variable {j} is negative")));
    }
    for (r, (row, act)) in lp.rows.iter().zip(lp.activities(x)).enumerate() {
        let ok = match row.kind {
            RowKind::Equal => act == row.rhs,
            RowKind::AtLeast => act >= row.rhs,
        };
        if !ok {
            return Err(Error::CertificateInvalid(format!("primal row {r} is violated")));
        }
    }
    Ok(lp.objective.iter().zip(x).map(|(c, v)| c * v).sum())
}

/// Checks dual feasibility of `y` for `min c·x, A x (=|>=) b, x >= 0`:
/// `y_r >= 0` on `>=` rows and `c_j - y·A_j >= 0` for every column.
/// Returns the dual objective `b·y`.
pub fn verify_dual(lp: &LinearProgram, y: &[Rational]) -> Result<Rational> {
    if y.len() != lp.row_count() {
        return Err(Error::LengthMismatch {
            expected: lp.row_count(),
            actual: y.len(),
        });
    }
    for (r, row) in lp.rows.iter().enumerate() {
        if row.kind == RowKind::AtLeast && y[r] < Rational::zero() {
            return Err(Error::CertificateInvalid(format!("dual value of row {r} is negative")));
        }
    }
    for (j, col) in lp.columns.iter().enumerate() {
        if lp.objective[j] < dot(col, y) {
            return Err(Error::CertificateInvalid(format!("reduced cost of column {j} is negative")));
        }
    }
    Ok(lp.rows.iter().zip(y).map(|(row, v)| &row.rhs * v).sum())
}

struct BasisPoint {
    values: Vec<Rational>,
    duals: Vec<Rational>,
}

fn evaluate_basis(lp: &LinearProgram, basis: &[BasicVar]) -> Result<(SparseSystem, BasisPoint)> {
    let m = basis_matrix(lp, basis);
    let rhs: Vec<Rational> = lp.rows.iter().map(|r| r.rhs.clone()).collect();
    let values = m.solve(&rhs)?;
    let costs: Vec<Rational> = basis.iter().map(|v| basis_cost(lp, *v)).collect();
    let duals = m.transpose().solve(&costs)?;
    Ok((m, BasisPoint { values, duals }))
}

/// First nonbasic column (structural, then slack) whose reduced cost is
/// negative under `y`.
fn entering(lp: &LinearProgram, basic: &[bool], slack_basic: &[bool], y: &[Rational]) -> Option<BasicVar> {
    for (j, col) in lp.columns.iter().enumerate() {
        if !basic[j] && lp.objective[j] < dot(col, y) {
            return Some(BasicVar::Structural(j));
        }
    }
    lp.rows
        .iter()
        .enumerate()
        .find(|(r, row)| row.kind == RowKind::AtLeast && !slack_basic[*r] && y[*r] < Rational::zero())
        .map(|(r, _)| BasicVar::Slack(r))
}

/// Re-solves the basis of `solution` exactly and returns a verified
/// primal-dual pair.
pub fn certify(lp: &LinearProgram, solution: &LpSolution) -> Result<ExactSolution> {
    if solution.status != LpStatus::Optimal {
        return Err(Error::Solver(format!("cannot certify a {:?} solution", solution.status)));
    }
    if solution.basis.len() != lp.row_count() {
        return Err(Error::LengthMismatch {
            expected: lp.row_count(),
            actual: solution.basis.len(),
        });
    }
    let mut basis = solution.basis.clone();
    let mut repair_pivots = 0;
    loop {
        let (m, point) = evaluate_basis(lp, &basis)?;
        for (k, var) in basis.iter().enumerate() {
            let v = &point.values[k];
            let bad = match var {
                BasicVar::Artificial(_) => !v.is_zero(),
                _ => *v < Rational::zero(),
            };
            if bad {
                return Err(Error::CertificateInvalid(format!(
                    "basic variable {var:?} has infeasible value {v}"
                )));
            }
        }
        let mut basic = alloc::vec![false; lp.column_count()];
        let mut slack_basic = alloc::vec![false; lp.row_count()];
        for var in &basis {
            match var {
                BasicVar::Structural(j) => basic[*j] = true,
                BasicVar::Slack(r) => slack_basic[*r] = true,
                BasicVar::Artificial(_) => {}
            }
        }
        let Some(enter) = entering(lp, &basic, &slack_basic, &point.duals) else {
            let mut primal = alloc::vec![Rational::zero(); lp.column_count()];
            for (k, var) in basis.iter().enumerate() {
                if let BasicVar::Structural(j) = var {
                    primal[*j] = point.values[k].clone();
                }
            }
            let upper = verify_primal(lp, &primal)?;
            let lower = verify_dual(lp, &point.duals)?;
            if lower != upper {
                return Err(Error::CertificateInvalid(format!("duality gap {lower} vs {upper}")));
            }
            return Ok(ExactSolution {
                primal,
                duals: point.duals,
                lower,
                upper,
                basis,
                repair_pivots,
            });
        };
        if repair_pivots >= MAX_REPAIR_PIVOTS {
            return Err(Error::CertificateInvalid("exact repair did not converge".into()));
        }
        // Direction of the basic variables as the entering one increases.
        let mut a = alloc::vec![Rational::zero(); lp.row_count()];
        for (r, v) in column_of(lp, enter) {
            a[r] = v;
        }
        let d = m.solve(&a)?;
        let mut leave: Option<(usize, Rational)> = None;
        for (k, dk) in d.iter().enumerate() {
            let ratio = match basis[k] {
                BasicVar::Artificial(_) if !dk.is_zero() => Rational::zero(),
                _ if *dk > Rational::zero() => &point.values[k] / dk,
                _ => continue,
            };
            let better = match &leave {
                None => true,
                Some((bk, br)) => ratio < *br || (ratio == *br && basis[k] < basis[*bk]),
            };
            if better {
                leave = Some((k, ratio));
            }
        }
        let Some((k, _)) = leave else {
            return Err(Error::CertificateInvalid("program is unbounded".into()));
        };
        basis[k] = enter;
        repair_pivots += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::model::build_lp;
    use crate::lp::simplex::{solve, SolverOptions};
    use crate::rational::ratio;
    use crate::selection::StepFunction;

    fn certified(f: &StepFunction) -> (LinearProgram, ExactSolution) {
        let model = build_lp(f);
        let s = solve(&model.program, &SolverOptions::default()).unwrap();
        let c = certify(&model.program, &s).unwrap();
        (model.program, c)
    }

    #[test]
    fn uniform_is_exactly_one_quarter() {
        let (_, c) = certified(&StepFunction::uniform());
        assert_eq!(c.lower, ratio(1, 4));
        assert_eq!(c.upper, ratio(1, 4));
    }

    #[test]
    fn one_third_step_is_exactly_three_eighths() {
        let (lp, c) = certified(&StepFunction::f_delta(&ratio(1, 3)).unwrap());
        assert_eq!(c.lower, ratio(3, 8));
        assert_eq!(c.upper, ratio(3, 8));
        assert_eq!(verify_dual(&lp, &c.duals).unwrap(), ratio(3, 8));
    }

    #[test]
    fn perturbed_duals_are_rejected() {
        let (lp, c) = certified(&StepFunction::f_delta(&ratio(1, 3)).unwrap());
        let mut y = c.duals.clone();
        y[0] += ratio(1, 100);
        assert!(matches!(verify_dual(&lp, &y), Err(Error::CertificateInvalid(_))));
        let mut x = c.primal.clone();
        let j = x.iter().position(|v| !v.is_zero()).unwrap();
        x[j] += ratio(1, 7);
        assert!(matches!(verify_primal(&lp, &x), Err(Error::CertificateInvalid(_))));
    }

    #[test]
    fn repairs_a_suboptimal_basis() {
        let model = build_lp(&StepFunction::f_delta(&ratio(1, 3)).unwrap());
        let lp = &model.program;
        let loose = SolverOptions {
            tolerance: 0.2,
            ..SolverOptions::default()
        };
        let s = solve(lp, &loose).unwrap();
        let c = certify(lp, &s).unwrap();
        assert_eq!(c.lower, ratio(3, 8));
        assert!(c.repair_pivots > 0, "loose tolerance should stop early");
    }

    #[test]
    fn infeasible_basis_is_rejected() {
        let model = build_lp(&StepFunction::f_delta(&ratio(1, 3)).unwrap());
        let lp = &model.program;
        let mut s = solve(lp, &SolverOptions::default()).unwrap();
        let reference = certify(lp, &s).unwrap();
        // The all-slack basis is primal infeasible for the cut row.
        s.basis = lp
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| match row.kind {
                RowKind::AtLeast => BasicVar::Slack(r),
                RowKind::Equal => BasicVar::Artificial(r),
            })
            .collect();
        assert!(certify(lp, &s).is_err());
        assert_eq!(reference.lower, ratio(3, 8));
    }
}
