//! Worst-case approximation ratio of a step selection function.
//!
//! [`approximation_ratio`] builds the factor-revealing program, solves it in
//! floating point, certifies the optimal basis in exact arithmetic and
//! rebuilds a witness graph from the exact primal solution.

mod certify;
mod colgen;
mod exact;
mod model;
mod simplex;
mod witness;

use alloc::string::String;
use alloc::vec::Vec;

pub use certify::{certify, verify_dual, verify_primal, ExactSolution, MAX_REPAIR_PIVOTS};
pub use colgen::{solve_by_columns, GeneratedSolution};
pub use exact::SparseSystem;
pub use model::{
    build_lp, build_lp_from_intervals, build_symmetric_lp, LinearProgram, LpInterval, LpModel, Row, RowKind, RowRole,
};
pub use simplex::{solve, solve_warm, solve_with_monitor, BasicVar, LpSolution, LpStatus, SolverOptions};
pub use witness::{extract_witness, Witness};

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};
use crate::selection::StepFunction;

/// Default weight of the edges that nudge boundary vertices, relative to the
/// cut weight of the witness.
pub fn default_epsilon() -> Rational {
    ratio(1, 1_000_000)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioOptions {
    pub solver: SolverOptions,
    pub epsilon: Rational,
    /// Solve the smaller model restricted to reversal-symmetric graphs.
    /// Requires an antisymmetric function.
    pub symmetric_reduction: bool,
}

impl Default for RatioOptions {
    fn default() -> Self {
        Self {
            solver: SolverOptions::default(),
            epsilon: default_epsilon(),
            symmetric_reduction: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioCertificate {
    /// Fingerprint of the canonical text of the function.
    pub fingerprint: String,
    /// Certified lower bound on the ratio: the exact dual objective.
    pub lower: Rational,
    /// Exact primal objective; the ratio of `f` is at most this plus `epsilon`.
    pub upper: Rational,
    pub lp_value: Rational,
    pub duals: Vec<Rational>,
    pub primal: Vec<Rational>,
    pub witness: Witness,
    pub epsilon: Rational,
    pub iterations: usize,
    pub rows: usize,
    pub columns: usize,
}

pub fn approximation_ratio(f: &StepFunction) -> Result<RatioCertificate> {
    approximation_ratio_with(f, &RatioOptions::default(), &mut |_| true)
}

/// Like [`approximation_ratio`]; `monitor` is polled during the solve and
/// may interrupt it.
pub fn approximation_ratio_with(
    f: &StepFunction,
    options: &RatioOptions,
    monitor: &mut dyn FnMut(usize) -> bool,
) -> Result<RatioCertificate> {
    let model = if options.symmetric_reduction {
        build_symmetric_lp(f)?
    } else {
        build_lp(f)
    };
    certify_model(f, &model, options, monitor)
}

/// Programs with more columns than this are solved by column generation.
pub const COLUMN_GENERATION_THRESHOLD: usize = 4096;

pub fn certify_model(
    f: &StepFunction,
    model: &LpModel,
    options: &RatioOptions,
    monitor: &mut dyn FnMut(usize) -> bool,
) -> Result<RatioCertificate> {
    let (exact, iterations) = if model.program.column_count() > COLUMN_GENERATION_THRESHOLD {
        let g = solve_by_columns(&model.program, &[], &options.solver, monitor)?;
        (g.exact, g.iterations)
    } else {
        let solution = solve_with_monitor(&model.program, &options.solver, monitor)?;
        match solution.status {
            LpStatus::Optimal => {}
            LpStatus::IterationLimit => return Err(Error::Solver("iteration limit reached".into())),
            LpStatus::Interrupted => return Err(Error::Solver("interrupted".into())),
            other => return Err(Error::Solver(alloc::format!("program is {other:?}"))),
        }
        (certify(&model.program, &solution)?, solution.iterations)
    };
    let witness = extract_witness(model, &exact.primal, &options.epsilon)?;
    Ok(RatioCertificate {
        fingerprint: f.fingerprint(),
        lp_value: exact.upper.clone(),
        lower: exact.lower,
        upper: exact.upper,
        duals: exact.duals,
        primal: exact.primal,
        witness,
        epsilon: options.epsilon.clone(),
        iterations,
        rows: model.program.row_count(),
        columns: model.program.column_count(),
    })
}
