//! Construction of the factor-revealing linear program.
//!
//! The bias range `[0, 1]` is split into the `n` pieces of a step function.
//! Sets `0..n` hold the vertices inside the cut `S` (one set per piece) and
//! sets `n..2n` the vertices outside. Variable `e_ab` is the total weight of
//! edges from set `a` to set `b`. The program normalizes the weight of the
//! cut `S` to one, forces every set's average bias into its piece, and
//! minimizes the expected weight of the cut chosen by the selection function.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::selection::StepFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowKind {
    /// `a·x = rhs`
    Equal,
    /// `a·x >= rhs`
    AtLeast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowRole {
    Cut,
    BiasLower(usize),
    BiasUpper(usize),
    BiasExact(usize),
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Row {
    pub kind: RowKind,
    pub rhs: Rational,
    pub role: RowRole,
}

/// `min c·x` subject to the rows and `x >= 0`, stored column-wise.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub columns: Vec<Vec<(usize, Rational)>>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(rows: Vec<Row>) -> Self {
        Self {
            objective: Vec::new(),
            columns: Vec::new(),
            rows,
        }
    }

    /// Adds a column; zero coefficients are dropped.
    pub fn add_column(&mut self, cost: Rational, mut entries: Vec<(usize, Rational)>) -> usize {
        entries.retain(|(_, v)| !v.is_zero());
        entries.sort_by_key(|(r, _)| *r);
        self.objective.push(cost);
        self.columns.push(entries);
        self.columns.len() - 1
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    /// Row activities `A x`.
    pub fn activities(&self, x: &[Rational]) -> Vec<Rational> {
        let mut act = vec![Rational::zero(); self.rows.len()];
        for (col, xj) in self.columns.iter().zip(x) {
            if xj.is_zero() {
                continue;
            }
            for (r, a) in col {
                act[*r] += a * xj;
            }
        }
        act
    }
}

/// One piece of the selection function as seen by the program.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LpInterval {
    pub lower: Rational,
    pub upper: Rational,
    pub probability: Rational,
    /// `f(lower) == probability`: a vertex may sit exactly on the lower end.
    pub lower_attained: bool,
    pub upper_attained: bool,
}

impl LpInterval {
    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LpModel {
    pub intervals: Vec<LpInterval>,
    pub program: LinearProgram,
    /// Edge variables `(a, b)` that each column stands for. A column of the
    /// symmetry-reduced model stands for an edge and its mirror image.
    pub column_edges: Vec<Vec<(usize, usize)>>,
    pub symmetric_reduced: bool,
}

impl LpModel {
    /// Number of pieces `n`.
    pub fn interval_count(&self) -> usize {
        self.intervals.len()
    }

    /// `2n`.
    pub fn set_count(&self) -> usize {
        2 * self.intervals.len()
    }

    pub fn interval_of(&self, set: usize) -> &LpInterval {
        &self.intervals[set % self.intervals.len()]
    }

    pub fn is_inside(&self, set: usize) -> bool {
        set < self.intervals.len()
    }

    pub fn probability(&self, set: usize) -> &Rational {
        &self.interval_of(set).probability
    }

    /// Expands a column solution into the `2n × 2n` edge-weight matrix.
    pub fn edge_weights(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        let s = self.set_count();
        let mut e = vec![vec![Rational::zero(); s]; s];
        for (edges, xj) in self.column_edges.iter().zip(x) {
            for &(a, b) in edges {
                e[a][b] += xj;
            }
        }
        e
    }
}

fn intervals_of(f: &StepFunction) -> Vec<LpInterval> {
    f.pieces()
        .into_iter()
        .map(|p| {
            let lower_attained = f.value_at(&p.lower) == &p.value;
            let upper_attained = f.value_at(&p.upper) == &p.value;
            LpInterval {
                lower: p.lower,
                upper: p.upper,
                probability: p.value,
                lower_attained,
                upper_attained,
            }
        })
        .collect()
}

/// Rows touching each set, plus the cut rows.
struct RowIndex {
    cut: Vec<usize>,
    by_set: Vec<Vec<usize>>,
}

impl RowIndex {
    fn new(rows: &[Row], set_count: usize) -> Self {
        let mut cut = Vec::new();
        let mut by_set = vec![Vec::new(); set_count];
        for (r, row) in rows.iter().enumerate() {
            match row.role {
                RowRole::Cut => cut.push(r),
                RowRole::BiasLower(i) | RowRole::BiasUpper(i) | RowRole::BiasExact(i) => by_set[i].push(r),
                RowRole::Other => {}
            }
        }
        Self { cut, by_set }
    }
}

/// Coefficients of edge variable `(a, b)` in every row of the full model.
fn edge_coefficients(intervals: &[LpInterval], rows: &[Row], index: &RowIndex, a: usize, b: usize) -> Vec<(usize, Rational)> {
    let n = intervals.len();
    let mut out = Vec::with_capacity(5);
    if a < n && b >= n {
        out.extend(index.cut.iter().map(|&r| (r, Rational::one())));
    }
    let touched: &[usize] = if a == b { &[a] } else { &[a, b] };
    for &i in touched {
        let out_w = if a == i { Rational::one() } else { Rational::zero() };
        let degree = Rational::from_integer(((a == i) as i64 + (b == i) as i64).into());
        let iv = &intervals[i % n];
        for &r in &index.by_set[i] {
            let coef = match rows[r].role {
                RowRole::BiasUpper(_) => &iv.upper * &degree - &out_w,
                _ => &out_w - &iv.lower * &degree,
            };
            if !coef.is_zero() {
                out.push((r, coef));
            }
        }
    }
    out.sort_by_key(|(r, _)| *r);
    out
}

fn bias_rows(intervals: &[LpInterval], sets: impl Iterator<Item = usize>) -> Vec<Row> {
    let n = intervals.len();
    let mut rows = vec![Row {
        kind: RowKind::Equal,
        rhs: Rational::one(),
        role: RowRole::Cut,
    }];
    for i in sets {
        let iv = &intervals[i % n];
        if iv.is_point() {
            rows.push(Row {
                kind: RowKind::Equal,
                rhs: Rational::zero(),
                role: RowRole::BiasExact(i),
            });
        } else {
            rows.push(Row {
                kind: RowKind::AtLeast,
                rhs: Rational::zero(),
                role: RowRole::BiasLower(i),
            });
            rows.push(Row {
                kind: RowKind::AtLeast,
                rhs: Rational::zero(),
                role: RowRole::BiasUpper(i),
            });
        }
    }
    rows
}

fn edge_cost(intervals: &[LpInterval], a: usize, b: usize) -> Rational {
    let n = intervals.len();
    &intervals[a % n].probability * (Rational::one() - &intervals[b % n].probability)
}

/// Full model: `4n^2` edge variables, one cut row and two bias rows per set
/// (a single equality for an isolated point).
pub fn build_lp(f: &StepFunction) -> LpModel {
    build_lp_from_intervals(intervals_of(f))
}

pub fn build_lp_from_intervals(intervals: Vec<LpInterval>) -> LpModel {
    let s = 2 * intervals.len();
    let rows = bias_rows(&intervals, 0..s);
    let index = RowIndex::new(&rows, s);
    let mut program = LinearProgram::new(rows);
    let mut column_edges = Vec::with_capacity(s * s);
    for a in 0..s {
        for b in 0..s {
            let entries = edge_coefficients(&intervals, &program.rows, &index, a, b);
            program.add_column(edge_cost(&intervals, a, b), entries);
            column_edges.push(vec![(a, b)]);
        }
    }
    LpModel {
        intervals,
        program,
        column_edges,
        symmetric_reduced: false,
    }
}

/// Model restricted to graphs that equal their own reversal with the two
/// sides of the cut swapped. Valid only for antisymmetric functions; it has
/// about half the variables and only the bias rows of the inside sets.
pub fn build_symmetric_lp(f: &StepFunction) -> Result<LpModel> {
    let intervals = intervals_of(f);
    let n = intervals.len();
    let one = Rational::one();
    for (k, iv) in intervals.iter().enumerate() {
        let m = &intervals[n - 1 - k];
        if &one - &iv.upper != m.lower || &one - &iv.lower != m.upper || &one - &iv.probability != m.probability {
            return Err(Error::NotAntisymmetric);
        }
    }
    let s = 2 * n;
    // Reversal maps an inside set of piece k to the outside set of the mirrored piece.
    let sigma = |a: usize| if a < n { n + (n - 1 - a) } else { n - 1 - (a - n) };
    let full_rows = bias_rows(&intervals, 0..s);
    let index = RowIndex::new(&full_rows, s);
    let kept_rows = bias_rows(&intervals, 0..n);
    let remap: Vec<Option<usize>> = full_rows
        .iter()
        .map(|row| kept_rows.iter().position(|k| k.role == row.role))
        .collect();
    let mut program = LinearProgram::new(kept_rows);
    let mut column_edges = Vec::new();
    for a in 0..s {
        for b in 0..s {
            let mirror = (sigma(b), sigma(a));
            if mirror < (a, b) {
                continue;
            }
            let edges = if mirror == (a, b) { vec![(a, b)] } else { vec![(a, b), mirror] };
            let mut cost = Rational::zero();
            let mut coefs = vec![Rational::zero(); program.rows.len()];
            for &(u, v) in &edges {
                cost += edge_cost(&intervals, u, v);
                for (r, c) in edge_coefficients(&intervals, &full_rows, &index, u, v) {
                    if let Some(kr) = remap[r] {
                        coefs[kr] += c;
                    }
                }
            }
            let entries = coefs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            program.add_column(cost, entries);
            column_edges.push(edges);
        }
    }
    Ok(LpModel {
        intervals,
        program,
        column_edges,
        symmetric_reduced: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn uniform_model() {
        let m = build_lp(&StepFunction::uniform());
        assert_eq!(m.interval_count(), 1);
        assert_eq!(m.set_count(), 2);
        assert_eq!(m.program.column_count(), 4);
        assert_eq!(m.program.row_count(), 5);
        assert!(m.program.objective.iter().all(|c| *c == ratio(1, 4)));
        // only e_01 is a cut variable
        let cut_cols: Vec<usize> = (0..4)
            .filter(|&j| m.program.columns[j].iter().any(|(r, _)| *r == 0))
            .collect();
        assert_eq!(cut_cols, vec![1]);
    }

    #[test]
    fn f_third_model_size() {
        let m = build_lp(&StepFunction::f_delta(&ratio(1, 3)).unwrap());
        assert_eq!(m.interval_count(), 3);
        assert_eq!(m.set_count(), 6);
        assert_eq!(m.program.column_count(), 36);
        assert_eq!(m.program.row_count(), 13);
        for iv in &m.intervals {
            assert!(iv.lower_attained || iv.upper_attained || iv.lower.is_zero());
        }
        for i in 0..6 {
            assert_eq!(m.probability(i), m.probability((i + 3) % 6));
        }
        assert!(m
            .program
            .objective
            .iter()
            .all(|c| *c >= Rational::zero() && *c <= Rational::one()));
    }

    #[test]
    fn isolated_point_gives_equality_row() {
        let m = build_lp(&StepFunction::paper_0483());
        assert_eq!(m.interval_count(), 103);
        assert_eq!(m.program.column_count(), 206 * 206);
        assert_eq!(m.program.row_count(), 1 + 2 * 2 * 102 + 2);
        let point = m.intervals.iter().position(|iv| iv.is_point()).unwrap();
        assert_eq!(m.intervals[point].lower, ratio(1, 2));
        let r = m
            .program
            .rows
            .iter()
            .position(|row| row.role == RowRole::BiasExact(point))
            .unwrap();
        assert_eq!(m.program.rows[r].kind, RowKind::Equal);
        // e_ii appears twice in the degree term: coefficient 1 - 2 * 1/2 = 0
        let self_col = point * 206 + point;
        assert!(m.program.columns[self_col].iter().all(|(row, _)| *row != r));
        let out_col = point * 206 + (point + 1);
        let c = m.program.columns[out_col].iter().find(|(row, _)| *row == r).unwrap();
        assert_eq!(c.1, ratio(1, 2));
    }

    #[test]
    fn redundant_breakpoints_do_not_change_the_model() {
        let f = StepFunction::f_delta(&ratio(1, 3)).unwrap();
        let g = StepFunction::from_parts(
            vec![ratio(1, 5), ratio(1, 3), ratio(1, 2), ratio(2, 3)],
            vec![int(0), int(0), ratio(1, 2), ratio(1, 2), int(1)],
            vec![int(0), int(0), ratio(1, 2), ratio(1, 2), ratio(1, 2), int(1)],
        )
        .unwrap();
        assert_eq!(build_lp(&f), build_lp(&g));
    }

    #[test]
    fn symmetric_model_is_smaller() {
        let f = StepFunction::f_delta(&ratio(1, 3)).unwrap();
        let m = build_symmetric_lp(&f).unwrap();
        assert_eq!(m.program.row_count(), 7);
        assert_eq!(m.column_edges.iter().map(Vec::len).sum::<usize>(), 36);
        assert!(m.program.column_count() < 36);
        assert_eq!(
            build_symmetric_lp(&StepFunction::new(vec![ratio(1, 2)], vec![ratio(1, 5), ratio(9, 10)]).unwrap()),
            Err(Error::NotAntisymmetric)
        );
    }
}
