//! Max 2-AND instances and their reduction to Max DICUT.
//!
//! A clause `y ∧ z` of weight `w` becomes the two edges `(y, ¬z)` and
//! `(z, ¬y)` of weight `w/2` in a graph whose vertices are the literals.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Cut, WeightedDigraph, DEFAULT_BRUTE_FORCE_LIMIT};
use crate::rational::{half, int, to_f64, Rational};
use crate::selection::StepFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, positive: false }
    }

    pub fn negate(self) -> Self {
        Self {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Vertex of this literal in the reduced graph: `2 var` for `x`, `2 var + 1` for `¬x`.
    pub fn vertex(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    pub fn from_vertex(v: usize) -> Self {
        Self {
            var: v / 2,
            positive: v.is_multiple_of(2),
        }
    }

    pub fn is_true(self, a: &Assignment) -> bool {
        a.0[self.var] == self.positive
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub first: Literal,
    pub second: Literal,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwoAndInstance {
    variable_count: usize,
    clauses: Vec<Clause>,
}

/// `G_φ` together with the literal of every vertex.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: WeightedDigraph,
    pub literals: Vec<Literal>,
}

impl Reduction {
    /// The literal cut induced by an assignment: all true literals.
    pub fn cut_of(&self, a: &Assignment) -> Cut {
        Cut::from_flags(self.literals.iter().map(|l| l.is_true(a)).collect())
    }
}

impl TwoAndInstance {
    pub fn new(variable_count: usize) -> Self {
        Self {
            variable_count,
            clauses: Vec::new(),
        }
    }

    pub fn add_clause(&mut self, first: Literal, second: Literal, weight: Rational) -> Result<()> {
        for l in [first, second] {
            if l.var >= self.variable_count {
                return Err(Error::InvalidInstance(alloc::format!(
                    "variable {} out of range for {} variables",
                    l.var,
                    self.variable_count
                )));
            }
        }
        if first.var == second.var {
            return Err(Error::InvalidInstance("a clause needs two different variables".into()));
        }
        if weight <= Rational::zero() {
            return Err(Error::NonPositiveWeight(weight));
        }
        self.clauses.push(Clause { first, second, weight });
        Ok(())
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn total_weight(&self) -> Rational {
        self.clauses.iter().map(|c| &c.weight).sum()
    }

    /// Total weight of clauses satisfied by `a`.
    pub fn assignment_weight(&self, a: &Assignment) -> Result<Rational> {
        if a.0.len() != self.variable_count {
            return Err(Error::LengthMismatch {
                expected: self.variable_count,
                actual: a.0.len(),
            });
        }
        Ok(self
            .clauses
            .iter()
            .filter(|c| c.first.is_true(a) && c.second.is_true(a))
            .map(|c| &c.weight)
            .sum())
    }

    fn occurrence_weights(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut pos = vec![Rational::zero(); self.variable_count];
        let mut neg = vec![Rational::zero(); self.variable_count];
        for c in &self.clauses {
            for l in [c.first, c.second] {
                if l.positive {
                    pos[l.var] += &c.weight;
                } else {
                    neg[l.var] += &c.weight;
                }
            }
        }
        (pos, neg)
    }

    pub fn has_occurrences(&self, var: usize) -> bool {
        self.clauses.iter().any(|c| c.first.var == var || c.second.var == var)
    }

    /// Positive-occurrence weight over total occurrence weight; `1/2` for a
    /// variable that appears in no clause (see [`Self::has_occurrences`]).
    pub fn variable_bias(&self, var: usize) -> Result<Rational> {
        if var >= self.variable_count {
            return Err(Error::InvalidInstance(alloc::format!("variable {var} out of range")));
        }
        Ok(self.variable_biases().swap_remove(var))
    }

    pub fn variable_biases(&self) -> Vec<Rational> {
        let (pos, neg) = self.occurrence_weights();
        pos.into_iter()
            .zip(neg)
            .map(|(p, n)| {
                let t = &p + &n;
                if t.is_zero() {
                    half()
                } else {
                    p / t
                }
            })
            .collect()
    }

    pub fn reduce_to_dicut(&self) -> Reduction {
        let mut graph = WeightedDigraph::new(2 * self.variable_count);
        for c in &self.clauses {
            let w = &c.weight / int(2);
            graph
                .add_edge(c.first.vertex(), c.second.negate().vertex(), w.clone())
                .expect("distinct variables give distinct vertices");
            graph
                .add_edge(c.second.vertex(), c.first.negate().vertex(), w)
                .expect("distinct variables give distinct vertices");
        }
        let literals = (0..2 * self.variable_count).map(Literal::from_vertex).collect();
        Reduction { graph, literals }
    }

    /// Probability that each variable is set true: `f(bias)`.
    pub fn truth_probabilities(&self, f: &StepFunction) -> Vec<Rational> {
        self.variable_biases().iter().map(|b| f.value_at(b).clone()).collect()
    }

    /// Exact expected weight when each variable is independently true with
    /// probability `f(bias)`.
    pub fn oblivious_expected_assignment(&self, f: &StepFunction) -> Rational {
        let p = self.truth_probabilities(f);
        let one = Rational::one();
        let lit = |l: Literal| if l.positive { p[l.var].clone() } else { &one - &p[l.var] };
        self.clauses
            .iter()
            .map(|c| &c.weight * lit(c.first) * lit(c.second))
            .sum()
    }

    /// Samples an assignment. With `consistent`, the choice is made on the
    /// literal graph: the vertex `x` is drawn with `f(bias(x))` and `¬x` is
    /// put on the opposite side, which yields the same marginals.
    pub fn sample_assignment(&self, f: &StepFunction, seed: u64, consistent: bool) -> Assignment {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if consistent {
            let cut = self.sample_literal_cut(f, &mut rng, true);
            Assignment((0..self.variable_count).map(|v| cut.contains(Literal::pos(v).vertex())).collect())
        } else {
            let p: Vec<f64> = self.truth_probabilities(f).iter().map(to_f64).collect();
            Assignment(p.iter().map(|&pv| rng.random::<f64>() < pv).collect())
        }
    }

    /// Samples a cut of `G_φ`. Independent mode draws every literal vertex
    /// with `f(bias)`; consistent mode draws `x` and sets `¬x` opposite.
    pub fn sample_literal_cut<R: Rng + ?Sized>(&self, f: &StepFunction, rng: &mut R, consistent: bool) -> Cut {
        let biases = self.variable_biases();
        let one = Rational::one();
        let mut flags = vec![false; 2 * self.variable_count];
        for (v, b) in biases.iter().enumerate() {
            let px = to_f64(f.value_at(b));
            let x = rng.random::<f64>() < px;
            flags[Literal::pos(v).vertex()] = x;
            flags[Literal::neg(v).vertex()] = if consistent {
                !x
            } else {
                rng.random::<f64>() < to_f64(f.value_at(&(&one - b)))
            };
        }
        Cut::from_flags(flags)
    }

    pub fn brute_force_assignment(&self) -> Result<(Assignment, Rational)> {
        self.brute_force_assignment_with_limit(DEFAULT_BRUTE_FORCE_LIMIT)
    }

    /// Best assignment by enumeration; ties go to the smallest bitmask.
    pub fn brute_force_assignment_with_limit(&self, limit: usize) -> Result<(Assignment, Rational)> {
        let n = self.variable_count;
        if n > limit || n > 63 {
            return Err(Error::InstanceTooLarge { size: n, limit });
        }
        let mut best: Option<(Rational, u64)> = None;
        for mask in 0u64..(1u64 << n) {
            let w: Rational = self
                .clauses
                .iter()
                .filter(|c| {
                    [c.first, c.second]
                        .iter()
                        .all(|l| (mask >> l.var & 1 == 1) == l.positive)
                })
                .map(|c| &c.weight)
                .sum();
            if best.as_ref().is_none_or(|(b, _)| w > *b) {
                best = Some((w, mask));
            }
        }
        let (w, mask) = best.expect("at least one assignment");
        Ok((Assignment((0..n).map(|v| mask >> v & 1 == 1).collect()), w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::brute_force_opt;
    use crate::rational::ratio;

    fn four_clause() -> TwoAndInstance {
        let mut phi = TwoAndInstance::new(2);
        let (x, y) = (0, 1);
        for (a, b) in [
            (Literal::pos(x), Literal::pos(y)),
            (Literal::neg(x), Literal::pos(y)),
            (Literal::pos(x), Literal::neg(y)),
            (Literal::neg(x), Literal::neg(y)),
        ] {
            phi.add_clause(a, b, int(1)).unwrap();
        }
        phi
    }

    #[test]
    fn four_clause_example() {
        let phi = four_clause();
        for mask in 0..4u8 {
            let a = Assignment(vec![mask & 1 == 1, mask & 2 == 2]);
            assert_eq!(phi.assignment_weight(&a).unwrap(), int(1));
        }
        let red = phi.reduce_to_dicut();
        assert_eq!(red.graph.edges().len(), 8);
        assert!(red.graph.edges().iter().all(|e| e.weight == half()));
        let (cut, w) = brute_force_opt(&red.graph).unwrap();
        assert_eq!(w, int(2));
        // x and ¬x both selected
        assert_eq!(cut.vertices(), vec![0, 1]);
        assert_eq!(phi.oblivious_expected_assignment(&StepFunction::uniform()), int(1));
    }

    #[test]
    fn single_clause() {
        let mut phi = TwoAndInstance::new(2);
        phi.add_clause(Literal::pos(0), Literal::pos(1), int(1)).unwrap();
        let red = phi.reduce_to_dicut();
        let e = red.graph.edges();
        assert_eq!((e[0].source, e[0].target), (0, 3));
        assert_eq!((e[1].source, e[1].target), (2, 1));
        assert_eq!(brute_force_opt(&red.graph).unwrap().1, int(1));
        assert_eq!(phi.brute_force_assignment().unwrap().1, int(1));
        let ones = StepFunction::new(vec![], vec![Rational::one()]).unwrap();
        assert_eq!(phi.oblivious_expected_assignment(&ones), int(1));
    }

    #[test]
    fn variable_biases() {
        let mut phi = TwoAndInstance::new(4);
        phi.add_clause(Literal::pos(0), Literal::pos(1), int(2)).unwrap();
        phi.add_clause(Literal::neg(0), Literal::pos(2), int(2)).unwrap();
        assert_eq!(phi.variable_bias(0).unwrap(), half());
        assert_eq!(phi.variable_bias(1).unwrap(), Rational::one());
        assert_eq!(phi.variable_bias(3).unwrap(), half());
        assert!(!phi.has_occurrences(3));
        let mut psi = TwoAndInstance::new(2);
        psi.add_clause(Literal::pos(0), Literal::pos(1), int(3)).unwrap();
        psi.add_clause(Literal::neg(0), Literal::pos(1), int(1)).unwrap();
        assert_eq!(psi.variable_bias(0).unwrap(), ratio(3, 4));
    }

    #[test]
    fn rejects_degenerate_clauses() {
        let mut phi = TwoAndInstance::new(2);
        assert!(phi.add_clause(Literal::pos(0), Literal::neg(0), int(1)).is_err());
        assert!(phi.add_clause(Literal::pos(0), Literal::pos(0), int(1)).is_err());
        assert!(phi.add_clause(Literal::pos(0), Literal::pos(2), int(1)).is_err());
        assert!(phi.add_clause(Literal::pos(0), Literal::pos(1), int(0)).is_err());
        assert_eq!(TwoAndInstance::new(0).assignment_weight(&Assignment(vec![])).unwrap(), int(0));
    }

    #[test]
    fn consistent_sampling_is_an_assignment() {
        let phi = four_clause();
        let red = phi.reduce_to_dicut();
        let f = StepFunction::f_delta(&ratio(1, 3)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let cut = phi.sample_literal_cut(&f, &mut rng, true);
            let a = Assignment((0..2).map(|v| cut.contains(2 * v)).collect());
            assert_eq!(red.cut_of(&a), cut);
            assert_eq!(red.graph.cut_weight(&cut).unwrap(), phi.assignment_weight(&a).unwrap());
        }
        assert_eq!(phi.sample_assignment(&f, 3, true), phi.sample_assignment(&f, 3, true));
    }
}
