//! Baseline algorithms and portfolios (mixed and max-of-set).

use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{sample_cut, Cut, WeightedDigraph};
use crate::rational::{half, to_f64, Rational};
use crate::selection::StepFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgorithmSpec {
    Oblivious(StepFunction),
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PortfolioSpec {
    pub members: Vec<AlgorithmSpec>,
    pub mix_weights: Option<Vec<Rational>>,
}

impl PortfolioSpec {
    pub fn new(members: Vec<AlgorithmSpec>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyList);
        }
        Ok(Self {
            members,
            mix_weights: None,
        })
    }

    pub fn with_mix(mut self, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != self.members.len() {
            return Err(Error::LengthMismatch {
                expected: self.members.len(),
                actual: weights.len(),
            });
        }
        if weights.iter().any(|w| *w < Rational::zero()) || weights.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::InvalidParameter("mix weights must be nonnegative and sum to 1".into()));
        }
        self.mix_weights = Some(weights);
        Ok(self)
    }
}

/// Selects every vertex whose outweight is at least its inweight.
pub fn greedy_cut(g: &WeightedDigraph) -> Cut {
    let h = half();
    Cut::from_flags(g.biases().0.iter().map(|b| *b >= h).collect())
}

/// Expected cut weight of a single member; greedy contributes its
/// deterministic cut weight.
pub fn member_value(g: &WeightedDigraph, member: &AlgorithmSpec) -> Result<Rational> {
    g.require_positive_weight()?;
    match member {
        AlgorithmSpec::Oblivious(f) => g.expected_cut_weight(f),
        AlgorithmSpec::Greedy => g.cut_weight(&greedy_cut(g)),
    }
}

/// Max over members of the expected weight.
pub fn portfolio_maxexp(g: &WeightedDigraph, p: &PortfolioSpec) -> Result<Rational> {
    let mut best = None::<Rational>;
    for m in &p.members {
        let v = member_value(g, m)?;
        if best.as_ref().is_none_or(|b| v > *b) {
            best = Some(v);
        }
    }
    best.ok_or(Error::EmptyList)
}

/// Expected weight when a member is picked according to the mix weights.
pub fn portfolio_mix(g: &WeightedDigraph, p: &PortfolioSpec) -> Result<Rational> {
    let weights = p
        .mix_weights
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("mix requires mix weights".into()))?;
    let mut total = Rational::zero();
    for (m, w) in p.members.iter().zip(weights) {
        total += member_value(g, m)? * w;
    }
    Ok(total)
}

/// Monte-Carlo estimate of the expected maximum over members.
pub fn portfolio_expmax(g: &WeightedDigraph, p: &PortfolioSpec, seed: u64, trials: u64) -> Result<f64> {
    g.require_positive_weight()?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let weights: Vec<f64> = g.edges().iter().map(|e| to_f64(&e.weight)).collect();
    let weight_of = |cut: &Cut| -> f64 {
        g.edges()
            .iter()
            .zip(&weights)
            .filter(|(e, _)| cut.contains(e.source) && !cut.contains(e.target))
            .map(|(_, w)| w)
            .sum()
    };
    enum Prepared {
        Random(Vec<f64>),
        Fixed(f64),
    }
    let prepared: Vec<Prepared> = p
        .members
        .iter()
        .map(|m| match m {
            AlgorithmSpec::Oblivious(f) => {
                Prepared::Random(g.selection_probabilities(f).iter().map(to_f64).collect())
            }
            AlgorithmSpec::Greedy => Prepared::Fixed(weight_of(&greedy_cut(g))),
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    for _ in 0..trials {
        let mut best = f64::NEG_INFINITY;
        for m in &prepared {
            let w = match m {
                Prepared::Random(prob) => weight_of(&sample_cut(prob, &mut rng)),
                Prepared::Fixed(w) => *w,
            };
            best = best.max(w);
        }
        sum += best;
    }
    Ok(sum / trials as f64)
}
