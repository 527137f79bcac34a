use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Cut, WeightedDigraph};
use crate::error::{Error, Result};
use crate::rational::to_f64;
use crate::selection::StepFunction;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Draws each vertex independently with probability `p[v]`.
pub fn sample_cut<R: Rng + ?Sized>(p: &[f64], rng: &mut R) -> Cut {
    Cut::from_flags(p.iter().map(|&pv| rng.random::<f64>() < pv).collect())
}

pub(crate) fn weights_f64(g: &WeightedDigraph) -> Vec<f64> {
    g.edges().iter().map(|e| to_f64(&e.weight)).collect()
}

pub(crate) fn cut_weight_f64(g: &WeightedDigraph, weights: &[f64], cut: &Cut) -> f64 {
    g.edges()
        .iter()
        .zip(weights)
        .filter(|(e, _)| cut.contains(e.source) && !cut.contains(e.target))
        .map(|(_, w)| w)
        .sum()
}

/// Seeded Monte-Carlo estimate of the expected cut weight under `f`.
pub fn monte_carlo_cut_weight(g: &WeightedDigraph, f: &StepFunction, trials: u64, seed: u64) -> Result<MonteCarloEstimate> {
    g.require_positive_weight()?;
    if trials < 2 {
        return Err(Error::InvalidParameter("at least two trials are required".into()));
    }
    let p: Vec<f64> = g.selection_probabilities(f).iter().map(to_f64).collect();
    let weights = weights_f64(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let cut = sample_cut(&p, &mut rng);
        let w = cut_weight_f64(g, &weights, &cut);
        sum += w;
        sum_sq += w * w;
    }
    let n = trials as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(MonteCarloEstimate {
        mean,
        std_error: num_traits::Float::sqrt(var / n),
        trials,
    })
}
