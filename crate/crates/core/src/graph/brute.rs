use alloc::vec;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use super::{Cut, WeightedDigraph};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

pub const DEFAULT_BRUTE_FORCE_LIMIT: usize = 24;

/// Maximum directed cut by exhaustive search over all `2^n` subsets.
pub fn brute_force_opt(g: &WeightedDigraph) -> Result<(Cut, Rational)> {
    brute_force_opt_with_limit(g, DEFAULT_BRUTE_FORCE_LIMIT)
}

/// As [`brute_force_opt`] with an explicit vertex limit. Ties resolve to the
/// numerically smallest selection bitmask (vertex 0 is the lowest bit).
pub fn brute_force_opt_with_limit(g: &WeightedDigraph, limit: usize) -> Result<(Cut, Rational)> {
    let n = g.vertex_count();
    if n > limit || n > 63 {
        return Err(Error::InstanceTooLarge { size: n, limit });
    }
    let denom = common_denominator(g.edges().iter().map(|e| &e.weight));
    let scaled: Option<Vec<i64>> = g
        .edges()
        .iter()
        .map(|e| (&e.weight * Rational::from_integer(denom.clone())).to_integer().to_i64())
        .collect();
    let total_fits = scaled
        .as_ref()
        .map(|w| w.iter().try_fold(0i64, |acc, &x| acc.checked_add(x)).is_some())
        .unwrap_or(false);
    let mask = match scaled {
        Some(weights) if total_fits => gray_code_search(g, &weights),
        _ => exact_search(g),
    };
    let cut = Cut::from_mask(n, mask);
    let weight = g.cut_weight(&cut)?;
    Ok((cut, weight))
}

fn gray_code_search(g: &WeightedDigraph, weights: &[i64]) -> u64 {
    let n = g.vertex_count();
    let mut out_adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let mut in_adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (e, &w) in g.edges().iter().zip(weights) {
        out_adj[e.source].push((e.target, w));
        in_adj[e.target].push((e.source, w));
    }
    let mut mask: u64 = 0;
    let mut current: i64 = 0;
    let mut best = (0i64, 0u64);
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let mut delta = 0i64;
        for &(t, w) in &out_adj[v] {
            if mask & (1 << t) == 0 {
                delta += w;
            }
        }
        for &(s, w) in &in_adj[v] {
            if mask & (1 << s) != 0 {
                delta -= w;
            }
        }
        if mask & bit == 0 {
            current += delta;
        } else {
            current -= delta;
        }
        mask ^= bit;
        if current > best.0 || (current == best.0 && mask < best.1) {
            best = (current, mask);
        }
    }
    best.1
}

fn exact_search(g: &WeightedDigraph) -> u64 {
    let n = g.vertex_count();
    let mut best = (Rational::zero(), 0u64);
    for mask in 1u64..(1u64 << n) {
        let w: Rational = g
            .edges()
            .iter()
            .filter(|e| mask >> e.source & 1 == 1 && mask >> e.target & 1 == 0)
            .map(|e| &e.weight)
            .sum();
        if w > best.0 {
            best = (w, mask);
        }
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use num_bigint::BigInt;

    #[test]
    fn three_vertex_example() {
        // X=0, Y=1, Z=2
        let g = WeightedDigraph::from_edges(
            3,
            [(0, 2, int(2)), (0, 1, int(3)), (1, 0, int(3) + ratio(1, 100))],
        )
        .unwrap();
        let (cut, w) = brute_force_opt(&g).unwrap();
        assert_eq!(cut.vertices(), vec![0]);
        assert_eq!(w, int(5));
    }

    #[test]
    fn single_edge() {
        let g = WeightedDigraph::from_edges(2, [(0, 1, ratio(7, 3))]).unwrap();
        let (cut, w) = brute_force_opt(&g).unwrap();
        assert_eq!(cut.vertices(), vec![0]);
        assert_eq!(w, ratio(7, 3));
    }

    #[test]
    fn empty_graph_prefers_empty_cut() {
        let g = WeightedDigraph::new(4);
        let (cut, w) = brute_force_opt(&g).unwrap();
        assert!(cut.vertices().is_empty());
        assert_eq!(w, Rational::zero());
    }

    #[test]
    fn limit_is_enforced() {
        let g = WeightedDigraph::new(5);
        assert_eq!(
            brute_force_opt_with_limit(&g, 4),
            Err(Error::InstanceTooLarge { size: 5, limit: 4 })
        );
    }

    #[test]
    fn huge_denominators_fall_back_to_exact_scan() {
        let big = Rational::new(BigInt::from(1), BigInt::from(10).pow(30u32));
        let g = WeightedDigraph::from_edges(3, [(0, 1, big.clone()), (1, 2, int(1)), (2, 0, big)]).unwrap();
        let (cut, w) = brute_force_opt(&g).unwrap();
        assert_eq!(w, int(1));
        assert_eq!(cut.vertices(), vec![1]);
    }
}
