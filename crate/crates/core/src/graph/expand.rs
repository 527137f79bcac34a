use alloc::vec::Vec;

use num_traits::{One, ToPrimitive};

use super::{VertexId, WeightedDigraph};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, Rational};

/// Largest number of copies per vertex accepted by default.
pub const DEFAULT_EXPANSION_LIMIT: usize = 4096;

/// Result of blowing a rational-weight graph up into a unit-weight one.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub graph: WeightedDigraph,
    /// Copies per original vertex (`M`). Copy `j` of vertex `v` has id `v * M + j`.
    pub copies: usize,
    /// Integer weights `w_e = w(e) * M / max_weight` of the normalized graph.
    pub integer_weights: Vec<u64>,
    pub max_weight: Rational,
}

impl Expansion {
    pub fn copy_of(&self, v: VertexId, j: usize) -> VertexId {
        v * self.copies + j
    }

    /// The original graph with each edge weight replaced by its integer `w_e`.
    pub fn integer_graph(&self, original: &WeightedDigraph) -> WeightedDigraph {
        let mut g = WeightedDigraph::new(original.vertex_count());
        for (e, &w) in original.edges().iter().zip(&self.integer_weights) {
            g.add_edge(e.source, e.target, Rational::from_integer(w.into()))
                .expect("edge of a valid graph");
        }
        g
    }
}

/// Replaces every edge `(u, v)` of normalized integer weight `w_e` by a
/// `w_e`-regular bipartite digraph between the `M` copies of `u` and of `v`:
/// copy `j` of `u` points to copies `j, j+1, ..., j+w_e-1 (mod M)` of `v`.
pub fn expand_to_unweighted(g: &WeightedDigraph, limit: usize) -> Result<Expansion> {
    g.require_positive_weight()?;
    let max_weight = g
        .edges()
        .iter()
        .map(|e| &e.weight)
        .max()
        .cloned()
        .expect("nonempty");
    let normalized: Vec<Rational> = g.edges().iter().map(|e| &e.weight / &max_weight).collect();
    let m_big = common_denominator(normalized.iter());
    let copies = m_big
        .to_usize()
        .filter(|&m| m <= limit)
        .ok_or(Error::InstanceTooLarge {
            size: m_big.to_usize().unwrap_or(usize::MAX),
            limit,
        })?;
    let m_q = Rational::from_integer(m_big);
    let integer_weights: Vec<u64> = normalized
        .iter()
        .map(|w| (w * &m_q).to_integer().to_u64().expect("bounded by M"))
        .collect();
    let vertex_count = g
        .vertex_count()
        .checked_mul(copies)
        .ok_or(Error::InstanceTooLarge { size: usize::MAX, limit })?;
    let mut out = WeightedDigraph::new(vertex_count);
    for (e, &w) in g.edges().iter().zip(&integer_weights) {
        for j in 0..copies {
            for t in 0..w as usize {
                let target = e.target * copies + (j + t) % copies;
                out.add_edge(e.source * copies + j, target, Rational::one())?;
            }
        }
    }
    Ok(Expansion {
        graph: out,
        copies,
        integer_weights,
        max_weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn unit_edge_is_unchanged() {
        let g = WeightedDigraph::from_edges(2, [(0, 1, int(1))]).unwrap();
        let ex = expand_to_unweighted(&g, 16).unwrap();
        assert_eq!(ex.copies, 1);
        assert_eq!(ex.graph, g);
    }

    #[test]
    fn two_thirds_one_third() {
        let g = WeightedDigraph::from_edges(2, [(0, 1, ratio(2, 3)), (1, 0, ratio(1, 3))]).unwrap();
        let ex = expand_to_unweighted(&g, 16).unwrap();
        assert_eq!(ex.copies, 2);
        assert_eq!(ex.integer_weights, [2, 1]);
        assert_eq!(ex.graph.edges().len(), 6);
        let b = ex.graph.biases();
        for j in 0..2 {
            assert_eq!(b.get(ex.copy_of(0, j)), &ratio(2, 3));
            assert_eq!(b.get(ex.copy_of(1, j)), &ratio(1, 3));
        }
    }

    #[test]
    fn copy_limit() {
        let g = WeightedDigraph::from_edges(2, [(0, 1, int(1)), (1, 0, ratio(1, 1000))]).unwrap();
        assert!(matches!(expand_to_unweighted(&g, 100), Err(Error::InstanceTooLarge { .. })));
    }
}
