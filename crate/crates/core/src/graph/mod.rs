//! Weighted directed graphs, cuts, biases and exact expected cut weights.

mod brute;
mod expand;
mod sample;

pub use brute::{brute_force_opt, brute_force_opt_with_limit, DEFAULT_BRUTE_FORCE_LIMIT};
pub use expand::{expand_to_unweighted, Expansion, DEFAULT_EXPANSION_LIMIT};
pub use sample::{monte_carlo_cut_weight, sample_cut, MonteCarloEstimate};

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{half, to_f64, Rational};
use crate::selection::StepFunction;

pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub weight: Rational,
}

/// Directed graph with positive rational edge weights. Parallel edges are
/// kept as given; self-loops are rejected.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeightedDigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

/// The selected side `S` of a directed cut.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    selected: Vec<bool>,
}

impl Cut {
    pub fn empty(vertex_count: usize) -> Self {
        Self {
            selected: vec![false; vertex_count],
        }
    }

    pub fn from_vertices(vertex_count: usize, vertices: &[VertexId]) -> Result<Self> {
        let mut cut = Self::empty(vertex_count);
        for &v in vertices {
            if v >= vertex_count {
                return Err(Error::VertexOutOfRange { vertex: v, vertex_count });
            }
            cut.selected[v] = true;
        }
        Ok(cut)
    }

    pub fn from_mask(vertex_count: usize, mask: u64) -> Self {
        Self {
            selected: (0..vertex_count).map(|v| mask >> v & 1 == 1).collect(),
        }
    }

    pub fn from_flags(selected: Vec<bool>) -> Self {
        Self { selected }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.selected.get(v).copied().unwrap_or(false)
    }

    pub fn vertex_count(&self) -> usize {
        self.selected.len()
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.selected
            .iter()
            .enumerate()
            .filter_map(|(v, &s)| s.then_some(v))
            .collect()
    }

    pub fn flags(&self) -> &[bool] {
        &self.selected
    }
}

/// Per-vertex bias `out / (out + in)`; `1/2` for vertices without incident weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasProfile(pub Vec<Rational>);

impl BiasProfile {
    pub fn get(&self, v: VertexId) -> &Rational {
        &self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl WeightedDigraph {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn from_edges(vertex_count: usize, edges: impl IntoIterator<Item = (VertexId, VertexId, Rational)>) -> Result<Self> {
        let mut g = Self::new(vertex_count);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, source: VertexId, target: VertexId, weight: Rational) -> Result<()> {
        for v in [source, target] {
            if v >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
        }
        if source == target {
            return Err(Error::SelfLoop(source));
        }
        if weight <= Rational::zero() {
            return Err(Error::NonPositiveWeight(weight));
        }
        self.edges.push(Edge { source, target, weight });
        Ok(())
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.iter().map(|e| &e.weight).sum()
    }

    pub(crate) fn require_positive_weight(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::ZeroTotalWeight);
        }
        Ok(())
    }

    pub fn outweights(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.vertex_count];
        for e in &self.edges {
            out[e.source] += &e.weight;
        }
        out
    }

    pub fn inweights(&self) -> Vec<Rational> {
        let mut inw = vec![Rational::zero(); self.vertex_count];
        for e in &self.edges {
            inw[e.target] += &e.weight;
        }
        inw
    }

    pub fn biases(&self) -> BiasProfile {
        let out = self.outweights();
        let inw = self.inweights();
        BiasProfile(
            out.into_iter()
                .zip(inw)
                .map(|(o, i)| {
                    let d = &o + &i;
                    if d.is_zero() {
                        half()
                    } else {
                        o / d
                    }
                })
                .collect(),
        )
    }

    pub fn cut_weight(&self, cut: &Cut) -> Result<Rational> {
        if cut.vertex_count() != self.vertex_count {
            return Err(Error::LengthMismatch {
                expected: self.vertex_count,
                actual: cut.vertex_count(),
            });
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| cut.contains(e.source) && !cut.contains(e.target))
            .map(|e| &e.weight)
            .sum())
    }

    /// Selection probability `f(bias(v))` for every vertex.
    pub fn selection_probabilities(&self, f: &StepFunction) -> Vec<Rational> {
        self.biases().0.iter().map(|b| f.value_at(b).clone()).collect()
    }

    /// Exact expected weight of the cut chosen by the oblivious algorithm `f`.
    pub fn expected_cut_weight(&self, f: &StepFunction) -> Result<Rational> {
        self.require_positive_weight()?;
        let p = self.selection_probabilities(f);
        Ok(self.expected_cut_weight_with(&p))
    }

    /// Expected cut weight for arbitrary per-vertex probabilities.
    pub fn expected_cut_weight_with(&self, p: &[Rational]) -> Rational {
        let one = Rational::one();
        self.edges
            .iter()
            .map(|e| &e.weight * &p[e.source] * (&one - &p[e.target]))
            .sum()
    }

    /// Floating evaluation of [`Self::expected_cut_weight`].
    pub fn expected_cut_weight_f64(&self, f: &StepFunction) -> Result<f64> {
        self.require_positive_weight()?;
        let p: Vec<f64> = self.selection_probabilities(f).iter().map(to_f64).collect();
        Ok(self
            .edges
            .iter()
            .map(|e| to_f64(&e.weight) * p[e.source] * (1.0 - p[e.target]))
            .sum())
    }

    /// Every edge reversed, weights kept.
    pub fn invert(&self) -> Self {
        Self {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    source: e.target,
                    target: e.source,
                    weight: e.weight.clone(),
                })
                .collect(),
        }
    }

    /// Disjoint union; component `i` occupies the next `gs[i].vertex_count()`
    /// ids and has its weights multiplied by `scales[i]`.
    pub fn disjoint_union(gs: &[&WeightedDigraph], scales: &[Rational]) -> Result<Self> {
        if gs.is_empty() {
            return Err(Error::EmptyList);
        }
        if gs.len() != scales.len() {
            return Err(Error::LengthMismatch {
                expected: gs.len(),
                actual: scales.len(),
            });
        }
        if let Some(s) = scales.iter().find(|s| **s <= Rational::zero()) {
            return Err(Error::NonPositiveWeight(s.clone()));
        }
        let mut out = Self::new(gs.iter().map(|g| g.vertex_count).sum());
        let mut offset = 0;
        for (g, scale) in gs.iter().zip(scales) {
            out.edges.extend(g.edges.iter().map(|e| Edge {
                source: e.source + offset,
                target: e.target + offset,
                weight: &e.weight * scale,
            }));
            offset += g.vertex_count;
        }
        Ok(out)
    }

    /// `k` unscaled disjoint copies.
    pub fn replicate(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("replication count must be positive".into()));
        }
        let gs = vec![self; k];
        Self::disjoint_union(&gs, &vec![Rational::one(); k])
    }
}
