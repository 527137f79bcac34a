//! Turns an optimal program solution back into a worst-case graph.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::model::LpModel;
use crate::error::{Error, Result};
use crate::graph::{Cut, WeightedDigraph};
use crate::rational::Rational;
use crate::selection::StepFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub graph: WeightedDigraph,
    /// The cut `S` the program normalized to weight one.
    pub cut: Cut,
    /// Set of the model that every vertex stands for; `None` for auxiliary vertices.
    pub origin: Vec<Option<usize>>,
}

impl Witness {
    /// `expected_cut_weight / w(S)`: an upper bound on the ratio of `f` on this
    /// graph, since the optimum is at least `w(S)`.
    pub fn ratio(&self, f: &StepFunction) -> Result<Rational> {
        let cut = self.graph.cut_weight(&self.cut)?;
        if cut.is_zero() {
            return Err(Error::ZeroTotalWeight);
        }
        Ok(self.graph.expected_cut_weight(f)? / cut)
    }
}

/// Builds the witness graph from exact edge weights.
///
/// Each set becomes one vertex, or two vertices when it carries a self-loop
/// (the loop becomes a pair of opposite edges between the halves). A vertex
/// whose bias sits on an interval end where the function takes another
/// value gets a small edge to or from one shared auxiliary vertex, which
/// moves the bias strictly inside. The total weight of these edges is at most `epsilon`
/// times the weight of the cut, so the ratio grows by at most `epsilon`.
pub fn extract_witness(model: &LpModel, x: &[Rational], epsilon: &Rational) -> Result<Witness> {
    if *epsilon <= Rational::zero() {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let e = model.edge_weights(x);
    let s = model.set_count();
    let degree: Vec<Rational> = (0..s)
        .map(|i| (0..s).map(|j| &e[i][j] + &e[j][i]).sum())
        .collect();
    // Vertices of each set.
    let mut copies: Vec<Vec<usize>> = vec![Vec::new(); s];
    let mut origin = Vec::new();
    for i in 0..s {
        if degree[i].is_zero() {
            continue;
        }
        let count = if e[i][i].is_zero() { 1 } else { 2 };
        for _ in 0..count {
            copies[i].push(origin.len());
            origin.push(Some(i));
        }
    }
    let mut g = WeightedDigraph::new(origin.len());
    let two = Rational::from_integer(2.into());
    for a in 0..s {
        for b in 0..s {
            let w = &e[a][b];
            if w.is_zero() {
                continue;
            }
            if a == b {
                let half = w / &two;
                g.add_edge(copies[a][0], copies[a][1], half.clone())?;
                g.add_edge(copies[a][1], copies[a][0], half)?;
                continue;
            }
            let share = w / Rational::from_integer(((copies[a].len() * copies[b].len()) as i64).into());
            for &u in &copies[a] {
                for &v in &copies[b] {
                    g.add_edge(u, v, share.clone())?;
                }
            }
        }
    }
    let cut_weight: Rational = (0..s)
        .filter(|&a| model.is_inside(a))
        .flat_map(|a| (0..s).filter(|&b| !model.is_inside(b)).map(move |b| (a, b)))
        .map(|(a, b)| e[a][b].clone())
        .sum();
    let total: Rational = degree.iter().sum();
    let out = g.outweights();
    let inw = g.inweights();
    let biases = g.biases();
    let four = Rational::from_integer(4.into());
    let mut aux = None;
    for v in 0..origin.len() {
        let Some(set) = origin[v] else { continue };
        let iv = model.interval_of(set);
        if iv.is_point() {
            continue;
        }
        let d = &out[v] + &inw[v];
        let bias = biases.get(v);
        let at_lower = *bias == iv.lower && !iv.lower_attained;
        let at_upper = *bias == iv.upper && !iv.upper_attained;
        if !at_lower && !at_upper {
            continue;
        }
        let mut delta = epsilon * &cut_weight * &d / &total;
        let cap = &d * (&iv.upper - &iv.lower) / &four;
        if delta > cap {
            delta = cap;
        }
        let aux = *aux.get_or_insert_with(|| g.add_vertex());
        if at_lower {
            g.add_edge(v, aux, delta)?;
        } else {
            g.add_edge(aux, v, delta)?;
        }
    }
    if aux.is_some() {
        origin.push(None);
    }
    let flags = origin
        .iter()
        .map(|o| o.is_some_and(|set| model.is_inside(set)))
        .collect();
    Ok(Witness {
        graph: g,
        cut: Cut::from_flags(flags),
        origin,
    })
}
