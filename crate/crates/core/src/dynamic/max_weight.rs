//! Maximum-weight matching through a right-perfect minimum-weight instance.
//!
//! Weights are negated, edges that would become positive are dropped, and
//! every right vertex gets a private zero-weight left companion so that
//! leaving it unmatched is always possible.

use super::RightPerfectState;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId, EdgeWeights, Matching};
use crate::weight::{self, Weight};

#[derive(Debug, Clone)]
pub struct MaxWeightReduction<W> {
    pub graph: BipartiteGraph,
    pub weights: EdgeWeights<W>,
    /// Original edge id for every reduced edge; `None` for companion edges.
    pub back_map: Vec<Option<EdgeId>>,
    /// Whether the original instance was transposed to put the larger side
    /// on the left. Edge ids are unaffected.
    pub transposed: bool,
}

impl<W: Weight> MaxWeightReduction<W> {
    /// Original edges used by a matching of the reduced instance.
    pub fn recover(&self, matching: &Matching) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = matching.edges().filter_map(|e| self.back_map[e]).collect();
        out.sort_unstable();
        out
    }
}

pub fn from_max_weight_instance<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
) -> Result<MaxWeightReduction<W>> {
    let transposed = graph.left_count() < graph.right_count();
    let oriented;
    let graph = if transposed {
        oriented = graph.transpose();
        &oriented
    } else {
        graph
    };
    let (left, right) = (graph.left_count(), graph.right_count());
    if right == 0 {
        return Err(Error::Infeasible("the smaller side is empty".into()));
    }
    let mut edges = Vec::new();
    let mut values = Vec::new();
    let mut back_map = Vec::new();
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let w = weights.get(e);
        if w >= W::zero() {
            edges.push((u, v));
            values.push(-w);
            back_map.push(Some(e));
        }
    }
    for v in 0..right {
        edges.push((left + v, v));
        values.push(W::zero());
        back_map.push(None);
    }
    let reduced = BipartiteGraph::new(left + right, right, edges)?;
    let weights = EdgeWeights::new(&reduced, values)?;
    Ok(MaxWeightReduction {
        graph: reduced,
        weights,
        back_map,
        transposed,
    })
}

/// Maximum total weight over all matchings, with one optimal edge set.
pub fn max_weight_matching<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
) -> Result<(W, Vec<EdgeId>)> {
    let reduction = from_max_weight_instance(graph, weights)?;
    let state = RightPerfectState::solve(reduction.graph.clone(), reduction.weights.clone())?;
    let edges = reduction.recover(state.matching());
    let mut total = W::zero();
    for &e in &edges {
        total = weight::add(total, weights.get(e))?;
    }
    Ok((total, edges))
}
