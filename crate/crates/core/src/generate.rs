//! Seeded random instances for tests, benchmarks and the CLI.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::dynamic::UpdateEvent;
use crate::fair::{AdditiveValuations, OracleValuations};
use crate::graph::{BipartiteGraph, EdgeWeights, Vertex};

fn weigh(rng: &mut impl Rng, graph: &BipartiteGraph, range: &RangeInclusive<i64>) -> EdgeWeights<i64> {
    let values = (0..graph.edge_count()).map(|_| rng.gen_range(range.clone())).collect();
    EdgeWeights::new(graph, values).expect("generated weights are in range")
}

/// Complete `left x right` graph with uniform weights.
pub fn complete_instance(
    rng: &mut impl Rng,
    left: usize,
    right: usize,
    range: RangeInclusive<i64>,
) -> (BipartiteGraph, EdgeWeights<i64>) {
    let graph = BipartiteGraph::complete(left, right);
    let weights = weigh(rng, &graph, &range);
    (graph, weights)
}

/// Balanced `n x n` graph containing a random perfect matching plus every
/// other pair independently with probability `density`.
pub fn planted_instance(
    rng: &mut impl Rng,
    n: usize,
    density: f64,
    range: RangeInclusive<i64>,
) -> (BipartiteGraph, EdgeWeights<i64>) {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges = Vec::new();
    for (u, &pu) in perm.iter().enumerate() {
        for v in 0..n {
            if v == pu || rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let graph = BipartiteGraph::new(n, n, edges).expect("generated edges are distinct");
    let weights = weigh(rng, &graph, &range);
    (graph, weights)
}

/// New weights for the whole star of a uniformly chosen vertex.
pub fn random_event(rng: &mut impl Rng, graph: &BipartiteGraph, range: RangeInclusive<i64>) -> UpdateEvent<i64> {
    let left = rng.gen_range(0..graph.vertex_count()) < graph.left_count();
    let center = if left {
        Vertex::Left(rng.gen_range(0..graph.left_count()))
    } else {
        Vertex::Right(rng.gen_range(0..graph.right_count()))
    };
    let weights = graph
        .incident(center)
        .iter()
        .map(|&e| {
            let (u, v) = graph.endpoints(e);
            (if left { v } else { u }, rng.gen_range(range.clone()))
        })
        .collect();
    UpdateEvent::new(center, weights)
}

/// Item values drawn uniformly from `0..=max`.
pub fn additive(rng: &mut impl Rng, agents: usize, items: usize, max: u64) -> AdditiveValuations {
    let rows = (0..agents)
        .map(|_| (0..items).map(|_| rng.gen_range(0..=max)).collect())
        .collect();
    AdditiveValuations::new(rows).expect("rows have equal length")
}

/// Additive values where every agent ranks items in index order:
/// `v_i(0) >= v_i(1) >= ...`.
pub fn ordered_additive(rng: &mut impl Rng, agents: usize, items: usize, max: u64) -> AdditiveValuations {
    let rows = (0..agents)
        .map(|_| {
            let mut row: Vec<u64> = (0..items).map(|_| rng.gen_range(0..=max)).collect();
            row.sort_unstable_by(|a, b| b.cmp(a));
            row
        })
        .collect();
    AdditiveValuations::new(rows).expect("rows have equal length")
}

/// Each agent values a bundle at its single best item.
pub fn unit_demand(rng: &mut impl Rng, agents: usize, items: usize, max: u64) -> OracleValuations {
    let table = additive(rng, agents, items, max);
    OracleValuations::new(agents, items, move |i, bundle| {
        bundle.iter().map(|k| table.item_value(i, k)).max().unwrap_or(0)
    })
}

/// Additive values capped by a per-agent budget.
pub fn budgeted_additive(rng: &mut impl Rng, agents: usize, items: usize, max: u64) -> OracleValuations {
    let table = additive(rng, agents, items, max);
    let budgets: Vec<u64> = table
        .rows()
        .iter()
        .map(|row| rng.gen_range(0..=row.iter().sum::<u64>()))
        .collect();
    OracleValuations::new(agents, items, move |i, bundle| {
        let total: u64 = bundle.iter().map(|k| table.item_value(i, k)).sum();
        total.min(budgets[i])
    })
}
