//! Exhaustive references for small instances. Deliberately independent of
//! the shortest-path machinery: matchings come from dynamic programming over
//! subsets of right vertices, cycles from a super-source relaxation sweep or
//! plain enumeration.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId, EdgeWeights, NodeId};
use crate::residual::{Arc, ResidualGraph};
use crate::weight::{self, Weight};

pub const MATCHING_CAP: usize = 10;
pub const CYCLE_SEARCH_CAP: usize = 20;
pub const CYCLE_ENUMERATION_CAP: usize = 12;

fn check_cap(cap: usize, got: usize) -> Result<()> {
    if got > cap {
        Err(Error::SizeCap { cap, got })
    } else {
        Ok(())
    }
}

/// Minimum-weight matching of exactly `size` edges, searched over every
/// choice of (left vertex, right vertex) pairs. `None` when no such matching
/// exists.
pub fn brute_min_matching_of_size<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
    size: usize,
) -> Result<Option<(W, Vec<EdgeId>)>> {
    check_cap(MATCHING_CAP, graph.left_count().max(graph.right_count()))?;
    let table = subset_table(graph, weights, |a, b| a < b)?;
    let best = table
        .last_row()
        .iter()
        .enumerate()
        .filter(|(mask, v)| (*mask as u32).count_ones() as usize == size && v.is_some())
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(mask, _)| mask);
    Ok(best.map(|mask| table.reconstruct(graph.left_count(), mask)))
}

/// Minimum-weight perfect matching by exhaustive search, or `None` when the
/// graph has none.
pub fn brute_min_perfect_matching<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
) -> Result<Option<(W, Vec<EdgeId>)>> {
    if graph.left_count() != graph.right_count() {
        check_cap(MATCHING_CAP, graph.left_count().max(graph.right_count()))?;
        return Ok(None);
    }
    brute_min_matching_of_size(graph, weights, graph.left_count())
}

/// Maximum-weight matching of any size; the empty matching scores zero.
pub fn brute_max_matching<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
) -> Result<(W, Vec<EdgeId>)> {
    check_cap(MATCHING_CAP, graph.left_count().max(graph.right_count()))?;
    let table = subset_table(graph, weights, |a, b| a > b)?;
    let (mask, value) = table
        .last_row()
        .iter()
        .enumerate()
        .filter_map(|(mask, v)| v.map(|v| (mask, v)))
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("empty matching is always feasible");
    let (_, edges) = table.reconstruct(graph.left_count(), mask);
    Ok((value, edges))
}

/// `best[i][mask]`: optimum over matchings that use only the first `i` left
/// vertices and exactly the right vertices in `mask`.
struct SubsetTable<W> {
    width: usize,
    best: Vec<Vec<Option<W>>>,
    choice: Vec<Vec<Option<EdgeId>>>,
    graph_edges: Vec<(usize, usize)>,
}

impl<W: Weight> SubsetTable<W> {
    fn last_row(&self) -> &[Option<W>] {
        self.best.last().expect("at least one row")
    }

    fn reconstruct(&self, rows: usize, mut mask: usize) -> (W, Vec<EdgeId>) {
        let value = self.best[rows][mask].expect("reachable state");
        let mut edges = Vec::new();
        for i in (1..=rows).rev() {
            if let Some(e) = self.choice[i][mask] {
                edges.push(e);
                mask &= !(1 << self.graph_edges[e].1);
            }
        }
        debug_assert_eq!(mask, 0);
        debug_assert!(self.width > 0 || edges.is_empty());
        edges.reverse();
        (value, edges)
    }
}

fn subset_table<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
    better: impl Fn(W, W) -> bool,
) -> Result<SubsetTable<W>> {
    let rows = graph.left_count();
    let width = graph.right_count();
    let states = 1usize << width;
    let mut best = vec![vec![None; states]; rows + 1];
    let mut choice = vec![vec![None; states]; rows + 1];
    best[0][0] = Some(W::zero());
    for i in 0..rows {
        for mask in 0..states {
            let Some(here) = best[i][mask] else { continue };
            // Leave left vertex i unmatched.
            if best[i + 1][mask].is_none_or(|cur| better(here, cur)) {
                best[i + 1][mask] = Some(here);
                choice[i + 1][mask] = None;
            }
            for &e in graph.left_edges(i) {
                let j = graph.endpoints(e).1;
                if mask & (1 << j) != 0 {
                    continue;
                }
                let next = mask | (1 << j);
                let value = weight::add(here, weights.get(e))?;
                if best[i + 1][next].is_none_or(|cur| better(value, cur)) {
                    best[i + 1][next] = Some(value);
                    choice[i + 1][next] = Some(e);
                }
            }
        }
    }
    Ok(SubsetTable {
        width,
        best,
        choice,
        graph_edges: graph.edges().to_vec(),
    })
}

/// Any negative cycle of the digraph, found by relaxing from a virtual
/// source joined to every node at distance zero.
pub fn find_negative_cycle<W: Weight>(graph: &impl ResidualGraph<W>) -> Result<Option<Vec<Arc<W>>>> {
    let n = graph.node_count();
    check_cap(CYCLE_SEARCH_CAP, n)?;
    let arcs = graph.arcs();
    let mut dist = vec![W::zero(); n];
    let mut pred: Vec<Option<Arc<W>>> = vec![None; n];
    let mut last = None;
    for _ in 0..=n {
        last = None;
        for a in &arcs {
            let c = weight::add(dist[a.tail], a.weight)?;
            if c < dist[a.head] {
                dist[a.head] = c;
                pred[a.head] = Some(*a);
                last = Some(a.head);
            }
        }
        if last.is_none() {
            return Ok(None);
        }
    }
    let mut at = last.expect("still relaxing after n rounds");
    for _ in 0..n {
        at = pred[at].expect("relaxed").tail;
    }
    let start = at;
    let mut cycle = Vec::new();
    loop {
        let a = pred[at].expect("on cycle");
        cycle.push(a);
        at = a.tail;
        if at == start {
            break;
        }
    }
    cycle.reverse();
    Ok(Some(cycle))
}

/// Every simple directed cycle, each listed once starting from its smallest
/// node.
pub fn simple_cycles<W: Weight>(graph: &impl ResidualGraph<W>) -> Result<Vec<Vec<Arc<W>>>> {
    let n = graph.node_count();
    check_cap(CYCLE_ENUMERATION_CAP, n)?;
    let adjacency: Vec<Vec<Arc<W>>> = (0..n).map(|v| graph.arcs_from(v)).collect();
    let mut cycles = Vec::new();
    for start in 0..n {
        let mut on_path = vec![false; n];
        let mut path: Vec<Arc<W>> = Vec::new();
        extend_cycles(start, start, &adjacency, &mut on_path, &mut path, &mut cycles);
    }
    Ok(cycles)
}

fn extend_cycles<W: Weight>(
    start: NodeId,
    at: NodeId,
    adjacency: &[Vec<Arc<W>>],
    on_path: &mut [bool],
    path: &mut Vec<Arc<W>>,
    out: &mut Vec<Vec<Arc<W>>>,
) {
    on_path[at] = true;
    for a in &adjacency[at] {
        if a.head == start {
            let mut cycle = path.clone();
            cycle.push(*a);
            out.push(cycle);
        } else if a.head > start && !on_path[a.head] {
            path.push(*a);
            extend_cycles(start, a.head, adjacency, on_path, path, out);
            path.pop();
        }
    }
    on_path[at] = false;
}
