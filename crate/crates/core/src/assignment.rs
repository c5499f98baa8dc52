//! Static assignment solvers producing an optimal matching together with a
//! certifying potential.

use crate::dynamic::{DynamicAssignment, UpdateEvent};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeWeights, Matching, NodeId, Potential, Vertex};
use crate::residual::{alternate, validate_potential, AuxiliaryView, Certificate, DummyPool, ResidualGraph};
use crate::shortest_path::{dijkstra_multi_source, SearchStats};
use crate::weight::{self, Weight};

/// Primal-dual pair returned by the solvers.
#[derive(Debug, Clone)]
pub struct Solution<W> {
    pub matching: Matching,
    pub potential: Potential<W>,
    pub stats: SolveStats,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Number of shortest-path computations.
    pub searches: usize,
    pub search: SearchStats,
}

/// State right after one augmentation of the Hungarian method.
#[derive(Debug)]
pub struct AugmentStep<'a, W> {
    /// Matching size after the augmentation.
    pub size: usize,
    pub matching: &'a Matching,
    pub potential: &'a Potential<W>,
}

/// `p0`: zero on the left, the lightest incident weight on the right.
pub fn initial_potential<W: Weight>(graph: &BipartiteGraph, weights: &EdgeWeights<W>) -> Result<Potential<W>> {
    let mut p = Potential::zeros(graph.vertex_count());
    for j in 0..graph.right_count() {
        let lightest = graph
            .right_edges(j)
            .iter()
            .map(|&e| weights.get(e))
            .min()
            .ok_or_else(|| Error::Infeasible(format!("right vertex {j} has no incident edge")))?;
        p.set(graph.node(Vertex::Right(j)), lightest);
    }
    Ok(p)
}

/// Hungarian method: `n` shortest augmenting paths, each found by Dijkstra
/// on reduced weights.
pub fn hungarian<W: Weight>(graph: &BipartiteGraph, weights: &EdgeWeights<W>) -> Result<Solution<W>> {
    hungarian_with(graph, weights, |_| {})
}

/// [`hungarian`] reporting every intermediate matching.
pub fn hungarian_with<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
    mut observer: impl FnMut(&AugmentStep<'_, W>),
) -> Result<Solution<W>> {
    if graph.left_count() != graph.right_count() {
        return Err(Error::Infeasible(format!(
            "{} left and {} right vertices admit no perfect matching",
            graph.left_count(),
            graph.right_count()
        )));
    }
    let (matching, _, potential, stats) = successive_shortest_paths(graph, weights, None, &mut observer)?;
    Ok(Solution {
        matching,
        potential,
        stats,
    })
}

/// Successive shortest augmenting paths from all exposed left vertices.
/// With a dummy pool the targets also include the dummy while it has spare
/// capacity, producing a right-perfect matching.
pub(crate) fn successive_shortest_paths<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
    mut pool: Option<DummyPool>,
    observer: &mut dyn FnMut(&AugmentStep<'_, W>),
) -> Result<(Matching, Option<DummyPool>, Potential<W>, SolveStats)> {
    let mut matching = Matching::empty(graph);
    let mut potential = initial_potential(graph, weights)?;
    let with_dummy = pool.as_ref().is_some_and(|p| p.capacity() > 0);
    if pool.is_some() {
        let mut values = potential.into_vec();
        values.push(W::zero());
        potential = Potential::from_vec(values);
    }
    let dummy_node = graph.node(Vertex::Dummy);
    let mut stats = SolveStats::default();
    let goal = graph.right_count() + pool.as_ref().map_or(0, |p| p.capacity());

    for size in 0..goal {
        let (path, dist) = {
            let mut view = AuxiliaryView::new(graph, weights, &matching);
            if let Some(p) = pool.as_ref() {
                view = view.with_dummy(p);
            }
            let q = view.oriented(&potential);
            let seeds: Vec<(NodeId, W)> = matching
                .unmatched_left()
                .filter(|&u| !pool.as_ref().is_some_and(|p| p.contains(u)))
                .map(|u| (u, W::zero()))
                .collect();
            let result = dijkstra_multi_source(&view, &q, &seeds)?;
            stats.searches += 1;
            stats.search += result.stats;

            let mut targets: Vec<NodeId> = matching
                .unmatched_right()
                .map(|j| graph.node(Vertex::Right(j)))
                .collect();
            if with_dummy && !pool.as_ref().expect("dummy").is_full() {
                targets.push(dummy_node);
            }
            let target = targets
                .into_iter()
                .filter_map(|t| result.distance(t).map(|d| (d, t)))
                .min()
                .map(|(_, t)| t)
                .ok_or_else(|| {
                    Error::Infeasible(format!("no augmenting path from a matching of size {size}"))
                })?;
            let path = result.path_to(target).expect("target reachable");
            (path, result.distances().to_vec())
        };
        alternate(graph, &mut matching, pool.as_mut(), &path)?;

        // Unreached vertices keep their value shifted by the largest reduced
        // distance, so arcs from them into the reached region stay
        // nonnegative.
        let nodes = dist.len();
        let mut shift = None::<W>;
        for (node, d) in dist.iter().enumerate() {
            if let Some(d) = *d {
                let reduced = weight::sub(d, potential.get(node))?;
                shift = Some(shift.map_or(reduced, |s| s.max(reduced)));
            }
        }
        let shift = shift.unwrap_or_else(W::zero);
        for (node, d) in dist.iter().enumerate().take(nodes) {
            let value = match *d {
                Some(d) => d,
                None => weight::add(potential.get(node), shift)?,
            };
            potential.set(node, value);
        }
        observer(&AugmentStep {
            size: size + 1,
            matching: &matching,
            potential: &potential,
        });
    }

    let mut view = AuxiliaryView::new(graph, weights, &matching);
    if let Some(p) = pool.as_ref() {
        view = view.with_dummy(p);
    }
    let q = view.oriented(&potential);
    if let Certificate::Violated { arc, reduced } = validate_potential(&view, &q)? {
        return Err(Error::InvariantBreach(format!(
            "solver returned an invalid potential: {} -> {} reduces to {reduced}",
            view.label(arc.tail),
            view.label(arc.head)
        )));
    }
    Ok((matching, pool, potential, stats))
}

/// Any perfect matching, by repeated augmenting-path search.
pub fn find_perfect_matching(graph: &BipartiteGraph) -> Option<Matching> {
    if graph.left_count() != graph.right_count() {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; graph.right_count()];
    for u in 0..graph.left_count() {
        let mut seen = vec![false; graph.right_count()];
        if !augment(graph, u, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut matching = Matching::empty(graph);
    for (j, u) in owner.into_iter().enumerate() {
        let e = graph.find_edge(u.expect("perfect"), j).expect("edge exists");
        matching.insert(graph, e).expect("disjoint");
    }
    Some(matching)
}

fn augment(graph: &BipartiteGraph, u: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for &e in graph.left_edges(u) {
        let j = graph.endpoints(e).1;
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|other| augment(graph, other, seen, owner)) {
            owner[j] = Some(u);
            return true;
        }
    }
    false
}

/// Solve from scratch by updates: start from all-zero weights with any
/// perfect matching and a zero potential, then install the true weights one
/// left star at a time with [`DynamicAssignment::apply`].
pub fn solve_by_updates<W: Weight>(graph: &BipartiteGraph, weights: &EdgeWeights<W>) -> Result<Solution<W>> {
    let matching = find_perfect_matching(graph)
        .ok_or_else(|| Error::Infeasible("graph has no perfect matching".into()))?;
    let mut state = DynamicAssignment::from_parts_unchecked(
        graph.clone(),
        EdgeWeights::zeros(graph),
        matching,
        Potential::zeros(graph.vertex_count()),
    );
    let mut stats = SolveStats::default();
    for s in 0..graph.left_count() {
        let star = graph
            .left_edges(s)
            .iter()
            .map(|&e| (graph.endpoints(e).1, weights.get(e)))
            .collect();
        let report = state.apply(&UpdateEvent::new(Vertex::Left(s), star))?;
        stats.searches += report.searches;
        stats.search += report.stats;
    }
    let (_, _, matching, potential) = state.into_parts();
    Ok(Solution {
        matching,
        potential,
        stats,
    })
}

/// Optimality certificate for a perfect matching: valid iff the potential
/// has nonnegative reduced weight on every residual arc.
pub fn verify_optimal<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
    matching: &Matching,
    potential: &Potential<W>,
) -> Result<Certificate<W>> {
    if !matching.is_perfect() {
        return Err(Error::InvalidMatching("matching is not perfect".into()));
    }
    let view = AuxiliaryView::new(graph, weights, matching);
    validate_potential(&view, &view.oriented(potential))
}
