//! Shortest paths on residual graphs: Dijkstra guided by a potential,
//! Bellman-Ford as a reference, and one-pass relaxation on acyclic views.

mod heap;

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::residual::{reduced_weight, Arc, ResidualGraph};
use crate::weight::{self, Weight};

use heap::IndexedHeap;

/// Work counters of a single search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Searches covered by these counters.
    pub runs: usize,
    /// Priority-queue extractions (or nodes settled, for the other engines).
    pub pops: usize,
    /// Arcs examined.
    pub relaxations: usize,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, other: Self) {
        self.runs += other.runs;
        self.pops += other.pops;
        self.relaxations += other.relaxations;
    }
}

/// Distances and a predecessor tree from one or more sources.
#[derive(Debug, Clone)]
pub struct PathResult<W> {
    dist: Vec<Option<W>>,
    pred: Vec<Option<Arc<W>>>,
    pub stats: SearchStats,
}

impl<W: Weight> PathResult<W> {
    fn new(n: usize) -> Self {
        PathResult {
            dist: vec![None; n],
            pred: vec![None; n],
            stats: SearchStats {
                runs: 1,
                ..SearchStats::default()
            },
        }
    }

    /// `d(v)`, or `None` when `v` is unreachable.
    pub fn distance(&self, node: NodeId) -> Option<W> {
        self.dist[node]
    }

    pub fn distances(&self) -> &[Option<W>] {
        &self.dist
    }

    pub fn is_reachable(&self, node: NodeId) -> bool {
        self.dist[node].is_some()
    }

    pub fn predecessor(&self, node: NodeId) -> Option<&Arc<W>> {
        self.pred[node].as_ref()
    }

    /// Arcs of the tree path ending at `node`, source first.
    pub fn path_to(&self, node: NodeId) -> Option<Vec<Arc<W>>> {
        self.dist[node]?;
        let mut path = Vec::new();
        let mut at = node;
        while let Some(arc) = self.pred[at] {
            path.push(arc);
            at = arc.tail;
            if path.len() > self.dist.len() {
                return None;
            }
        }
        path.reverse();
        Some(path)
    }
}

/// Dijkstra from a single source using reduced weights under `potential`
/// (given in the graph's own sign convention).
///
/// Fails with [`Error::CertificateViolation`] the moment an arc with
/// negative reduced weight is scanned.
pub fn dijkstra_with_potential<W: Weight>(
    graph: &impl ResidualGraph<W>,
    potential: &[W],
    source: NodeId,
) -> Result<PathResult<W>> {
    dijkstra_multi_source(graph, potential, &[(source, W::zero())])
}

/// Dijkstra from several seeds, each with an initial distance.
///
/// Keys are `d(v) - p(v)`; with nonnegative reduced weights they grow along
/// every arc, so extraction order is monotone and `d(v) = key + p(v)`.
pub fn dijkstra_multi_source<W: Weight>(
    graph: &impl ResidualGraph<W>,
    potential: &[W],
    seeds: &[(NodeId, W)],
) -> Result<PathResult<W>> {
    let n = graph.node_count();
    let mut result = PathResult::new(n);
    let mut key: Vec<Option<W>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = IndexedHeap::new(n);
    for &(node, d0) in seeds {
        let k = weight::sub(d0, potential[node])?;
        if key[node].is_none_or(|old| k < old) {
            key[node] = Some(k);
            heap.push_or_decrease(node, k);
        }
    }
    let mut last_key: Option<W> = None;
    let mut failure: Option<Error> = None;
    while let Some((k, node)) = heap.pop() {
        result.stats.pops += 1;
        debug_assert!(last_key.is_none_or(|prev| prev <= k), "extraction keys must not decrease");
        last_key = Some(k);
        settled[node] = true;
        result.dist[node] = Some(weight::add(k, potential[node])?);
        graph.for_each_arc(node, &mut |arc| {
            if failure.is_some() {
                return;
            }
            result.stats.relaxations += 1;
            let reduced = match reduced_weight(&arc, potential) {
                Ok(r) => r,
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            };
            if reduced < W::zero() {
                failure = Some(Error::CertificateViolation {
                    tail: graph.label(arc.tail),
                    head: graph.label(arc.head),
                    reduced: reduced.to_string(),
                });
                return;
            }
            if settled[arc.head] {
                return;
            }
            let candidate = match weight::add(k, reduced) {
                Ok(c) => c,
                Err(e) => {
                    failure = Some(e);
                    return;
                }
            };
            if key[arc.head].is_none_or(|old| candidate < old) {
                key[arc.head] = Some(candidate);
                result.pred[arc.head] = Some(arc);
                heap.push_or_decrease(arc.head, candidate);
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }
    Ok(result)
}

/// Outcome of Bellman-Ford: distances, or a reachable negative cycle.
#[derive(Debug, Clone)]
pub enum BellmanFord<W> {
    Distances(PathResult<W>),
    NegativeCycle(Vec<Arc<W>>),
}

impl<W: Weight> BellmanFord<W> {
    pub fn distances(self) -> Option<PathResult<W>> {
        match self {
            BellmanFord::Distances(r) => Some(r),
            BellmanFord::NegativeCycle(_) => None,
        }
    }
}

/// Bellman-Ford from `source`, returning a negative cycle as a witness when
/// one is reachable.
pub fn bellman_ford<W: Weight>(graph: &impl ResidualGraph<W>, source: NodeId) -> Result<BellmanFord<W>> {
    let n = graph.node_count();
    let arcs = graph.arcs();
    let mut result = PathResult::new(n);
    result.dist[source] = Some(W::zero());
    let mut changed_at = None;
    for round in 0..n {
        let mut changed = None;
        for arc in &arcs {
            result.stats.relaxations += 1;
            let Some(du) = result.dist[arc.tail] else { continue };
            let candidate = weight::add(du, arc.weight)?;
            if result.dist[arc.head].is_none_or(|dv| candidate < dv) {
                result.dist[arc.head] = Some(candidate);
                result.pred[arc.head] = Some(*arc);
                changed = Some(arc.head);
            }
        }
        match changed {
            None => break,
            Some(v) if round + 1 == n => changed_at = Some(v),
            Some(_) => {}
        }
    }
    result.stats.pops = result.dist.iter().filter(|d| d.is_some()).count();
    let Some(mut at) = changed_at else {
        return Ok(BellmanFord::Distances(result));
    };
    // Walking n predecessor steps back lands inside the cycle.
    for _ in 0..n {
        at = result.pred[at].expect("relaxed node has a predecessor").tail;
    }
    let start = at;
    let mut cycle = Vec::new();
    loop {
        let arc = result.pred[at].expect("cycle node has a predecessor");
        cycle.push(arc);
        at = arc.tail;
        if at == start {
            break;
        }
    }
    cycle.reverse();
    Ok(BellmanFord::NegativeCycle(cycle))
}

/// Topological order of the nodes reachable from `source`; fails with
/// [`Error::CycleDetected`] if they span a directed cycle.
pub fn reachable_topological_order<W: Weight>(
    graph: &impl ResidualGraph<W>,
    source: NodeId,
) -> Result<(Vec<NodeId>, SearchStats)> {
    let n = graph.node_count();
    let mut stats = SearchStats {
        runs: 1,
        ..SearchStats::default()
    };
    let mut reach = vec![false; n];
    reach[source] = true;
    let mut stack = vec![source];
    let mut indegree = vec![0usize; n];
    while let Some(v) = stack.pop() {
        graph.for_each_arc(v, &mut |a| {
            stats.relaxations += 1;
            indegree[a.head] += 1;
            if !reach[a.head] {
                reach[a.head] = true;
                stack.push(a.head);
            }
        });
    }
    let mut order = Vec::new();
    let mut ready = vec![source];
    if indegree[source] > 0 {
        return Err(Error::CycleDetected(graph.label(source)));
    }
    while let Some(v) = ready.pop() {
        order.push(v);
        graph.for_each_arc(v, &mut |a| {
            stats.relaxations += 1;
            indegree[a.head] -= 1;
            if indegree[a.head] == 0 {
                ready.push(a.head);
            }
        });
    }
    stats.pops = order.len();
    if let Some(v) = (0..n).find(|&v| reach[v] && indegree[v] > 0) {
        return Err(Error::CycleDetected(graph.label(v)));
    }
    Ok((order, stats))
}

/// True when the whole graph has no directed cycle.
pub fn is_acyclic<W: Weight>(graph: &impl ResidualGraph<W>) -> bool {
    let n = graph.node_count();
    let mut indegree = vec![0usize; n];
    for a in graph.arcs() {
        indegree[a.head] += 1;
    }
    let mut ready: Vec<NodeId> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        graph.for_each_arc(v, &mut |a| {
            indegree[a.head] -= 1;
            if indegree[a.head] == 0 {
                ready.push(a.head);
            }
        });
    }
    seen == n
}

/// Shortest paths by relaxing arcs once in topological order. Negative
/// weights are fine; a cycle among reachable nodes is an error.
pub fn dag_shortest_path<W: Weight>(graph: &impl ResidualGraph<W>, source: NodeId) -> Result<PathResult<W>> {
    let (order, topo_stats) = reachable_topological_order(graph, source)?;
    let mut result = PathResult::new(graph.node_count());
    result.stats = topo_stats;
    result.dist[source] = Some(W::zero());
    let mut failure = None;
    for &v in &order {
        let dv = result.dist[v].expect("predecessors come first in topological order");
        graph.for_each_arc(v, &mut |a| {
            if failure.is_some() {
                return;
            }
            result.stats.relaxations += 1;
            match weight::add(dv, a.weight) {
                Ok(c) => {
                    if result.dist[a.head].is_none_or(|old| c < old) {
                        result.dist[a.head] = Some(c);
                        result.pred[a.head] = Some(a);
                    }
                }
                Err(e) => failure = Some(e),
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BipartiteGraph, EdgeWeights, Matching};
    use crate::residual::{path_weight, ArcList, AuxiliaryView};

    /// FIX-A after the update around u1 with the matching edge (u1, v1)
    /// removed: mu' = {(u2, v2)}, weights (10, 1, 2, 1).
    fn fix_a_prime() -> (BipartiteGraph, EdgeWeights<i64>, Matching) {
        let g = BipartiteGraph::complete(2, 2);
        let w = EdgeWeights::new(&g, vec![10, 1, 2, 1]).unwrap();
        let mu = Matching::from_edges(&g, [3]).unwrap();
        (g, w, mu)
    }

    // d = (u1:0, u2:0, v1:2, v2:1), node order u1, u2, v1, v2
    const EXPECTED: [i64; 4] = [0, 0, 2, 1];

    #[test]
    fn dijkstra_on_fixture() {
        let (g, w, mu) = fix_a_prime();
        let view = AuxiliaryView::new(&g, &w, &mu);
        let r = dijkstra_with_potential(&view, &[0, 0, 1, 1], 0).unwrap();
        for (node, &d) in EXPECTED.iter().enumerate() {
            assert_eq!(r.distance(node), Some(d));
        }
        let path = r.path_to(2).unwrap();
        assert_eq!(path.len(), 3);
        assert_eq!(path_weight(&path).unwrap(), 2);
    }

    #[test]
    fn bellman_ford_and_dag_agree_on_fixture() {
        let (g, w, mu) = fix_a_prime();
        let view = AuxiliaryView::new(&g, &w, &mu);
        let bf = bellman_ford(&view, 0).unwrap().distances().unwrap();
        let dag = dag_shortest_path(&view, 0).unwrap();
        for (node, &d) in EXPECTED.iter().enumerate() {
            assert_eq!(bf.distance(node), Some(d));
            assert_eq!(dag.distance(node), Some(d));
        }
    }

    #[test]
    fn single_arc() {
        let mut g = ArcList::new(2);
        g.add_arc(0, 1, 5i64);
        let r = dijkstra_with_potential(&g, &[0, 0], 0).unwrap();
        assert_eq!(r.distance(1), Some(5));
    }

    #[test]
    fn isolated_source() {
        let mut g = ArcList::new(3);
        g.add_arc(1, 2, 1i64);
        let r = dijkstra_with_potential(&g, &[0, 0, 0], 0).unwrap();
        assert_eq!(r.distance(0), Some(0));
        assert!(!r.is_reachable(1));
        assert!(!r.is_reachable(2));
    }

    #[test]
    fn dijkstra_rejects_corrupt_potential() {
        let mut g = ArcList::new(2);
        g.add_arc(0, 1, -1i64);
        let err = dijkstra_with_potential(&g, &[0, 0], 0).unwrap_err();
        assert!(matches!(err, Error::CertificateViolation { .. }));
    }

    #[test]
    fn bellman_ford_finds_negative_two_cycle() {
        let mut g = ArcList::new(3);
        g.add_arc(0, 1, 0i64);
        g.add_arc(1, 2, 2);
        g.add_arc(2, 1, -3);
        match bellman_ford(&g, 0).unwrap() {
            BellmanFord::NegativeCycle(c) => {
                assert_eq!(c.len(), 2);
                assert_eq!(path_weight(&c).unwrap(), -1);
                assert_eq!(c[0].tail, c[1].head);
            }
            BellmanFord::Distances(_) => panic!("cycle expected"),
        }
    }

    #[test]
    fn bellman_ford_zero_weights() {
        let mut g = ArcList::new(4);
        g.add_arc(0, 1, 0i64);
        g.add_arc(1, 2, 0);
        g.add_arc(2, 0, 0);
        let r = bellman_ford(&g, 0).unwrap().distances().unwrap();
        assert_eq!(&r.distances()[..3], &[Some(0), Some(0), Some(0)]);
        assert!(!r.is_reachable(3));
    }

    #[test]
    fn dag_negative_path() {
        let mut g = ArcList::new(3);
        g.add_arc(0, 1, -2i64);
        g.add_arc(1, 2, -3);
        let r = dag_shortest_path(&g, 0).unwrap();
        assert_eq!(r.distance(2), Some(-5));
    }

    #[test]
    fn dag_rejects_reachable_cycle() {
        let mut g = ArcList::new(3);
        g.add_arc(0, 1, 1i64);
        g.add_arc(1, 2, 1);
        g.add_arc(2, 1, 1);
        assert!(matches!(dag_shortest_path(&g, 0), Err(Error::CycleDetected(_))));
    }

    #[test]
    fn dag_ignores_unreachable_cycle() {
        let mut g = ArcList::new(4);
        g.add_arc(0, 1, 1i64);
        g.add_arc(2, 3, 1);
        g.add_arc(3, 2, 1);
        let r = dag_shortest_path(&g, 0).unwrap();
        assert_eq!(r.distance(1), Some(1));
        assert!(!is_acyclic(&g));
    }
}
