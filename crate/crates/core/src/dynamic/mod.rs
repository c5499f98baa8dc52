//! Primal/dual repair after the weights around one vertex change.
//!
//! With an optimal perfect matching `mu` and a potential `p` certifying it,
//! new weights on the star of a vertex `s` are absorbed as follows:
//!
//! 1. drop the matching edge `(s, t)`, leaving `s` and `t` exposed;
//! 2. lower `p(s)` to `-min { w'(s, v) - p(v) }` over the full star, which
//!    makes every residual arc nonnegative again;
//! 3. run Dijkstra from `s`, flip the shortest `s`-`t` path and take the
//!    distances as the new potential.
//!
//! Centers on the right side run the same steps on the mirrored view.

mod max_weight;
mod right_perfect;

pub use max_weight::{from_max_weight_instance, max_weight_matching, MaxWeightReduction};
pub use right_perfect::{right_perfect_update, MaterializedReduction, RightPerfectState};

use crate::assignment::hungarian;
use crate::error::{Error, Result};
use crate::graph::{matching_weight, BipartiteGraph, EdgeId, EdgeWeights, Matching, Potential, Vertex};
use crate::residual::{
    alternate, reduced_weight, validate_potential, ArcKind, AuxiliaryView, Certificate, DummyPool,
    ResidualGraph,
};
use crate::shortest_path::{dijkstra_with_potential, SearchStats};
use crate::weight::{self, Weight};

/// New weights for every edge incident to `center`. Neighbors without an
/// edge in the graph are treated as absent (infinitely heavy).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateEvent<W> {
    center: Vertex,
    weights: Vec<(usize, W)>,
}

impl<W: Weight> UpdateEvent<W> {
    pub fn new(center: Vertex, weights: Vec<(usize, W)>) -> Self {
        UpdateEvent { center, weights }
    }

    pub fn center(&self) -> Vertex {
        self.center
    }

    /// `(neighbor index on the other side, new weight)` pairs.
    pub fn weights(&self) -> &[(usize, W)] {
        &self.weights
    }

    /// Maps each listed neighbor to its edge, checking that the list covers
    /// the center's star exactly.
    pub fn resolve(&self, graph: &BipartiteGraph) -> Result<Vec<(EdgeId, W)>> {
        if !graph.contains(self.center) {
            return Err(Error::InvalidEvent(format!("center {} is not a vertex", self.center)));
        }
        let mut seen = vec![false; graph.edge_count()];
        let mut out = Vec::with_capacity(self.weights.len());
        for &(nb, w) in &self.weights {
            let (l, r) = match self.center {
                Vertex::Left(u) => (u, nb),
                Vertex::Right(v) => (nb, v),
                Vertex::Dummy => unreachable!("checked above"),
            };
            let e = graph.find_edge(l, r).ok_or_else(|| {
                Error::InvalidEvent(format!("no edge ({l}, {r}) around {}", self.center))
            })?;
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::InvalidEvent(format!("edge ({l}, {r}) listed twice")));
            }
            out.push((e, w));
        }
        if let Some(&missing) = graph.incident(self.center).iter().find(|&&e| !seen[e]) {
            let (l, r) = graph.endpoints(missing);
            return Err(Error::InvalidEvent(format!(
                "edge ({l}, {r}) around {} has no new weight",
                self.center
            )));
        }
        Ok(out)
    }
}

/// Outcome of one update.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpdateReport<W> {
    /// Optimal weight under the new weights.
    pub weight: W,
    /// Shortest-path computations performed.
    pub searches: usize,
    pub stats: SearchStats,
}

/// The repair proper, run on weights that already carry the event.
pub(crate) fn repair<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
    matching: &mut Matching,
    mut pool: Option<&mut DummyPool>,
    potential: &mut Potential<W>,
    center: Vertex,
) -> Result<SearchStats> {
    // Step 1: expose the center and remember the other end of its edge.
    let target = match center {
        Vertex::Left(s) => match matching.left_edge(s) {
            Some(e) => {
                matching.remove(graph, e)?;
                graph.node(Vertex::Right(graph.endpoints(e).1))
            }
            None => match pool.as_deref_mut() {
                Some(p) if p.contains(s) => {
                    p.remove(s)?;
                    graph.node(Vertex::Dummy)
                }
                _ => return Err(Error::InvalidMatching(format!("{center} is not matched"))),
            },
        },
        Vertex::Right(s) => {
            let e = matching
                .right_edge(s)
                .ok_or_else(|| Error::InvalidMatching(format!("{center} is not matched")))?;
            matching.remove(graph, e)?;
            graph.node(Vertex::Left(graph.endpoints(e).0))
        }
        Vertex::Dummy => return Err(Error::InvalidEvent("the dummy cannot be an update center".into())),
    };
    let other_side = match center {
        Vertex::Left(_) => graph.right_count(),
        _ => graph.left_count(),
    };
    let big = if graph.incident(center).len() < other_side {
        weights.dominating_weight()?
    } else {
        W::one()
    };
    let source = graph.node(center);

    let (path, dist, stats) = {
        let mut view = AuxiliaryView::new(graph, weights, matching);
        if matches!(center, Vertex::Right(_)) {
            view = view.mirrored();
        }
        view = view.with_star(center, big);
        if let Some(p) = pool.as_deref() {
            view = view.with_dummy(p);
        }
        let mut q = view.oriented(potential);

        // Step 2: lower the center's potential just enough.
        let mut lightest: Option<W> = None;
        for a in view.arcs_from(source) {
            let slack = weight::sub(a.weight, q[a.head])?;
            lightest = Some(lightest.map_or(slack, |m| m.min(slack)));
        }
        let lightest = lightest.ok_or_else(|| Error::Infeasible(format!("{center} has an empty star")))?;
        q[source] = -lightest;

        let result = dijkstra_with_potential(&view, &q, source)?;
        if let Some(node) = (0..view.node_count()).find(|&v| !result.is_reachable(v)) {
            return Err(Error::InvariantBreach(format!(
                "{} unreachable from the update center",
                view.label(node)
            )));
        }
        let path = result.path_to(target).expect("every node is reachable");
        let dist: Vec<W> = result
            .distances()
            .iter()
            .map(|d| d.expect("every node is reachable"))
            .collect();
        if cfg!(debug_assertions) {
            for a in &path {
                if reduced_weight(a, &dist)? != W::zero() {
                    return Err(Error::InvariantBreach(format!(
                        "shortest-path arc {} -> {} is not tight",
                        view.label(a.tail),
                        view.label(a.head)
                    )));
                }
            }
        }
        (path, dist, result.stats)
    };

    // Step 3: flip the path, take distances as the new potential.
    if let Some(a) = path.iter().find(|a| matches!(a.kind, ArcKind::Virtual { .. })) {
        let ArcKind::Virtual { left, right } = a.kind else { unreachable!() };
        return Err(Error::Infeasible(format!(
            "optimum needs the absent edge ({left}, {right})"
        )));
    }
    alternate(graph, matching, pool.as_deref_mut(), &path)?;
    let negate = matches!(center, Vertex::Right(_));
    for (node, d) in dist.into_iter().enumerate() {
        potential.set(node, if negate { -d } else { d });
    }

    if cfg!(debug_assertions) {
        let mut view = AuxiliaryView::new(graph, weights, matching);
        if let Some(p) = pool.as_deref() {
            view = view.with_dummy(p);
        }
        if let Certificate::Violated { arc, reduced } = validate_potential(&view, &view.oriented(potential))? {
            return Err(Error::InvariantBreach(format!(
                "repaired potential fails on {} -> {} ({reduced})",
                view.label(arc.tail),
                view.label(arc.head)
            )));
        }
    }
    Ok(stats)
}

/// An optimal perfect matching and its potential, kept current under
/// single-vertex weight updates.
#[derive(Debug, Clone)]
pub struct DynamicAssignment<W> {
    graph: BipartiteGraph,
    weights: EdgeWeights<W>,
    matching: Matching,
    potential: Potential<W>,
}

impl<W: Weight> DynamicAssignment<W> {
    /// Solves the initial instance with the Hungarian method.
    pub fn new(graph: BipartiteGraph, weights: EdgeWeights<W>) -> Result<Self> {
        let sol = hungarian(&graph, &weights)?;
        Ok(Self::from_parts_unchecked(graph, weights, sol.matching, sol.potential))
    }

    /// Adopts an existing primal-dual pair after checking the certificate.
    pub fn from_parts(
        graph: BipartiteGraph,
        weights: EdgeWeights<W>,
        matching: Matching,
        potential: Potential<W>,
    ) -> Result<Self> {
        let state = Self::from_parts_unchecked(graph, weights, matching, potential);
        state.check_certificate()?;
        Ok(state)
    }

    pub(crate) fn from_parts_unchecked(
        graph: BipartiteGraph,
        weights: EdgeWeights<W>,
        matching: Matching,
        potential: Potential<W>,
    ) -> Self {
        DynamicAssignment {
            graph,
            weights,
            matching,
            potential,
        }
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn weights(&self) -> &EdgeWeights<W> {
        &self.weights
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn potential(&self) -> &Potential<W> {
        &self.potential
    }

    pub fn into_parts(self) -> (BipartiteGraph, EdgeWeights<W>, Matching, Potential<W>) {
        (self.graph, self.weights, self.matching, self.potential)
    }

    pub fn weight(&self) -> Result<W> {
        matching_weight(&self.weights, &self.matching)
    }

    /// Fails unless the matching is perfect and the potential certifies it.
    pub fn check_certificate(&self) -> Result<()> {
        if !self.matching.is_perfect() {
            return Err(Error::InvalidMatching("matching is not perfect".into()));
        }
        let view = AuxiliaryView::new(&self.graph, &self.weights, &self.matching);
        validate_potential(&view, self.potential.as_slice())?.into_result(&view)
    }

    /// Installs the event's weights and repairs matching and potential with
    /// one Dijkstra run. On error the state is left unchanged.
    pub fn apply(&mut self, event: &UpdateEvent<W>) -> Result<UpdateReport<W>> {
        let star = event.resolve(&self.graph)?;
        if cfg!(debug_assertions) {
            self.check_certificate()?;
        }
        let mut old = Vec::with_capacity(star.len());
        for &(e, w) in &star {
            old.push((e, self.weights.get(e)));
            self.weights.set(e, w)?;
        }
        let mut matching = self.matching.clone();
        let mut potential = self.potential.clone();
        match repair(
            &self.graph,
            &self.weights,
            &mut matching,
            None,
            &mut potential,
            event.center(),
        ) {
            Ok(stats) => {
                self.matching = matching;
                self.potential = potential;
                Ok(UpdateReport {
                    weight: self.weight()?,
                    searches: stats.runs,
                    stats,
                })
            }
            Err(err) => {
                for (e, w) in old {
                    self.weights.set(e, w)?;
                }
                Err(err)
            }
        }
    }

    /// Raises the weight of a non-matching edge. Matching and potential stay
    /// optimal and valid, so no repair is needed.
    pub fn raise_weight(&mut self, edge: EdgeId, value: W) -> Result<()> {
        if self.matching.contains(&self.graph, edge) {
            return Err(Error::InvalidEvent(format!("edge {edge} is matched")));
        }
        if value < self.weights.get(edge) {
            return Err(Error::InvalidEvent(format!("edge {edge} would get lighter")));
        }
        self.weights.set(edge, value)
    }
}

/// Result of [`primal_dual_update`].
#[derive(Debug, Clone)]
pub struct UpdateOutcome<W> {
    pub weights: EdgeWeights<W>,
    pub matching: Matching,
    pub potential: Potential<W>,
    /// Shortest-path computations performed.
    pub searches: usize,
    pub stats: SearchStats,
}

/// Repairs a minimum-weight perfect matching and its potential after the
/// weights around one vertex change. The entry pair is checked first and
/// rejected if the potential does not certify it.
pub fn primal_dual_update<W: Weight>(
    graph: &BipartiteGraph,
    weights: &EdgeWeights<W>,
    matching: &Matching,
    potential: &Potential<W>,
    event: &UpdateEvent<W>,
) -> Result<UpdateOutcome<W>> {
    let mut state = DynamicAssignment::from_parts(graph.clone(), weights.clone(), matching.clone(), potential.clone())?;
    let report = state.apply(event)?;
    let (_, weights, matching, potential) = state.into_parts();
    Ok(UpdateOutcome {
        weights,
        matching,
        potential,
        searches: report.searches,
        stats: report.stats,
    })
}

/// Result of [`process_event_stream`].
#[derive(Debug, Clone)]
pub struct StreamOutcome<W> {
    pub state: DynamicAssignment<W>,
    /// Optimal weight after each event.
    pub weights: Vec<W>,
    pub reports: Vec<UpdateReport<W>>,
}

/// Solves the initial instance, then applies each event in turn.
pub fn process_event_stream<W: Weight>(
    graph: BipartiteGraph,
    initial: EdgeWeights<W>,
    events: &[UpdateEvent<W>],
) -> Result<StreamOutcome<W>> {
    let mut state = DynamicAssignment::new(graph, initial)?;
    let mut reports = Vec::with_capacity(events.len());
    for event in events {
        reports.push(state.apply(event)?);
    }
    Ok(StreamOutcome {
        state,
        weights: reports.iter().map(|r| r.weight).collect(),
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::verify_optimal;
    use crate::oracle::brute_min_perfect_matching;

    fn fix_a() -> (BipartiteGraph, EdgeWeights<i64>, Matching, Potential<i64>) {
        let g = BipartiteGraph::complete(2, 2);
        let w = EdgeWeights::new(&g, vec![1, 4, 2, 1]).unwrap();
        let mu = Matching::from_edges(&g, [0, 3]).unwrap();
        let p = Potential::from_vec(vec![0, 0, 1, 1]);
        (g, w, mu, p)
    }

    #[test]
    fn fixture_update_around_u1() {
        let (g, w, mu, p) = fix_a();
        let event = UpdateEvent::new(Vertex::Left(0), vec![(0, 10), (1, 1)]);
        let out = primal_dual_update(&g, &w, &mu, &p, &event).unwrap();
        assert_eq!(matching_weight(&out.weights, &out.matching).unwrap(), 3);
        let mut edges: Vec<_> = out.matching.edges().collect();
        edges.sort();
        assert_eq!(edges, vec![1, 2]);
        assert_eq!(out.potential.as_slice(), &[0, 0, 2, 1]);
        assert!(verify_optimal(&g, &out.weights, &out.matching, &out.potential)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn identity_event_keeps_weight() {
        let (g, w, mu, p) = fix_a();
        for center in [Vertex::Left(0), Vertex::Left(1), Vertex::Right(0), Vertex::Right(1)] {
            let star = g
                .incident(center)
                .iter()
                .map(|&e| {
                    let (l, r) = g.endpoints(e);
                    (if matches!(center, Vertex::Left(_)) { r } else { l }, w[e])
                })
                .collect();
            let out = primal_dual_update(&g, &w, &mu, &p, &UpdateEvent::new(center, star)).unwrap();
            assert_eq!(matching_weight(&out.weights, &out.matching).unwrap(), 2);
            assert!(verify_optimal(&g, &out.weights, &out.matching, &out.potential)
                .unwrap()
                .is_valid());
        }
    }

    #[test]
    fn single_pair_update() {
        let g = BipartiteGraph::complete(1, 1);
        let w = EdgeWeights::new(&g, vec![4i64]).unwrap();
        let mu = Matching::from_edges(&g, [0]).unwrap();
        let p = Potential::from_vec(vec![0, 4]);
        let out = primal_dual_update(&g, &w, &mu, &p, &UpdateEvent::new(Vertex::Left(0), vec![(0, -4)])).unwrap();
        assert_eq!(out.matching.edges().collect::<Vec<_>>(), vec![0]);
        assert_eq!(matching_weight(&out.weights, &out.matching).unwrap(), -4);
        assert_eq!(out.potential.as_slice(), &[0, -4]);
    }

    #[test]
    fn rejects_invalid_entry_certificate() {
        let (g, w, mu, _) = fix_a();
        let event = UpdateEvent::new(Vertex::Left(0), vec![(0, 10), (1, 1)]);
        let err = primal_dual_update(&g, &w, &mu, &Potential::zeros(4), &event).unwrap_err();
        assert!(matches!(err, Error::CertificateViolation { .. }));
    }

    #[test]
    fn rejects_incomplete_star() {
        let (g, w, mu, p) = fix_a();
        let event = UpdateEvent::new(Vertex::Left(0), vec![(0, 10)]);
        assert!(matches!(
            primal_dual_update(&g, &w, &mu, &p, &event),
            Err(Error::InvalidEvent(_))
        ));
        let event = UpdateEvent::new(Vertex::Left(0), vec![(0, 10), (0, 3), (1, 1)]);
        assert!(matches!(
            primal_dual_update(&g, &w, &mu, &p, &event),
            Err(Error::InvalidEvent(_))
        ));
    }

    #[test]
    fn right_center_matches_transposed_instance() {
        let g = BipartiteGraph::new(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0), (1, 0)]).unwrap();
        let w = EdgeWeights::new(&g, vec![3i64, -2, 4, 1, -5, 6, 2]).unwrap();
        let mut fwd = DynamicAssignment::new(g.clone(), w.clone()).unwrap();
        let t = g.transpose();
        let mut rev = DynamicAssignment::new(t.clone(), w.clone()).unwrap();
        let events = [
            (1usize, vec![(0usize, -7i64), (1, 3)]),
            (0, vec![(0, 2), (1, 9), (2, -1)]),
            (2, vec![(1, 8), (2, 0)]),
        ];
        for (v, star) in events {
            let a = fwd.apply(&UpdateEvent::new(Vertex::Right(v), star.clone())).unwrap();
            let b = rev.apply(&UpdateEvent::new(Vertex::Left(v), star)).unwrap();
            assert_eq!(a.weight, b.weight);
            let oracle = brute_min_perfect_matching(fwd.graph(), fwd.weights()).unwrap().unwrap();
            assert_eq!(a.weight, oracle.0);
            fwd.check_certificate().unwrap();
        }
    }

    #[test]
    fn sparse_star_uses_virtual_edges() {
        // u0 only touches v0, so its star is completed virtually.
        let g = BipartiteGraph::new(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (1, 2)]).unwrap();
        let w = EdgeWeights::new(&g, vec![1i64, 1, 1, 1, 1, 1]).unwrap();
        let mut state = DynamicAssignment::new(g, w).unwrap();
        let r = state.apply(&UpdateEvent::new(Vertex::Left(0), vec![(0, 100)])).unwrap();
        assert_eq!(r.weight, 102);
        assert_eq!(r.searches, 1);
        state.check_certificate().unwrap();
    }

    #[test]
    fn failed_update_leaves_state_untouched() {
        let (g, w, _, _) = fix_a();
        let mut state = DynamicAssignment::new(g, w).unwrap();
        let before = state.clone();
        assert!(state.apply(&UpdateEvent::new(Vertex::Left(0), vec![(0, 1)])).is_err());
        assert_eq!(state.weights(), before.weights());
        assert_eq!(state.matching(), before.matching());
    }

    #[test]
    fn stream_on_fixture() {
        let (g, w, _, _) = fix_a();
        let event = UpdateEvent::new(Vertex::Left(0), vec![(0, 10), (1, 1)]);
        let out = process_event_stream(g.clone(), w.clone(), &[event]).unwrap();
        assert_eq!(out.weights, vec![3]);
        let empty = process_event_stream(g, w, &[]).unwrap();
        assert!(empty.weights.is_empty());
        assert_eq!(empty.state.weight().unwrap(), 2);
    }

    #[test]
    fn raise_weight_only_off_matching() {
        let (g, w, _, _) = fix_a();
        let mut state = DynamicAssignment::new(g, w).unwrap();
        let matched = state.matching().left_edge(0).unwrap();
        assert!(state.raise_weight(matched, 50).is_err());
        let free = 1 - matched;
        assert!(state.raise_weight(free, 0).is_err());
        state.raise_weight(free, 50).unwrap();
        state.check_certificate().unwrap();
    }
}
