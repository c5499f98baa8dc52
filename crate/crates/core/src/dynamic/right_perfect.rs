//! Updates on unbalanced instances with more left than right vertices.
//!
//! Balancing would add `c = left - right` zero-weight right vertices. All of
//! them are interchangeable, so they are collapsed into one search node `x`
//! with capacity `c`, tracked by a [`DummyPool`].

use super::{repair, UpdateEvent, UpdateReport};
use crate::assignment::successive_shortest_paths;
use crate::error::{Error, Result};
use crate::graph::{matching_weight, BipartiteGraph, EdgeWeights, Matching, Potential, Vertex};
use crate::residual::{validate_potential, AuxiliaryView, DummyPool};
use crate::shortest_path::SearchStats;
use crate::weight::Weight;

/// A minimum-weight right-perfect matching, the left vertices parked on the
/// dummy, and a potential over all vertices plus the dummy.
#[derive(Debug, Clone)]
pub struct RightPerfectState<W> {
    graph: BipartiteGraph,
    weights: EdgeWeights<W>,
    matching: Matching,
    pool: DummyPool,
    potential: Potential<W>,
}

/// The balanced instance with every dummy right vertex made explicit.
/// Original edges keep their ids; dummy edges follow.
#[derive(Debug, Clone)]
pub struct MaterializedReduction<W> {
    pub graph: BipartiteGraph,
    pub weights: EdgeWeights<W>,
    pub matching: Matching,
    pub potential: Potential<W>,
}

impl<W: Weight> RightPerfectState<W> {
    pub fn solve(graph: BipartiteGraph, weights: EdgeWeights<W>) -> Result<Self> {
        let (left, right) = (graph.left_count(), graph.right_count());
        if left < right {
            return Err(Error::Infeasible(format!(
                "{left} left vertices cannot cover {right} right vertices"
            )));
        }
        let pool = DummyPool::new(left, left - right);
        let (matching, pool, potential, _) = successive_shortest_paths(&graph, &weights, Some(pool), &mut |_| {})?;
        Ok(RightPerfectState {
            graph,
            weights,
            matching,
            pool: pool.expect("pool is handed back"),
            potential,
        })
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

    /// Potential indexed by node id; the last slot belongs to the dummy.
    pub fn potential(&self) -> &Potential<W> {
        &self.potential
    }

    pub fn capacity(&self) -> usize {
        self.pool.capacity()
    }

    pub fn dummy_members(&self) -> Vec<usize> {
        self.pool.members().collect()
    }

    pub fn weight(&self) -> Result<W> {
        matching_weight(&self.weights, &self.matching)
    }

    /// Fails unless every right vertex is matched, the dummy is full and
    /// disjoint from the matching, and the potential certifies optimality.
    pub fn check_certificate(&self) -> Result<()> {
        if !self.matching.is_right_perfect() {
            return Err(Error::InvalidMatching("matching is not right-perfect".into()));
        }
        if !self.pool.is_full() {
            return Err(Error::InvalidMatching("dummy is below capacity".into()));
        }
        if let Some(u) = self.pool.members().find(|&u| self.matching.left_edge(u).is_some()) {
            return Err(Error::InvalidMatching(format!("L{u} is matched and on the dummy")));
        }
        let view = AuxiliaryView::new(&self.graph, &self.weights, &self.matching).with_dummy(&self.pool);
        validate_potential(&view, &view.oriented(&self.potential))?.into_result(&view)
    }

    /// Installs the event's weights and repairs the state with one search
    /// in which the dummy is a single node. On error nothing changes.
    pub fn update(&mut self, event: &UpdateEvent<W>) -> Result<UpdateReport<W>> {
        let star = event.resolve(&self.graph)?;
        let mut old = Vec::with_capacity(star.len());
        for &(e, w) in &star {
            old.push((e, self.weights.get(e)));
            self.weights.set(e, w)?;
        }
        let mut matching = self.matching.clone();
        let mut pool = self.pool.clone();
        let mut potential = self.potential.clone();
        let outcome: Result<SearchStats> = repair(
            &self.graph,
            &self.weights,
            &mut matching,
            Some(&mut pool),
            &mut potential,
            event.center(),
        );
        match outcome {
            Ok(stats) => {
                self.matching = matching;
                self.pool = pool;
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

    /// The balanced instance this state stands for: `capacity` explicit
    /// dummy right vertices joined to every left vertex at weight zero.
    pub fn materialize(&self) -> Result<MaterializedReduction<W>> {
        let (left, right) = (self.graph.left_count(), self.graph.right_count());
        let c = self.pool.capacity();
        let mut edges = self.graph.edges().to_vec();
        for k in 0..c {
            edges.extend((0..left).map(|u| (u, right + k)));
        }
        let graph = BipartiteGraph::new(left, left, edges)?;
        let mut values = self.weights.as_slice().to_vec();
        values.resize(graph.edge_count(), W::zero());
        let weights = EdgeWeights::new(&graph, values)?;

        let mut matching = Matching::from_edges(&graph, self.matching.edges())?;
        for (k, u) in self.pool.members().enumerate() {
            let e = graph.find_edge(u, right + k).expect("dummy edges are complete");
            matching.insert(&graph, e)?;
        }

        let mut p = Vec::with_capacity(2 * left);
        p.extend((0..left + right).map(|node| self.potential.get(node)));
        let x = self.graph.node(Vertex::Dummy);
        let px = if self.potential.len() > x { self.potential.get(x) } else { W::zero() };
        p.extend(std::iter::repeat_n(px, c));
        Ok(MaterializedReduction {
            graph,
            weights,
            matching,
            potential: Potential::from_vec(p),
        })
    }

    /// The same event on the materialized instance: left centers also list
    /// their zero-weight dummy edges.
    pub fn materialize_event(&self, event: &UpdateEvent<W>) -> UpdateEvent<W> {
        let mut weights = event.weights().to_vec();
        if let Vertex::Left(_) = event.center() {
            let right = self.graph.right_count();
            weights.extend((0..self.pool.capacity()).map(|k| (right + k, W::zero())));
        }
        UpdateEvent::new(event.center(), weights)
    }
}

/// Consuming form of [`RightPerfectState::update`].
pub fn right_perfect_update<W: Weight>(
    mut state: RightPerfectState<W>,
    event: &UpdateEvent<W>,
) -> Result<RightPerfectState<W>> {
    if cfg!(debug_assertions) {
        state.check_certificate()?;
    }
    state.update(event)?;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamic::{primal_dual_update, DynamicAssignment};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_by_one_example() {
        let g = BipartiteGraph::complete(2, 1);
        let w = EdgeWeights::new(&g, vec![-5i64, -3]).unwrap();
        let state = RightPerfectState::solve(g, w).unwrap();
        assert_eq!(state.weight().unwrap(), -5);
        assert_eq!(state.dummy_members(), vec![1]);
        let state = right_perfect_update(state, &UpdateEvent::new(Vertex::Left(0), vec![(0, -1)])).unwrap();
        assert_eq!(state.weight().unwrap(), -3);
        assert_eq!(state.matching().edges().collect::<Vec<_>>(), vec![1]);
        assert_eq!(state.dummy_members(), vec![0]);
        state.check_certificate().unwrap();
    }

    #[test]
    fn balanced_matches_plain_update() {
        let g = BipartiteGraph::complete(3, 3);
        let w = EdgeWeights::new(&g, vec![4i64, 1, 3, 2, 0, 5, 3, 2, 2]).unwrap();
        let plain = DynamicAssignment::new(g.clone(), w.clone()).unwrap();
        let mut state = RightPerfectState::solve(g.clone(), w).unwrap();
        assert_eq!(state.capacity(), 0);
        let event = UpdateEvent::new(Vertex::Right(1), vec![(0, -3), (1, 7), (2, 1)]);
        let out = primal_dual_update(&g, plain.weights(), plain.matching(), plain.potential(), &event).unwrap();
        state.update(&event).unwrap();
        assert_eq!(
            state.weight().unwrap(),
            matching_weight(&out.weights, &out.matching).unwrap()
        );
    }

    #[test]
    fn collapsed_dummy_tracks_materialized_instance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let g = BipartiteGraph::complete(6, 3);
            let values = (0..g.edge_count()).map(|_| rng.gen_range(-20i64..=20)).collect();
            let w = EdgeWeights::new(&g, values).unwrap();
            let mut state = RightPerfectState::solve(g.clone(), w).unwrap();
            state.check_certificate().unwrap();
            let m = state.materialize().unwrap();
            let mut explicit = DynamicAssignment::from_parts(m.graph, m.weights, m.matching, m.potential).unwrap();
            for _ in 0..50 {
                let event = if rng.gen_bool(0.5) {
                    let s = rng.gen_range(0..6);
                    UpdateEvent::new(Vertex::Left(s), (0..3).map(|v| (v, rng.gen_range(-20i64..=20))).collect())
                } else {
                    let s = rng.gen_range(0..3);
                    UpdateEvent::new(Vertex::Right(s), (0..6).map(|u| (u, rng.gen_range(-20i64..=20))).collect())
                };
                let a = state.update(&event).unwrap();
                let b = explicit.apply(&state.materialize_event(&event)).unwrap();
                assert_eq!(a.weight, b.weight);
                state.check_certificate().unwrap();
                let fresh = RightPerfectState::solve(g.clone(), state.weights().clone()).unwrap();
                assert_eq!(a.weight, fresh.weight().unwrap());
            }
        }
    }

    #[test]
    fn rejects_too_few_left_vertices() {
        let g = BipartiteGraph::complete(1, 2);
        let w = EdgeWeights::new(&g, vec![1i64, 1]).unwrap();
        assert!(matches!(RightPerfectState::solve(g, w), Err(Error::Infeasible(_))));
    }
}
