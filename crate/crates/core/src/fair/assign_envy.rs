use super::{Allocation, Valuations};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId, EdgeWeights, Matching};
use crate::residual::AuxiliaryView;

/// Agents on the left, bundles on the right, stored as a complete table.
/// An entry `(i, j)` is real when agent `i` holds bundle `j` or strictly
/// prefers it to its own; real entries weigh `-v_i(X_j)` and the others
/// carry a sentinel heavier than any real perfect matching.
#[derive(Debug, Clone)]
pub struct AssignEnvyGraph {
    graph: BipartiteGraph,
    weights: EdgeWeights<i64>,
    real: Vec<bool>,
    big: i64,
    matching: Matching,
}

/// `1 + n * (1 + max_i v_i(all items))`.
pub(crate) fn sentinel<V: Valuations + ?Sized>(valuations: &V) -> Result<i64> {
    let n = valuations.agent_count() as u128;
    let top = (0..valuations.agent_count())
        .map(|i| u128::from(valuations.grand_value(i)))
        .max()
        .unwrap_or(0);
    let big = 1 + n * (1 + top);
    i64::try_from(big).map_err(|_| Error::Overflow)
}

/// Entry `(agent, bundle)` of the table for the given allocation.
pub(crate) fn evaluate_entry<V: Valuations + ?Sized>(
    alloc: &Allocation,
    valuations: &V,
    agent: usize,
    bundle: usize,
    big: i64,
) -> Result<(bool, i64)> {
    let there = valuations.value(agent, &alloc.bundles()[bundle]);
    let real = alloc.assignment()[agent] == bundle || there > valuations.value(agent, alloc.bundle_of(agent));
    if real {
        let w = i64::try_from(there).map_err(|_| Error::Overflow)?;
        Ok((true, -w))
    } else {
        Ok((false, big))
    }
}

pub fn build_assign_envy<V: Valuations + ?Sized>(alloc: &Allocation, valuations: &V) -> Result<AssignEnvyGraph> {
    let n = alloc.agent_count();
    if valuations.agent_count() != n {
        return Err(Error::InvalidAllocation(format!(
            "{n} bundles for {} agents",
            valuations.agent_count()
        )));
    }
    let big = sentinel(valuations)?;
    let graph = BipartiteGraph::complete(n, n);
    let mut values = Vec::with_capacity(n * n);
    let mut real = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (r, w) = evaluate_entry(alloc, valuations, i, j, big)?;
            real.push(r);
            values.push(w);
        }
    }
    let weights = EdgeWeights::new(&graph, values)?;
    let matching = Matching::from_edges(&graph, (0..n).map(|i| i * n + alloc.assignment()[i]))?;
    Ok(AssignEnvyGraph {
        graph,
        weights,
        real,
        big,
        matching,
    })
}

impl AssignEnvyGraph {
    pub fn agent_count(&self) -> usize {
        self.graph.left_count()
    }

    pub fn big(&self) -> i64 {
        self.big
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn weights(&self) -> &EdgeWeights<i64> {
        &self.weights
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn edge(&self, agent: usize, bundle: usize) -> EdgeId {
        agent * self.agent_count() + bundle
    }

    pub fn is_real(&self, agent: usize, bundle: usize) -> bool {
        self.real[self.edge(agent, bundle)]
    }

    pub fn weight(&self, agent: usize, bundle: usize) -> i64 {
        self.weights.get(self.edge(agent, bundle))
    }

    pub fn real_count(&self) -> usize {
        self.real.iter().filter(|&&r| r).count()
    }

    /// The auxiliary graph of the bound matching over real entries only.
    pub fn real_view(&self) -> AuxiliaryView<'_, i64> {
        AuxiliaryView::new(&self.graph, &self.weights, &self.matching).below(self.big)
    }

    pub(crate) fn set_entry(&mut self, agent: usize, bundle: usize, real: bool, weight: i64) -> Result<()> {
        let e = self.edge(agent, bundle);
        self.real[e] = real;
        self.weights.set(e, weight)
    }

    pub(crate) fn parts_mut(&mut self) -> (&BipartiteGraph, &EdgeWeights<i64>, &mut Matching) {
        (&self.graph, &self.weights, &mut self.matching)
    }
}
