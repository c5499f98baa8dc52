//! Envy-cycle procedure driven by a maintained assignment.
//!
//! Bundles sit on the right of a complete agent/bundle table (see
//! [`AssignEnvyGraph`]). Instead of cancelling envy cycles one by one, each
//! round re-optimizes the agent-to-bundle assignment with a single update
//! centered at the bundle that grew last. The resulting auxiliary graph has
//! no cycles among real entries, so some bundle is envied by nobody; the
//! next item goes there.

use std::time::Instant;

use super::assign_envy::{build_assign_envy, evaluate_entry};
use super::{check_item_order, AllocationOutcome, AllocatorStats, Allocation, AssignEnvyGraph, Valuations};
use crate::dynamic::repair;
use crate::error::{Error, Result};
use crate::graph::{Potential, Vertex};
use crate::residual::{alternate, validate_potential, AuxiliaryView, Certificate, ResidualGraph};
use crate::shortest_path::{dag_shortest_path, is_acyclic};

/// Shortest-path routine used for re-optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Dijkstra on reduced weights over the complete table, keeping a
    /// potential.
    #[default]
    Dijkstra,
    /// Topological-order relaxation over real entries only. The real part
    /// of the auxiliary graph is acyclic once the grown bundle's matching
    /// arc is removed, so no potential is needed.
    Dag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssignmentOptions {
    pub engine: Engine,
    /// Verify after every round that assignments only improve for every
    /// agent, that the real auxiliary graph is acyclic, and (with the
    /// Dijkstra engine) that the potential still certifies the matching.
    pub checks: bool,
}

impl Default for AssignmentOptions {
    fn default() -> Self {
        AssignmentOptions {
            engine: Engine::Dijkstra,
            checks: cfg!(debug_assertions),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepPhase {
    /// The assignment was re-optimized and the table rebuilt around it.
    Reoptimized,
    /// The item was added. The receiving bundle's column is refreshed only
    /// at the next re-optimization.
    ItemAdded,
}

/// Snapshot handed to observers.
#[derive(Debug)]
pub struct AssignmentStep<'a> {
    pub item: usize,
    pub phase: StepPhase,
    pub allocation: &'a Allocation,
    pub table: &'a AssignEnvyGraph,
    pub potential: Option<&'a Potential<i64>>,
}

pub fn envy_cycle_assignment<V: Valuations + ?Sized>(valuations: &V, item_order: &[usize]) -> Result<AllocationOutcome> {
    envy_cycle_assignment_with(valuations, item_order, AssignmentOptions::default(), &mut |_| {})
}

pub fn envy_cycle_assignment_with<V: Valuations + ?Sized>(
    valuations: &V,
    item_order: &[usize],
    options: AssignmentOptions,
    observer: &mut dyn FnMut(&AssignmentStep<'_>),
) -> Result<AllocationOutcome> {
    check_item_order(valuations, item_order)?;
    let n = valuations.agent_count();
    let mut run = Run {
        valuations,
        options,
        alloc: Allocation::empty(n),
        table: build_assign_envy(&Allocation::empty(n), valuations)?,
        potential: match options.engine {
            Engine::Dijkstra => Some(Potential::zeros(2 * n)),
            Engine::Dag => None,
        },
        stats: AllocatorStats::default(),
    };
    let mut grown: Option<usize> = None;
    for &item in item_order {
        let started = Instant::now();
        if let Some(bundle) = grown {
            run.reoptimize(bundle)?;
            observer(&run.step(item, StepPhase::Reoptimized));
        }
        let bundle = run.unenvied_bundle()?;
        run.alloc.add_item(bundle, item);
        run.shrink_owner_row(bundle)?;
        grown = Some(bundle);
        observer(&run.step(item, StepPhase::ItemAdded));
        run.stats.item_times.push(started.elapsed());
    }
    Ok(AllocationOutcome {
        allocation: run.alloc,
        stats: run.stats,
    })
}

struct Run<'v, V: ?Sized> {
    valuations: &'v V,
    options: AssignmentOptions,
    alloc: Allocation,
    table: AssignEnvyGraph,
    potential: Option<Potential<i64>>,
    stats: AllocatorStats,
}

impl<V: Valuations + ?Sized> Run<'_, V> {
    fn step(&self, item: usize, phase: StepPhase) -> AssignmentStep<'_> {
        AssignmentStep {
            item,
            phase,
            allocation: &self.alloc,
            table: &self.table,
            potential: self.potential.as_ref(),
        }
    }

    fn n(&self) -> usize {
        self.alloc.agent_count()
    }

    fn own_values(&self) -> Vec<u64> {
        (0..self.n())
            .map(|i| self.valuations.value(i, self.alloc.bundle_of(i)))
            .collect()
    }

    /// Lowest-index bundle whose only real entry is its matching entry.
    fn unenvied_bundle(&self) -> Result<usize> {
        let n = self.n();
        (0..n)
            .find(|&j| {
                let owner = self.alloc.owner_of(j);
                (0..n).all(|i| i == owner || !self.table.is_real(i, j))
            })
            .ok_or_else(|| Error::InvariantBreach("every bundle is envied".into()))
    }

    /// The owner of a grown bundle may stop envying others.
    fn shrink_owner_row(&mut self, bundle: usize) -> Result<()> {
        let owner = self.alloc.owner_of(bundle);
        let big = self.table.big();
        for j in (0..self.n()).filter(|&j| j != bundle) {
            if self.table.is_real(owner, j) {
                let (real, _) = evaluate_entry(&self.alloc, self.valuations, owner, j, big)?;
                if !real {
                    self.table.set_entry(owner, j, false, big)?;
                }
            }
        }
        Ok(())
    }

    fn reoptimize(&mut self, bundle: usize) -> Result<()> {
        let n = self.n();
        let big = self.table.big();
        let before = self.options.checks.then(|| self.own_values());

        for i in 0..n {
            let (real, w) = evaluate_entry(&self.alloc, self.valuations, i, bundle, big)?;
            self.table.set_entry(i, bundle, real, w)?;
        }
        let center = Vertex::Right(bundle);
        let engine = self.options.engine;
        let (graph, weights, matching) = self.table.parts_mut();
        match engine {
            Engine::Dijkstra => {
                let potential = self.potential.as_mut().expect("Dijkstra engine keeps a potential");
                let search = repair(graph, weights, matching, None, potential, center)?;
                self.stats.search += search;
            }
            Engine::Dag => {
                let e = matching.right_edge(bundle).expect("assignment is perfect");
                let holder = graph.endpoints(e).0;
                matching.remove(graph, e)?;
                let path = {
                    let view = AuxiliaryView::new(graph, weights, matching).mirrored().below(big);
                    let result = dag_shortest_path(&view, graph.node(center))?;
                    self.stats.search += result.stats;
                    result
                        .path_to(graph.node(Vertex::Left(holder)))
                        .ok_or_else(|| Error::InvariantBreach(format!("bundle {bundle} lost its holder")))?
                };
                alternate(graph, matching, None, &path)?;
            }
        }
        self.stats.searches += 1;

        let assignment: Vec<usize> = (0..n)
            .map(|i| matching.partner_of_left(graph, i).expect("assignment is perfect"))
            .collect();
        if assignment != self.alloc.assignment() {
            self.stats.exchanges += 1;
        }
        self.alloc.set_assignment(assignment);
        self.shrink_all()?;

        if let Some(before) = before {
            let after = self.own_values();
            if let Some(i) = (0..n).find(|&i| after[i] < before[i]) {
                return Err(Error::InvariantBreach(format!(
                    "agent {i} dropped from {} to {} on reassignment",
                    before[i], after[i]
                )));
            }
            if !is_acyclic(&self.table.real_view()) {
                return Err(Error::InvariantBreach(format!(
                    "real entries form a cycle after re-optimizing around bundle {bundle}"
                )));
            }
            self.check_certificate()?;
        }
        Ok(())
    }

    /// Bring the table back to the exact assign-envy graph of the current
    /// assignment. Entries can only leave; weights of kept entries are
    /// unchanged.
    fn shrink_all(&mut self) -> Result<()> {
        let n = self.n();
        let big = self.table.big();
        for i in 0..n {
            for j in 0..n {
                let (real, w) = evaluate_entry(&self.alloc, self.valuations, i, j, big)?;
                match (self.table.is_real(i, j), real) {
                    (true, false) => self.table.set_entry(i, j, false, big)?,
                    (false, true) => {
                        return Err(Error::InvariantBreach(format!(
                            "agent {i} newly envies bundle {j} outside the updated column"
                        )))
                    }
                    (true, true) if self.table.weight(i, j) != w => {
                        return Err(Error::InvariantBreach(format!("entry ({i}, {j}) changed weight")))
                    }
                    _ => {}
                }
            }
        }
        if self.options.checks {
            self.check_certificate()?;
        }
        Ok(())
    }

    fn check_certificate(&self) -> Result<()> {
        let Some(potential) = &self.potential else {
            return Ok(());
        };
        let view = AuxiliaryView::new(self.table.graph(), self.table.weights(), self.table.matching());
        match validate_potential(&view, potential.as_slice())? {
            Certificate::Valid => Ok(()),
            Certificate::Violated { arc, reduced } => Err(Error::InvariantBreach(format!(
                "potential fails on {} -> {} (reduced weight {reduced})",
                view.label(arc.tail),
                view.label(arc.head)
            ))),
        }
    }
}
