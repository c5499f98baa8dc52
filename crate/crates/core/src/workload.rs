//! Seeded comparison runs: the two envy-cycle procedures side by side, and
//! single-vertex updates against solving every state from scratch.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::assignment::hungarian;
use crate::dynamic::DynamicAssignment;
use crate::error::{Error, Result};
use crate::fair::{
    envy_cycle_assignment_with, envy_cycle_original, is_ef1, AllocationOutcome, AssignmentOptions, Engine,
};
use crate::generate;
use crate::graph::matching_weight;
use crate::shortest_path::SearchStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkloadParams {
    pub agents: usize,
    pub items: usize,
    /// Item values are drawn from `0..=max_value`.
    pub max_value: u64,
    /// Side length of the complete matching instance.
    pub size: usize,
    pub events: usize,
    /// Edge weights are drawn from `-weight_bound..=weight_bound`.
    pub weight_bound: i64,
    pub seed: u64,
}

impl Default for WorkloadParams {
    fn default() -> Self {
        WorkloadParams {
            agents: 50,
            items: 500,
            max_value: 100,
            size: 50,
            events: 50,
            weight_bound: 50,
            seed: 1,
        }
    }
}

/// Totals for one procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measure {
    pub name: &'static str,
    pub elapsed: Duration,
    pub searches: usize,
    pub pops: usize,
    pub relaxations: usize,
}

impl Measure {
    fn new(name: &'static str, elapsed: Duration, searches: usize, stats: SearchStats) -> Self {
        Measure {
            name,
            elapsed,
            searches,
            pops: stats.pops,
            relaxations: stats.relaxations,
        }
    }
}

#[derive(Debug, Clone)]
pub struct AllocatorMeasure {
    pub measure: Measure,
    pub exchanges: usize,
    pub ef1: bool,
}

#[derive(Debug, Clone)]
pub struct WorkloadReport {
    pub params: WorkloadParams,
    pub allocators: Vec<AllocatorMeasure>,
    /// Updates applied to a maintained solution, summed over all events.
    pub dynamic: Measure,
    /// A fresh Hungarian solve after every event, summed.
    pub resolve: Measure,
    /// Whether both agreed on the optimum after every event.
    pub weights_agree: bool,
}

pub fn run_workload(params: WorkloadParams) -> Result<WorkloadReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let valuations = generate::additive(&mut rng, params.agents, params.items, params.max_value);
    let order: Vec<usize> = (0..params.items).collect();

    let mut allocators = Vec::new();
    let mut record = |name, run: &dyn Fn() -> Result<AllocationOutcome>| -> Result<()> {
        let started = Instant::now();
        let out = run()?;
        let elapsed = started.elapsed();
        allocators.push(AllocatorMeasure {
            measure: Measure::new(name, elapsed, out.stats.searches, out.stats.search),
            exchanges: out.stats.exchanges,
            ef1: is_ef1(&out.allocation, &valuations).is_accept(),
        });
        Ok(())
    };
    record("original", &|| envy_cycle_original(&valuations, &order))?;
    for (name, engine) in [("assignment", Engine::Dijkstra), ("assignment-dag", Engine::Dag)] {
        let options = AssignmentOptions { engine, checks: false };
        record(name, &|| envy_cycle_assignment_with(&valuations, &order, options, &mut |_| {}))?;
    }

    let bound = params.weight_bound;
    let (graph, weights) = generate::complete_instance(&mut rng, params.size, params.size, -bound..=bound);
    let events: Vec<_> = (0..params.events)
        .map(|_| generate::random_event(&mut rng, &graph, -bound..=bound))
        .collect();
    let mut state = DynamicAssignment::new(graph.clone(), weights)?;
    let (mut dyn_time, mut dyn_searches, mut dyn_stats) = (Duration::ZERO, 0, SearchStats::default());
    let (mut re_time, mut re_searches, mut re_stats) = (Duration::ZERO, 0, SearchStats::default());
    let mut weights_agree = true;
    for event in &events {
        let started = Instant::now();
        let report = state.apply(event)?;
        dyn_time += started.elapsed();
        dyn_searches += report.searches;
        dyn_stats += report.stats;

        let started = Instant::now();
        let fresh = hungarian(&graph, state.weights())?;
        re_time += started.elapsed();
        re_searches += fresh.stats.searches;
        re_stats += fresh.stats.search;
        weights_agree &= matching_weight(state.weights(), &fresh.matching)? == report.weight;
    }
    if !weights_agree {
        return Err(Error::InvariantBreach("maintained optimum differs from a fresh solve".into()));
    }
    Ok(WorkloadReport {
        params,
        allocators,
        dynamic: Measure::new("dynamic", dyn_time, dyn_searches, dyn_stats),
        resolve: Measure::new("resolve", re_time, re_searches, re_stats),
        weights_agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> WorkloadParams {
        WorkloadParams {
            agents: 6,
            items: 30,
            max_value: 20,
            size: 8,
            events: 10,
            weight_bound: 20,
            seed: 42,
        }
    }

    #[test]
    fn counts_are_reproducible() {
        let a = run_workload(small()).unwrap();
        let b = run_workload(small()).unwrap();
        let counts = |r: &WorkloadReport| {
            let mut v: Vec<_> = r.allocators.iter().map(|m| (m.measure.relaxations, m.measure.pops, m.exchanges)).collect();
            v.push((r.dynamic.relaxations, r.dynamic.pops, r.dynamic.searches));
            v.push((r.resolve.relaxations, r.resolve.pops, r.resolve.searches));
            v
        };
        assert_eq!(counts(&a), counts(&b));
        assert!(a.allocators.iter().all(|m| m.ef1));
        assert_eq!(a.dynamic.searches, 10);
        assert_eq!(a.resolve.searches, 80);
    }
}
