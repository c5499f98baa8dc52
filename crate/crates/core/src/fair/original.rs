use std::time::Instant;

use super::{check_item_order, envy_graph, Allocation, AllocationOutcome, AllocatorStats, Valuations};
use crate::error::{Error, Result};

/// The classic envy-cycle procedure: before each item, rotate bundles along
/// envy cycles until none is left, then give the item to the lowest-index
/// agent nobody envies.
pub fn envy_cycle_original<V: Valuations + ?Sized>(valuations: &V, item_order: &[usize]) -> Result<AllocationOutcome> {
    check_item_order(valuations, item_order)?;
    let n = valuations.agent_count();
    let mut alloc = Allocation::empty(n);
    let mut stats = AllocatorStats::default();
    for &item in item_order {
        let started = Instant::now();
        let graph = loop {
            let graph = envy_graph(&alloc, valuations);
            let (cycle, search) = graph.find_cycle();
            stats.searches += 1;
            stats.search += search;
            let Some(cycle) = cycle else { break graph };
            let mut assignment = alloc.assignment().to_vec();
            for (t, &agent) in cycle.iter().enumerate() {
                assignment[agent] = alloc.assignment()[cycle[(t + 1) % cycle.len()]];
            }
            alloc.set_assignment(assignment);
            stats.exchanges += 1;
        };
        let receiver = *graph
            .sources()
            .first()
            .ok_or_else(|| Error::InvariantBreach("acyclic envy graph without a source".into()))?;
        alloc.add_item(alloc.assignment()[receiver], item);
        stats.item_times.push(started.elapsed());
    }
    Ok(AllocationOutcome { allocation: alloc, stats })
}
