use std::time::Instant;

use super::{Allocation, AllocationOutcome, AllocatorStats, Valuations};
use crate::error::{Error, Result};

/// Agents pick in the given cyclic order, each taking a most valuable
/// remaining item (lowest index on ties). Needs additive valuations.
pub fn round_robin<V: Valuations + ?Sized>(valuations: &V, agent_order: &[usize]) -> Result<AllocationOutcome> {
    let additive = valuations.as_additive().ok_or(Error::NotAdditive)?;
    let n = valuations.agent_count();
    let mut seen = vec![false; n];
    for &i in agent_order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidAllocation(format!("agent order repeats or exceeds agent {i}")));
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::InvalidAllocation("agent order must list every agent".into()));
    }
    let mut alloc = Allocation::empty(n);
    let mut stats = AllocatorStats::default();
    let mut remaining: Vec<usize> = (0..valuations.item_count()).collect();
    for &agent in agent_order.iter().cycle() {
        if remaining.is_empty() {
            break;
        }
        let started = Instant::now();
        let pos = (0..remaining.len())
            .max_by(|&a, &b| {
                let (ka, kb) = (remaining[a], remaining[b]);
                additive
                    .item_value(agent, ka)
                    .cmp(&additive.item_value(agent, kb))
                    .then(kb.cmp(&ka))
            })
            .expect("items remain");
        stats.search.relaxations += remaining.len();
        let item = remaining.remove(pos);
        alloc.add_item(agent, item);
        stats.item_times.push(started.elapsed());
    }
    Ok(AllocationOutcome { allocation: alloc, stats })
}
