//! Allocation of indivisible items: EF1/EFX checks, the envy-cycle
//! procedure, its assignment-based variant, and round robin.

mod allocation;
mod assign_envy;
mod assignment;
mod original;
mod round_robin;
mod valuation;

pub use allocation::{
    envy_graph, is_ef1, is_efx, welfare, Allocation, AllocationOutcome, AllocatorStats, Bundle, EnvyGraph, Verdict,
};
pub use assign_envy::{build_assign_envy, AssignEnvyGraph};
pub use assignment::{
    envy_cycle_assignment, envy_cycle_assignment_with, AssignmentOptions, AssignmentStep, Engine, StepPhase,
};
pub use original::envy_cycle_original;
pub use round_robin::round_robin;
pub use valuation::{AdditiveValuations, OracleValuations, Valuations};

use crate::error::{Error, Result};

/// Items sorted by total value over all agents, most valuable first, ties
/// by index. Under identical item rankings this hands items out from the
/// top of every agent's ranking down.
pub fn value_descending_order(valuations: &(impl Valuations + ?Sized)) -> Vec<usize> {
    let totals: Vec<u128> = (0..valuations.item_count())
        .map(|k| {
            let single = Bundle::from_items([k]);
            (0..valuations.agent_count())
                .map(|i| u128::from(valuations.value(i, &single)))
                .sum()
        })
        .collect();
    let mut order: Vec<usize> = (0..valuations.item_count()).collect();
    order.sort_by(|&a, &b| totals[b].cmp(&totals[a]).then(a.cmp(&b)));
    order
}

pub(crate) fn check_item_order(valuations: &(impl Valuations + ?Sized), order: &[usize]) -> Result<()> {
    if valuations.agent_count() == 0 && !order.is_empty() {
        return Err(Error::InvalidAllocation("items but no agents".into()));
    }
    let mut seen = vec![false; valuations.item_count()];
    for &k in order {
        if k >= seen.len() {
            return Err(Error::InvalidAllocation(format!("item {k} out of range")));
        }
        if std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidAllocation(format!("item {k} listed twice")));
        }
    }
    Ok(())
}
