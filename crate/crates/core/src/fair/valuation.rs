use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::Bundle;
use crate::error::{Error, Result};

/// Agents' values for bundles of items. Values are nonnegative integers and
/// must be monotone under inclusion.
pub trait Valuations {
    fn agent_count(&self) -> usize;
    fn item_count(&self) -> usize;
    fn value(&self, agent: usize, bundle: &Bundle) -> u64;

    /// The item-value matrix, when the valuation is additive.
    fn as_additive(&self) -> Option<&AdditiveValuations> {
        None
    }

    /// Value of every item at once; the upper end of each agent's range.
    fn grand_value(&self, agent: usize) -> u64 {
        self.value(agent, &Bundle::from_items(0..self.item_count()))
    }
}

/// `v_i(X)` is the sum of the item values in `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveValuations {
    items: usize,
    values: Vec<Vec<u64>>,
}

impl AdditiveValuations {
    /// One row of item values per agent; rows must have equal length.
    pub fn new(values: Vec<Vec<u64>>) -> Result<Self> {
        let items = values.first().map_or(0, Vec::len);
        if let Some(i) = values.iter().position(|row| row.len() != items) {
            return Err(Error::InvalidAllocation(format!(
                "agent {i} values {} items, expected {items}",
                values[i].len()
            )));
        }
        for row in &values {
            row.iter()
                .try_fold(0u64, |acc, &v| acc.checked_add(v))
                .ok_or(Error::Overflow)?;
        }
        Ok(AdditiveValuations { items, values })
    }

    pub fn item_value(&self, agent: usize, item: usize) -> u64 {
        self.values[agent][item]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.values
    }
}

impl Valuations for AdditiveValuations {
    fn agent_count(&self) -> usize {
        self.values.len()
    }

    fn item_count(&self) -> usize {
        self.items
    }

    fn value(&self, agent: usize, bundle: &Bundle) -> u64 {
        bundle.iter().map(|k| self.values[agent][k]).sum()
    }

    fn as_additive(&self) -> Option<&AdditiveValuations> {
        Some(self)
    }
}

type Evaluator = Box<dyn Fn(usize, &Bundle) -> u64 + Send + Sync>;

/// A general valuation given as a bundle evaluator, memoized per
/// `(agent, bundle)`.
pub struct OracleValuations {
    agents: usize,
    items: usize,
    evaluate: Evaluator,
    memo: Mutex<HashMap<(usize, Bundle), u64>>,
    evaluations: AtomicUsize,
}

impl OracleValuations {
    pub fn new(
        agents: usize,
        items: usize,
        evaluate: impl Fn(usize, &Bundle) -> u64 + Send + Sync + 'static,
    ) -> Self {
        OracleValuations {
            agents,
            items,
            evaluate: Box::new(evaluate),
            memo: Mutex::new(HashMap::new()),
            evaluations: AtomicUsize::new(0),
        }
    }

    /// Calls that reached the evaluator, i.e. memo misses.
    pub fn evaluations(&self) -> usize {
        self.evaluations.load(Ordering::Relaxed)
    }
}

impl fmt::Debug for OracleValuations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleValuations")
            .field("agents", &self.agents)
            .field("items", &self.items)
            .field("evaluations", &self.evaluations())
            .finish_non_exhaustive()
    }
}

impl Valuations for OracleValuations {
    fn agent_count(&self) -> usize {
        self.agents
    }

    fn item_count(&self) -> usize {
        self.items
    }

    fn value(&self, agent: usize, bundle: &Bundle) -> u64 {
        let key = (agent, bundle.clone());
        if let Some(&v) = self.memo.lock().expect("memo lock").get(&key) {
            return v;
        }
        self.evaluations.fetch_add(1, Ordering::Relaxed);
        let v = (self.evaluate)(agent, bundle);
        self.memo.lock().expect("memo lock").insert(key, v);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_sums() {
        let v = AdditiveValuations::new(vec![vec![3, 2, 1], vec![1, 1, 5]]).unwrap();
        assert_eq!(v.value(0, &Bundle::from_items([0, 2])), 4);
        assert_eq!(v.value(1, &Bundle::new()), 0);
        assert_eq!(v.grand_value(1), 7);
        assert!(v.as_additive().is_some());
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(AdditiveValuations::new(vec![vec![1, 2], vec![1]]).is_err());
        assert!(AdditiveValuations::new(vec![vec![u64::MAX, 1]]).is_err());
    }

    #[test]
    fn oracle_memoizes() {
        let v = OracleValuations::new(1, 3, |_, b| b.len() as u64);
        let b = Bundle::from_items([0, 1]);
        assert_eq!(v.value(0, &b), 2);
        assert_eq!(v.value(0, &b), 2);
        assert_eq!(v.evaluations(), 1);
        assert!(v.as_additive().is_none());
    }
}
