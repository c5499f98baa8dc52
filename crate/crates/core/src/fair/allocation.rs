use std::collections::BTreeSet;
use std::fmt;
use std::time::Duration;

use super::Valuations;
use crate::error::{Error, Result};
use crate::shortest_path::SearchStats;

/// A set of items.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bundle(BTreeSet<usize>);

impl Bundle {
    pub fn new() -> Self {
        Bundle(BTreeSet::new())
    }

    pub fn from_items(items: impl IntoIterator<Item = usize>) -> Self {
        Bundle(items.into_iter().collect())
    }

    pub fn insert(&mut self, item: usize) -> bool {
        self.0.insert(item)
    }

    pub fn contains(&self, item: usize) -> bool {
        self.0.contains(&item)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// This bundle with `item` taken out.
    pub fn without(&self, item: usize) -> Bundle {
        let mut out = self.clone();
        out.0.remove(&item);
        out
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, k) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "}}")
    }
}

/// Disjoint bundles together with a bijection from agents to bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    bundles: Vec<Bundle>,
    assignment: Vec<usize>,
}

impl Allocation {
    /// `assignment[agent]` is the index of the agent's bundle.
    pub fn new(bundles: Vec<Bundle>, assignment: Vec<usize>) -> Result<Self> {
        if bundles.len() != assignment.len() {
            return Err(Error::InvalidAllocation(format!(
                "{} bundles for {} agents",
                bundles.len(),
                assignment.len()
            )));
        }
        let mut taken = vec![false; bundles.len()];
        for (agent, &b) in assignment.iter().enumerate() {
            if b >= bundles.len() || std::mem::replace(&mut taken[b], true) {
                return Err(Error::InvalidAllocation(format!("agent {agent} has bundle {b}, not a bijection")));
            }
        }
        let mut owner = BTreeSet::new();
        for b in &bundles {
            for k in b.iter() {
                if !owner.insert(k) {
                    return Err(Error::InvalidAllocation(format!("item {k} is in two bundles")));
                }
            }
        }
        Ok(Allocation { bundles, assignment })
    }

    /// Empty bundles, agent `i` holding bundle `i`.
    pub fn empty(agents: usize) -> Self {
        Allocation {
            bundles: vec![Bundle::new(); agents],
            assignment: (0..agents).collect(),
        }
    }

    pub fn agent_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// The bundle held by `agent`.
    pub fn bundle_of(&self, agent: usize) -> &Bundle {
        &self.bundles[self.assignment[agent]]
    }

    /// The agent holding bundle `bundle`.
    pub fn owner_of(&self, bundle: usize) -> usize {
        self.assignment
            .iter()
            .position(|&b| b == bundle)
            .expect("assignment is a bijection")
    }

    pub fn item_count(&self) -> usize {
        self.bundles.iter().map(Bundle::len).sum()
    }

    pub(crate) fn add_item(&mut self, bundle: usize, item: usize) {
        self.bundles[bundle].insert(item);
    }

    pub(crate) fn set_assignment(&mut self, assignment: Vec<usize>) {
        debug_assert_eq!(assignment.len(), self.assignment.len());
        self.assignment = assignment;
    }

    /// Agent `i`'s value for its own bundle and for agent `j`'s.
    fn own_and_other<V: Valuations + ?Sized>(&self, v: &V, i: usize, j: usize) -> (u64, u64) {
        (v.value(i, self.bundle_of(i)), v.value(i, self.bundle_of(j)))
    }
}

/// Outcome of a fairness check. A rejection names an agent and the agent
/// whose bundle it envies beyond what the notion allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { envious: usize, envied: usize },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Envy-free up to one item: any envy disappears after removing some item
/// from the envied bundle.
pub fn is_ef1<V: Valuations + ?Sized>(alloc: &Allocation, valuations: &V) -> Verdict {
    check_pairs(alloc, valuations, |own, other, i| {
        other.iter().any(|k| own >= valuations.value(i, &other.without(k)))
    })
}

/// Envy-free up to any item: any envy disappears after removing any item
/// from the envied bundle.
pub fn is_efx<V: Valuations + ?Sized>(alloc: &Allocation, valuations: &V) -> Verdict {
    check_pairs(alloc, valuations, |own, other, i| {
        other.iter().all(|k| own >= valuations.value(i, &other.without(k)))
    })
}

fn check_pairs<V: Valuations + ?Sized>(
    alloc: &Allocation,
    valuations: &V,
    forgiven: impl Fn(u64, &Bundle, usize) -> bool,
) -> Verdict {
    let n = alloc.agent_count();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let (own, other) = alloc.own_and_other(valuations, i, j);
            if own >= other {
                continue;
            }
            let bundle = alloc.bundle_of(j);
            if bundle.is_empty() || !forgiven(own, bundle, i) {
                return Verdict::Reject { envious: i, envied: j };
            }
        }
    }
    Verdict::Accept
}

/// Sum over agents of the value of their own bundle.
pub fn welfare<V: Valuations + ?Sized>(alloc: &Allocation, valuations: &V) -> u128 {
    (0..alloc.agent_count())
        .map(|i| u128::from(valuations.value(i, alloc.bundle_of(i))))
        .sum()
}

/// Directed graph on agents with an arc `i -> j` when `i` prefers `j`'s
/// bundle to its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvyGraph {
    out: Vec<Vec<usize>>,
}

impl EnvyGraph {
    pub fn agent_count(&self) -> usize {
        self.out.len()
    }

    pub fn envied_by(&self, agent: usize) -> &[usize] {
        &self.out[agent]
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.out[from].contains(&to)
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Agents nobody envies.
    pub fn sources(&self) -> Vec<usize> {
        let mut envied = vec![false; self.out.len()];
        for &j in self.out.iter().flatten() {
            envied[j] = true;
        }
        (0..self.out.len()).filter(|&j| !envied[j]).collect()
    }

    /// A directed cycle found by depth-first search from the lowest agent
    /// index upward, with the number of arcs and nodes examined.
    pub fn find_cycle(&self) -> (Option<Vec<usize>>, SearchStats) {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let n = self.out.len();
        let mut mark = vec![Mark::New; n];
        let mut stats = SearchStats {
            runs: 1,
            ..SearchStats::default()
        };
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            mark[root] = Mark::Open;
            stats.pops += 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if let Some(&w) = self.out[v].get(*next) {
                    *next += 1;
                    stats.relaxations += 1;
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Open;
                            stats.pops += 1;
                            stack.push((w, 0));
                        }
                        Mark::Open => {
                            let start = stack.iter().position(|&(u, _)| u == w).expect("open node is on the stack");
                            return (Some(stack[start..].iter().map(|&(u, _)| u).collect()), stats);
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
        (None, stats)
    }
}

pub fn envy_graph<V: Valuations + ?Sized>(alloc: &Allocation, valuations: &V) -> EnvyGraph {
    let n = alloc.agent_count();
    let out = (0..n)
        .map(|i| {
            let own = valuations.value(i, alloc.bundle_of(i));
            (0..n)
                .filter(|&j| j != i && valuations.value(i, alloc.bundle_of(j)) > own)
                .collect()
        })
        .collect();
    EnvyGraph { out }
}

/// Operation counts of an allocator run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AllocatorStats {
    /// Graph searches (cycle searches or shortest-path runs).
    pub searches: usize,
    /// Nodes settled and arcs examined over all searches.
    pub search: SearchStats,
    /// Bundle exchanges performed (cycles rotated or matchings changed).
    pub exchanges: usize,
    /// Wall time spent on each item, in distribution order.
    pub item_times: Vec<Duration>,
}

/// An allocation with the work it took.
#[derive(Debug, Clone)]
pub struct AllocationOutcome {
    pub allocation: Allocation,
    pub stats: AllocatorStats,
}
