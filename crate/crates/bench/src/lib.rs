//! Seeded inputs shared by the benchmark targets.

use dynmatch_core::fair::AdditiveValuations;
use dynmatch_core::{generate, BipartiteGraph, EdgeWeights, UpdateEvent};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const WEIGHT_BOUND: i64 = 100;

pub struct Stream {
    pub graph: BipartiteGraph,
    pub weights: EdgeWeights<i64>,
    pub events: Vec<UpdateEvent<i64>>,
}

/// Complete `left`×`right` instance with `events` random single-vertex events.
pub fn complete_stream(left: usize, right: usize, events: usize, seed: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (graph, weights) = generate::complete_instance(&mut rng, left, right, -WEIGHT_BOUND..=WEIGHT_BOUND);
    let events = (0..events)
        .map(|_| generate::random_event(&mut rng, &graph, -WEIGHT_BOUND..=WEIGHT_BOUND))
        .collect();
    Stream { graph, weights, events }
}

/// Sparse instance with a planted perfect matching.
pub fn sparse_stream(n: usize, density: f64, events: usize, seed: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (graph, weights) = generate::planted_instance(&mut rng, n, density, -WEIGHT_BOUND..=WEIGHT_BOUND);
    let events = (0..events)
        .map(|_| generate::random_event(&mut rng, &graph, -WEIGHT_BOUND..=WEIGHT_BOUND))
        .collect();
    Stream { graph, weights, events }
}

pub fn valuations(agents: usize, items: usize, seed: u64) -> AdditiveValuations {
    generate::additive(&mut ChaCha8Rng::seed_from_u64(seed), agents, items, 100)
}
