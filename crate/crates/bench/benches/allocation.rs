use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dynmatch_bench::valuations;
use dynmatch_core::fair::{envy_cycle_assignment_with, envy_cycle_original, round_robin, AssignmentOptions, Engine};

fn allocators(c: &mut Criterion) {
    let mut group = c.benchmark_group("allocate");
    group.sample_size(10);
    for (agents, items) in [(10, 100), (30, 300), (50, 500)] {
        let vals = valuations(agents, items, agents as u64);
        let order: Vec<usize> = (0..items).collect();
        let label = format!("{agents}x{items}");
        group.bench_with_input(BenchmarkId::new("original", &label), &vals, |b, v| {
            b.iter(|| black_box(envy_cycle_original(v, &order).unwrap()))
        });
        for (name, engine) in [("assignment_dijkstra", Engine::Dijkstra), ("assignment_dag", Engine::Dag)] {
            let options = AssignmentOptions { engine, checks: false };
            group.bench_with_input(BenchmarkId::new(name, &label), &vals, |b, v| {
                b.iter(|| black_box(envy_cycle_assignment_with(v, &order, options, &mut |_| {}).unwrap()))
            });
        }
        let agent_order: Vec<usize> = (0..agents).collect();
        group.bench_with_input(BenchmarkId::new("round_robin", &label), &vals, |b, v| {
            b.iter(|| black_box(round_robin(v, &agent_order).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, allocators);
criterion_main!(benches);
