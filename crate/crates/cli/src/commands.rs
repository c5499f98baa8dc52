use std::fmt;
use std::path::Path;
use std::time::Instant;

use dynmatch_core::fair::{
    envy_cycle_assignment_with, envy_cycle_original, is_ef1, is_efx, round_robin, value_descending_order, welfare,
    AdditiveValuations, AllocationOutcome, AssignmentOptions, Engine, Valuations,
};
use dynmatch_core::workload::{run_workload, Measure, WorkloadParams};
use dynmatch_core::{hungarian, matching_weight, DynamicAssignment, Error, Matching, Potential};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::format::{self, Instance, ParseError};
use crate::report::*;

pub const EXIT_IO: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_BREACH: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn parse(path: &Path, err: ParseError) -> Self {
        Failure::new(EXIT_PARSE, format!("{}: {err}", path.display()))
    }

    fn at_event(index: usize, err: Error) -> Self {
        let f = Failure::from(err);
        Failure::new(f.code, format!("event {index}: {}", f.message))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Infeasible(_) => EXIT_INFEASIBLE,
            e if e.is_invariant_breach() => EXIT_BREACH,
            Error::DuplicateEdge { .. }
            | Error::VertexOutOfRange { .. }
            | Error::NoSuchEdge { .. }
            | Error::WeightCount { .. }
            | Error::UnnegatableWeight(_)
            | Error::Overflow
            | Error::InvalidEvent(_)
            | Error::SizeCap { .. }
            | Error::NotAdditive => EXIT_PARSE,
            _ => EXIT_BREACH,
        };
        Failure::new(code, err.to_string())
    }
}

pub type Outcome<T> = Result<T, Failure>;

/// Sink for records: JSON lines or human-readable blocks.
pub struct Printer {
    pub json: bool,
}

impl Printer {
    pub fn emit<R: serde::Serialize + Human>(&self, record: &R) {
        if self.json {
            println!("{}", serde_json::to_string(record).expect("records serialize"));
        } else {
            println!("{}", record.human());
        }
    }
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Outcome<Instance> {
    format::parse_instance(&read(path)?).map_err(|e| Failure::parse(path, e))
}

fn potential_record(left: usize, potential: &Potential<i64>) -> PotentialRecord {
    let p = potential.as_slice();
    PotentialRecord {
        left: p[..left].to_vec(),
        right: p[left..].to_vec(),
    }
}

fn matched_edges(instance: &Instance, matching: &Matching) -> Vec<MatchedEdge> {
    let mut edges: Vec<usize> = matching.edges().collect();
    edges.sort_unstable();
    edges
        .into_iter()
        .map(|e| {
            let (left, right) = instance.graph.endpoints(e);
            MatchedEdge {
                edge: e,
                left,
                right,
                weight: instance.weights[e],
            }
        })
        .collect()
}

pub fn solve(out: &Printer, path: &Path) -> Outcome<()> {
    let instance = load_instance(path)?;
    let started = Instant::now();
    let solution = hungarian(&instance.graph, &instance.weights)?;
    let elapsed = started.elapsed();
    out.emit(&SolveRecord {
        weight: matching_weight(&instance.weights, &solution.matching)?,
        matching: matched_edges(&instance, &solution.matching),
        potential: potential_record(instance.graph.left_count(), &solution.potential),
        searches: solution.stats.searches,
        micros: micros(elapsed),
    });
    Ok(())
}

pub fn update(out: &Printer, instance_path: &Path, events_path: &Path, verify: bool) -> Outcome<()> {
    let instance = load_instance(instance_path)?;
    let events =
        format::parse_events(&read(events_path)?, &instance.graph).map_err(|e| Failure::parse(events_path, e))?;

    let started = Instant::now();
    let solution = hungarian(&instance.graph, &instance.weights)?;
    let elapsed = started.elapsed();
    out.emit(&UpdateRecord {
        event: None,
        weight: matching_weight(&instance.weights, &solution.matching)?,
        micros: micros(elapsed),
        searches: solution.stats.searches,
        pops: solution.stats.search.pops,
        relaxations: solution.stats.search.relaxations,
        verified: verify.then_some(true),
    });

    let graph = instance.graph.clone();
    let mut state = DynamicAssignment::from_parts(instance.graph, instance.weights, solution.matching, solution.potential)?;
    for (index, event) in events.iter().enumerate() {
        let started = Instant::now();
        let report = state.apply(event).map_err(|e| Failure::at_event(index, e))?;
        let elapsed = started.elapsed();
        state.check_certificate().map_err(|e| Failure::at_event(index, e))?;
        let verified = if verify {
            let fresh = hungarian(&graph, state.weights()).map_err(|e| Failure::at_event(index, e))?;
            let expected = matching_weight(state.weights(), &fresh.matching)?;
            if expected != report.weight {
                return Err(Failure::new(
                    EXIT_BREACH,
                    format!(
                        "event {index}: maintained weight {} differs from re-solved weight {expected}",
                        report.weight
                    ),
                ));
            }
            Some(true)
        } else {
            None
        };
        out.emit(&UpdateRecord {
            event: Some(index),
            weight: report.weight,
            micros: micros(elapsed),
            searches: report.searches,
            pops: report.stats.pops,
            relaxations: report.stats.relaxations,
            verified,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    Assignment,
    Original,
    RoundRobin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ItemOrder {
    /// Items in file order.
    Input,
    /// Items by total value across agents, most valuable first.
    Ascending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EngineChoice {
    Dijkstra,
    Dag,
}

pub struct AllocateArgs {
    pub algorithm: Algorithm,
    pub order: ItemOrder,
    pub engine: EngineChoice,
    pub checks: bool,
}

pub fn allocate(out: &Printer, path: &Path, args: &AllocateArgs) -> Outcome<()> {
    let valuations: AdditiveValuations = format::parse_valuations(&read(path)?).map_err(|e| Failure::parse(path, e))?;
    let order = match args.order {
        ItemOrder::Input => (0..valuations.item_count()).collect(),
        ItemOrder::Ascending => value_descending_order(&valuations),
    };
    let (name, outcome): (String, AllocationOutcome) = match args.algorithm {
        Algorithm::Assignment => {
            let engine = match args.engine {
                EngineChoice::Dijkstra => Engine::Dijkstra,
                EngineChoice::Dag => Engine::Dag,
            };
            let options = AssignmentOptions {
                engine,
                checks: args.checks,
            };
            let label = format!("assignment ({:?})", args.engine).to_lowercase();
            (label, envy_cycle_assignment_with(&valuations, &order, options, &mut |_| {})?)
        }
        Algorithm::Original => ("original".into(), envy_cycle_original(&valuations, &order)?),
        Algorithm::RoundRobin => {
            let agents: Vec<usize> = (0..valuations.agent_count()).collect();
            ("round-robin".into(), round_robin(&valuations, &agents)?)
        }
    };
    // Round robin chooses its own items, so there is no item order to report.
    let order = if args.algorithm == Algorithm::RoundRobin { Vec::new() } else { order };

    let alloc = &outcome.allocation;
    let ef1 = is_ef1(alloc, &valuations);
    let record = AllocateRecord {
        algorithm: name,
        order,
        bundles: alloc.bundles().iter().map(|b| b.iter().collect()).collect(),
        assignment: alloc.assignment().to_vec(),
        values: (0..alloc.agent_count()).map(|i| valuations.value(i, alloc.bundle_of(i))).collect(),
        welfare: welfare(alloc, &valuations),
        ef1: ef1.is_accept(),
        efx: is_efx(alloc, &valuations).is_accept(),
        searches: outcome.stats.searches,
        exchanges: outcome.stats.exchanges,
        pops: outcome.stats.search.pops,
        relaxations: outcome.stats.search.relaxations,
        item_micros: outcome.stats.item_times.iter().copied().map(micros).collect(),
    };
    out.emit(&record);
    if !record.ef1 {
        return Err(Failure::new(EXIT_BREACH, format!("allocation is not EF1: {ef1:?}")));
    }
    Ok(())
}

fn measure_record(m: &Measure, exchanges: Option<usize>, ef1: Option<bool>) -> MeasureRecord {
    MeasureRecord {
        name: m.name.to_string(),
        micros: micros(m.elapsed),
        searches: m.searches,
        pops: m.pops,
        relaxations: m.relaxations,
        exchanges,
        ef1,
    }
}

pub fn bench(out: &Printer, params: WorkloadParams) -> Outcome<()> {
    let report = run_workload(params)?;
    let per_event = |relaxations: usize| relaxations as f64 / params.events.max(1) as f64;
    let record = BenchRecord {
        seed: params.seed,
        agents: params.agents,
        items: params.items,
        max_value: params.max_value,
        size: params.size,
        events: params.events,
        weight_bound: params.weight_bound,
        allocators: report
            .allocators
            .iter()
            .map(|a| measure_record(&a.measure, Some(a.exchanges), Some(a.ef1)))
            .collect(),
        dynamic: measure_record(&report.dynamic, None, None),
        resolve: measure_record(&report.resolve, None, None),
        relaxations_per_update: per_event(report.dynamic.relaxations),
        relaxations_per_resolve: per_event(report.resolve.relaxations),
    };
    out.emit(&record);
    if let Some(bad) = report.allocators.iter().find(|a| !a.ef1) {
        return Err(Failure::new(EXIT_BREACH, format!("{} produced a non-EF1 allocation", bad.measure.name)));
    }
    Ok(())
}

pub enum GenerateKind {
    Instance { left: usize, right: usize, density: Option<f64> },
    Events { instance: std::path::PathBuf, count: usize },
    Valuations { agents: usize, items: usize, max_value: u64, ordered: bool },
}

/// Writes a seeded random input file to stdout.
pub fn generate(kind: GenerateKind, seed: u64, bound: i64) -> Outcome<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let text = match kind {
        GenerateKind::Instance { left, right, density } => {
            let (graph, weights) = match density {
                Some(d) if left == right => dynmatch_core::generate::planted_instance(&mut rng, left, d, -bound..=bound),
                Some(_) => return Err(Failure::new(EXIT_PARSE, "--density needs --left equal to --right")),
                None => dynmatch_core::generate::complete_instance(&mut rng, left, right, -bound..=bound),
            };
            format::write_instance(&Instance { graph, weights })
        }
        GenerateKind::Events { instance, count } => {
            let instance = load_instance(&instance)?;
            let events: Vec<_> = (0..count)
                .map(|_| dynmatch_core::generate::random_event(&mut rng, &instance.graph, -bound..=bound))
                .collect();
            format::write_events(&events)
        }
        GenerateKind::Valuations {
            agents,
            items,
            max_value,
            ordered,
        } => {
            let v = if ordered {
                dynmatch_core::generate::ordered_additive(&mut rng, agents, items, max_value)
            } else {
                dynmatch_core::generate::additive(&mut rng, agents, items, max_value)
            };
            format::write_valuations(&v)
        }
    };
    print!("{text}");
    Ok(())
}
