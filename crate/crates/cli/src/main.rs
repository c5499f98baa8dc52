mod commands;
mod format;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dynmatch_core::workload::WorkloadParams;

use commands::{AllocateArgs, Algorithm, EngineChoice, GenerateKind, ItemOrder, Printer};
use report::ErrorRecord;

/// Dynamic minimum-weight assignment and envy-cycle allocation.
///
/// Exit codes: 0 success, 1 I/O error, 2 rejected input, 3 infeasible,
/// 4 internal invariant breach.
#[derive(Debug, Parser)]
#[command(name = "dynmatch", version)]
struct Cli {
    /// Emit one JSON record per result instead of columns.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance: optimal weight, matching and potential.
    Solve { instance: PathBuf },

    /// Solve an instance, then apply a stream of single-vertex events.
    Update {
        instance: PathBuf,
        events: PathBuf,
        /// Re-solve from scratch after every event and compare.
        #[arg(long)]
        verify: bool,
    },

    /// Allocate items among agents with additive valuations.
    Allocate {
        valuations: PathBuf,
        #[arg(long, value_enum, default_value_t = Algorithm::Assignment)]
        algorithm: Algorithm,
        #[arg(long, value_enum, default_value_t = ItemOrder::Input)]
        order: ItemOrder,
        /// Shortest-path routine for the assignment-based procedure.
        #[arg(long, value_enum, default_value_t = EngineChoice::Dijkstra)]
        engine: EngineChoice,
        /// Check improvement, acyclicity and the certificate after every
        /// re-optimization.
        #[arg(long)]
        checks: bool,
    },

    /// Compare the allocators, and updates against re-solving, on seeded
    /// random inputs.
    Bench {
        #[arg(long, default_value_t = 50)]
        agents: usize,
        #[arg(long, default_value_t = 500)]
        items: usize,
        #[arg(long, default_value_t = 100)]
        max_value: u64,
        /// Side length of the matching instance.
        #[arg(long, default_value_t = 50)]
        size: usize,
        #[arg(long, default_value_t = 50)]
        events: usize,
        /// Edge weights are drawn from [-bound, bound].
        #[arg(long, default_value_t = 50)]
        weight_bound: i64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },

    /// Print a seeded random input file.
    Generate {
        #[command(subcommand)]
        kind: GenerateCommand,
        #[arg(long, global = true, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum GenerateCommand {
    /// Complete instance, or with --density a planted sparse one.
    Instance {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        /// Edge probability beyond a planted perfect matching (square only).
        #[arg(long)]
        density: Option<f64>,
        #[arg(long, default_value_t = 50)]
        weight_bound: i64,
    },
    /// Random events for an existing instance.
    Events {
        instance: PathBuf,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 50)]
        weight_bound: i64,
    },
    /// Additive valuation matrix.
    Valuations {
        #[arg(long)]
        agents: usize,
        #[arg(long)]
        items: usize,
        #[arg(long, default_value_t = 100)]
        max_value: u64,
        /// Every agent ranks the items in the same order.
        #[arg(long)]
        ordered: bool,
    },
}

fn run(cli: Cli, out: &Printer) -> commands::Outcome<()> {
    match cli.command {
        Command::Solve { instance } => commands::solve(out, &instance),
        Command::Update { instance, events, verify } => commands::update(out, &instance, &events, verify),
        Command::Allocate {
            valuations,
            algorithm,
            order,
            engine,
            checks,
        } => commands::allocate(
            out,
            &valuations,
            &AllocateArgs {
                algorithm,
                order,
                engine,
                checks,
            },
        ),
        Command::Bench {
            agents,
            items,
            max_value,
            size,
            events,
            weight_bound,
            seed,
        } => commands::bench(
            out,
            WorkloadParams {
                agents,
                items,
                max_value,
                size,
                events,
                weight_bound,
                seed,
            },
        ),
        Command::Generate { kind, seed } => {
            let (kind, bound) = match kind {
                GenerateCommand::Instance {
                    left,
                    right,
                    density,
                    weight_bound,
                } => (GenerateKind::Instance { left, right, density }, weight_bound),
                GenerateCommand::Events {
                    instance,
                    count,
                    weight_bound,
                } => (GenerateKind::Events { instance, count }, weight_bound),
                GenerateCommand::Valuations {
                    agents,
                    items,
                    max_value,
                    ordered,
                } => (
                    GenerateKind::Valuations {
                        agents,
                        items,
                        max_value,
                        ordered,
                    },
                    0,
                ),
            };
            commands::generate(kind, seed, bound)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { commands::EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = Printer { json: cli.json };
    match run(cli, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if out.json {
                let record = ErrorRecord {
                    error: failure.message.clone(),
                    code: failure.code,
                };
                println!("{}", serde_json::to_string(&record).expect("records serialize"));
            }
            eprintln!("error: {failure}");
            ExitCode::from(failure.code)
        }
    }
}
