//! Output records. Every record serializes to one JSON line under `--json`
//! and to aligned columns otherwise.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

pub fn micros(d: Duration) -> f64 {
    d.as_secs_f64() * 1e6
}

#[derive(Debug, Serialize)]
pub struct MatchedEdge {
    pub edge: usize,
    pub left: usize,
    pub right: usize,
    pub weight: i64,
}

#[derive(Debug, Serialize)]
pub struct PotentialRecord {
    pub left: Vec<i64>,
    pub right: Vec<i64>,
}

#[derive(Debug, Serialize)]
pub struct SolveRecord {
    pub weight: i64,
    pub matching: Vec<MatchedEdge>,
    pub potential: PotentialRecord,
    pub searches: usize,
    pub micros: f64,
}

#[derive(Debug, Serialize)]
pub struct UpdateRecord {
    /// `None` for the initial solve.
    pub event: Option<usize>,
    pub weight: i64,
    pub micros: f64,
    pub searches: usize,
    pub pops: usize,
    pub relaxations: usize,
    /// Present under `--verify`.
    pub verified: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct AllocateRecord {
    pub algorithm: String,
    /// Items in processing order; empty for round robin.
    pub order: Vec<usize>,
    pub bundles: Vec<Vec<usize>>,
    /// `assignment[agent]` is the index of the agent's bundle.
    pub assignment: Vec<usize>,
    pub values: Vec<u64>,
    pub welfare: u128,
    pub ef1: bool,
    pub efx: bool,
    pub searches: usize,
    pub exchanges: usize,
    pub pops: usize,
    pub relaxations: usize,
    pub item_micros: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct MeasureRecord {
    pub name: String,
    pub micros: f64,
    pub searches: usize,
    pub pops: usize,
    pub relaxations: usize,
    /// Allocators only.
    pub exchanges: Option<usize>,
    pub ef1: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct BenchRecord {
    pub seed: u64,
    pub agents: usize,
    pub items: usize,
    pub max_value: u64,
    pub size: usize,
    pub events: usize,
    pub weight_bound: i64,
    pub allocators: Vec<MeasureRecord>,
    pub dynamic: MeasureRecord,
    pub resolve: MeasureRecord,
    pub relaxations_per_update: f64,
    pub relaxations_per_resolve: f64,
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub error: String,
    pub code: u8,
}

pub trait Human {
    fn human(&self) -> String;
}

fn list(values: impl IntoIterator<Item = impl ToString>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn tick(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "NO"
    }
}

impl Human for SolveRecord {
    fn human(&self) -> String {
        let mut out = format!("weight     {}\n", self.weight);
        writeln!(out, "matching   {} edges", self.matching.len()).unwrap();
        for e in &self.matching {
            writeln!(out, "  edge {:>5}  L{} - R{}  w {}", e.edge, e.left, e.right, e.weight).unwrap();
        }
        writeln!(out, "potential  left  {}", list(&self.potential.left)).unwrap();
        writeln!(out, "           right {}", list(&self.potential.right)).unwrap();
        write!(out, "searches   {}  ({:.1} us)", self.searches, self.micros).unwrap();
        out
    }
}

impl Human for UpdateRecord {
    fn human(&self) -> String {
        let label = match self.event {
            None => "initial".to_string(),
            Some(i) => format!("event {i}"),
        };
        let mut out = format!(
            "{label:<12} weight {:>12}  time {:>10.1} us  searches {:>3}  pops {:>6}  relaxations {:>8}",
            self.weight, self.micros, self.searches, self.pops, self.relaxations
        );
        if let Some(ok) = self.verified {
            write!(out, "  verified {}", tick(ok)).unwrap();
        }
        out
    }
}

impl Human for AllocateRecord {
    fn human(&self) -> String {
        let mut out = format!("algorithm  {}\n", self.algorithm);
        if !self.order.is_empty() {
            writeln!(out, "order      {}", list(&self.order)).unwrap();
        }
        for (agent, &b) in self.assignment.iter().enumerate() {
            writeln!(
                out,
                "agent {agent:>3}  bundle {b:>3}  value {:>8}  items {{{}}}",
                self.values[agent],
                self.bundles[b].iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            )
            .unwrap();
        }
        writeln!(out, "welfare    {}", self.welfare).unwrap();
        writeln!(out, "EF1        {}", tick(self.ef1)).unwrap();
        writeln!(out, "EFX        {}", tick(self.efx)).unwrap();
        writeln!(
            out,
            "searches   {}  exchanges {}  pops {}  relaxations {}",
            self.searches, self.exchanges, self.pops, self.relaxations
        )
        .unwrap();
        let total: f64 = self.item_micros.iter().sum();
        write!(out, "item times (us, total {total:.1})").unwrap();
        for (k, t) in self.item_micros.iter().enumerate() {
            match self.order.get(k) {
                Some(item) => write!(out, "\n  step {k:>4}  item {item:>4}  {t:>10.1}").unwrap(),
                None => write!(out, "\n  step {k:>4}  {t:>10.1}").unwrap(),
            }
        }
        out
    }
}

impl MeasureRecord {
    fn row(&self) -> String {
        let mut out = format!(
            "{:<16} {:>12.1} {:>9} {:>10} {:>12}",
            self.name, self.micros, self.searches, self.pops, self.relaxations
        );
        if let (Some(x), Some(ef1)) = (self.exchanges, self.ef1) {
            write!(out, " {x:>9} {:>4}", tick(ef1)).unwrap();
        }
        out
    }
}

impl Human for BenchRecord {
    fn human(&self) -> String {
        let mut out = format!(
            "seed {}  agents {}  items {}  max value {}\n\n",
            self.seed, self.agents, self.items, self.max_value
        );
        writeln!(
            out,
            "{:<16} {:>12} {:>9} {:>10} {:>12} {:>9} {:>4}",
            "allocator", "time (us)", "searches", "pops", "relaxations", "exchanges", "EF1"
        )
        .unwrap();
        for m in &self.allocators {
            writeln!(out, "{}", m.row()).unwrap();
        }
        writeln!(
            out,
            "\n{}x{} instance  {} events  weights in [-{}, {}]\n",
            self.size, self.size, self.events, self.weight_bound, self.weight_bound
        )
        .unwrap();
        writeln!(
            out,
            "{:<16} {:>12} {:>9} {:>10} {:>12}",
            "matching", "time (us)", "searches", "pops", "relaxations"
        )
        .unwrap();
        writeln!(out, "{}", self.dynamic.row()).unwrap();
        writeln!(out, "{}", self.resolve.row()).unwrap();
        write!(
            out,
            "relaxations per event: update {:.1}  re-solve {:.1}",
            self.relaxations_per_update, self.relaxations_per_resolve
        )
        .unwrap();
        out
    }
}
