//! Line-oriented text formats.
//!
//! Instance: `n_left n_right m`, then `m` lines `u v w`.
//! Events: one per line, `L|R index k` followed by `k` pairs `neighbor weight`.
//! Valuations: `n m`, then `n` rows of `m` nonnegative integers.
//!
//! Blank lines and text after `#` are ignored. Indices are 0-based.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use dynmatch_core::fair::AdditiveValuations;
use dynmatch_core::{BipartiteGraph, EdgeWeights, UpdateEvent, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number; 0 when the problem is the end of input.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "end of input: {}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-empty lines with comments stripped, tagged by line number.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .or_else(|_| fail(line, format!("{what} `{token}` is not a valid number")))
}

fn expect_len(line: usize, tokens: &[&str], len: usize, shape: &str) -> Result<(), ParseError> {
    if tokens.len() != len {
        return fail(line, format!("expected `{shape}`, found {} fields", tokens.len()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: BipartiteGraph,
    pub weights: EdgeWeights<i64>,
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return fail(0, "missing header `n_left n_right m`");
    };
    expect_len(hl, &header, 3, "n_left n_right m")?;
    let left: usize = number(hl, header[0], "n_left")?;
    let right: usize = number(hl, header[1], "n_right")?;
    let m: usize = number(hl, header[2], "m")?;

    let mut edges = Vec::with_capacity(m);
    let mut values = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for (line, tokens) in lines {
        if edges.len() == m {
            return fail(line, format!("more than the {m} declared edges"));
        }
        expect_len(line, &tokens, 3, "u v w")?;
        let u: usize = number(line, tokens[0], "left vertex")?;
        let v: usize = number(line, tokens[1], "right vertex")?;
        let w: i64 = number(line, tokens[2], "weight")?;
        if u >= left {
            return fail(line, format!("left vertex {u} out of range 0..{left}"));
        }
        if v >= right {
            return fail(line, format!("right vertex {v} out of range 0..{right}"));
        }
        if w == i64::MIN {
            return fail(line, "weight must be negatable");
        }
        if !seen.insert((u, v)) {
            return fail(line, format!("duplicate edge ({u}, {v})"));
        }
        edges.push((u, v));
        values.push(w);
    }
    if edges.len() != m {
        return fail(0, format!("declared {m} edges, found {}", edges.len()));
    }
    let graph = BipartiteGraph::new(left, right, edges).or_else(|e| fail(hl, e.to_string()))?;
    let weights = EdgeWeights::new(&graph, values).or_else(|e| fail(hl, e.to_string()))?;
    Ok(Instance { graph, weights })
}

pub fn write_instance(instance: &Instance) -> String {
    let g = &instance.graph;
    let mut out = format!("{} {} {}\n", g.left_count(), g.right_count(), g.edge_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(out, "{u} {v} {}", instance.weights[e]).expect("writing to a string");
    }
    out
}

/// Events are checked against the graph: every listed neighbor must be
/// joined to the center, and every edge at the center must be listed.
pub fn parse_events(text: &str, graph: &BipartiteGraph) -> Result<Vec<UpdateEvent<i64>>, ParseError> {
    let mut events = Vec::new();
    for (line, tokens) in content_lines(text) {
        if tokens.len() < 3 {
            return fail(line, "expected `L|R index k` followed by k pairs");
        }
        let index: usize = number(line, tokens[1], "index")?;
        let center = match tokens[0] {
            "L" | "l" if index < graph.left_count() => Vertex::Left(index),
            "R" | "r" if index < graph.right_count() => Vertex::Right(index),
            "L" | "l" | "R" | "r" => return fail(line, format!("{}{index} is not a vertex", tokens[0])),
            other => return fail(line, format!("side `{other}` must be L or R")),
        };
        let k: usize = number(line, tokens[2], "pair count")?;
        if tokens.len() != 3 + 2 * k {
            return fail(
                line,
                format!("{k} pairs announced, {} values follow", tokens.len() - 3),
            );
        }
        let mut weights = Vec::with_capacity(k);
        for pair in tokens[3..].chunks(2) {
            let neighbor: usize = number(line, pair[0], "neighbor")?;
            let w: i64 = number(line, pair[1], "weight")?;
            if w == i64::MIN {
                return fail(line, "weight must be negatable");
            }
            weights.push((neighbor, w));
        }
        let event = UpdateEvent::new(center, weights);
        event.resolve(graph).or_else(|e| fail(line, e.to_string()))?;
        events.push(event);
    }
    Ok(events)
}

pub fn write_events(events: &[UpdateEvent<i64>]) -> String {
    let mut out = String::new();
    for event in events {
        let (side, index) = match event.center() {
            Vertex::Left(i) => ('L', i),
            Vertex::Right(j) => ('R', j),
            Vertex::Dummy => unreachable!("events are centered on real vertices"),
        };
        write!(out, "{side} {index} {}", event.weights().len()).expect("writing to a string");
        for (nb, w) in event.weights() {
            write!(out, " {nb} {w}").expect("writing to a string");
        }
        out.push('\n');
    }
    out
}

pub fn parse_valuations(text: &str) -> Result<AdditiveValuations, ParseError> {
    let mut lines = content_lines(text);
    let Some((hl, header)) = lines.next() else {
        return fail(0, "missing header `n m`");
    };
    expect_len(hl, &header, 2, "n m")?;
    let n: usize = number(hl, header[0], "agent count")?;
    let m: usize = number(hl, header[1], "item count")?;
    let mut rows = Vec::with_capacity(n);
    for (line, tokens) in lines {
        if rows.len() == n {
            return fail(line, format!("more than the {n} declared agents"));
        }
        if tokens.len() != m {
            return fail(line, format!("expected {m} item values, found {}", tokens.len()));
        }
        let row = tokens
            .iter()
            .map(|t| number::<u64>(line, t, "value"))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return fail(0, format!("declared {n} agents, found {}", rows.len()));
    }
    let valuations = if n == 0 {
        AdditiveValuations::new(Vec::new())
    } else {
        AdditiveValuations::new(rows)
    };
    let valuations = valuations.or_else(|e| fail(hl, e.to_string()))?;
    if n > 0 && m > 0 && valuations.rows()[0].len() != m {
        return fail(hl, "row length mismatch");
    }
    Ok(valuations)
}

pub fn write_valuations(valuations: &AdditiveValuations) -> String {
    let rows = valuations.rows();
    let m = rows.first().map_or(0, Vec::len);
    let mut out = format!("{} {m}\n", rows.len());
    for row in rows {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn data(name: &str) -> String {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
        std::fs::read_to_string(path).unwrap()
    }

    #[test]
    fn instance_round_trips() {
        for name in ["fix_a.txt", "single_edge.txt", "isolated.txt", "planted_6.txt"] {
            let parsed = parse_instance(&data(name)).unwrap();
            let again = parse_instance(&write_instance(&parsed)).unwrap();
            assert_eq!(parsed, again, "{name}");
        }
    }

    #[test]
    fn events_round_trip() {
        let inst = parse_instance(&data("fix_a.txt")).unwrap();
        let events = parse_events(&data("fix_a_events.txt"), &inst.graph).unwrap();
        assert_eq!(events.len(), 1);
        assert_eq!(parse_events(&write_events(&events), &inst.graph).unwrap(), events);
    }

    #[test]
    fn valuations_round_trip() {
        for name in ["fix_b.txt", "single_agent.txt"] {
            let parsed = parse_valuations(&data(name)).unwrap();
            assert_eq!(parse_valuations(&write_valuations(&parsed)).unwrap(), parsed, "{name}");
        }
    }

    #[test]
    fn instance_errors_carry_line_numbers() {
        let err = parse_instance("2 2 2\n0 0 1\n\n0 5 3\n").unwrap_err();
        assert_eq!(err.line, 4);
        let err = parse_instance("2 2 2\n0 0 1\n0 0 3\n").unwrap_err();
        assert_eq!((err.line, err.message.as_str()), (3, "duplicate edge (0, 0)"));
        let err = parse_instance("# header next\n2 2 x\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(parse_instance("2 2 3\n0 0 1\n").unwrap_err().line, 0);
        assert_eq!(parse_instance("").unwrap_err().line, 0);
        assert_eq!(parse_instance("1 1 1\n0 0 1 9\n").unwrap_err().line, 2);
    }

    #[test]
    fn event_errors_carry_line_numbers() {
        let inst = parse_instance(&data("fix_a.txt")).unwrap();
        let g = &inst.graph;
        assert_eq!(parse_events("L 0 2 0 1 1 2\nX 0 0\n", g).unwrap_err().line, 2);
        assert_eq!(parse_events("L 0 2 0 1\n", g).unwrap_err().line, 1);
        assert_eq!(parse_events("R 7 0\n", g).unwrap_err().line, 1);
        // Every edge at the center needs a new weight.
        assert_eq!(parse_events("\nL 0 1 0 5\n", g).unwrap_err().line, 2);
    }

    #[test]
    fn omitted_neighbors_are_fine_for_non_edges() {
        let inst = parse_instance("2 2 3\n0 0 1\n1 0 2\n1 1 1\n").unwrap();
        let events = parse_events("L 0 1 0 4\n", &inst.graph).unwrap();
        assert_eq!(events[0].weights(), &[(0, 4)]);
    }

    #[test]
    fn valuation_errors() {
        assert_eq!(parse_valuations("2 2\n1 2\n3\n").unwrap_err().line, 3);
        assert_eq!(parse_valuations("1 2\n1 -2\n").unwrap_err().line, 2);
        assert_eq!(parse_valuations("2 1\n1\n").unwrap_err().line, 0);
    }
}
