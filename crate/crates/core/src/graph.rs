//! Bipartite graphs, edge weights, matchings and potentials.

use std::collections::HashMap;
use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::weight::{self, Weight};

/// Stable edge identifier: the position of the edge in the input list.
pub type EdgeId = usize;

/// Dense node index used by the residual views: left vertices first, then
/// right vertices, then (when present) the collapsed dummy vertex.
pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Left(usize),
    Right(usize),
    /// The single vertex standing in for all balancing dummies of a
    /// right-perfect instance.
    Dummy,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Left(i) => write!(f, "L{i}"),
            Vertex::Right(j) => write!(f, "R{j}"),
            Vertex::Dummy => write!(f, "x"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    edges: Vec<(usize, usize)>,
    left_adj: Vec<Vec<EdgeId>>,
    right_adj: Vec<Vec<EdgeId>>,
    index: HashMap<(usize, usize), EdgeId>,
}

impl BipartiteGraph {
    /// Builds a simple bipartite graph. Edge ids follow input order.
    pub fn new(
        left_count: usize,
        right_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut graph = BipartiteGraph {
            left_count,
            right_count,
            edges: Vec::new(),
            left_adj: vec![Vec::new(); left_count],
            right_adj: vec![Vec::new(); right_count],
            index: HashMap::new(),
        };
        for (left, right) in edges {
            if left >= left_count {
                return Err(Error::VertexOutOfRange {
                    vertex: Vertex::Left(left),
                });
            }
            if right >= right_count {
                return Err(Error::VertexOutOfRange {
                    vertex: Vertex::Right(right),
                });
            }
            let id = graph.edges.len();
            if graph.index.insert((left, right), id).is_some() {
                return Err(Error::DuplicateEdge { left, right });
            }
            graph.edges.push((left, right));
            graph.left_adj[left].push(id);
            graph.right_adj[right].push(id);
        }
        Ok(graph)
    }

    /// Complete bipartite graph; edge `(i, j)` has id `i * right_count + j`.
    pub fn complete(left_count: usize, right_count: usize) -> Self {
        let edges = (0..left_count).flat_map(|i| (0..right_count).map(move |j| (i, j)));
        Self::new(left_count, right_count, edges).expect("complete graph is simple")
    }

    /// Same edges with the sides swapped; edge ids are preserved.
    pub fn transpose(&self) -> Self {
        Self::new(
            self.right_count,
            self.left_count,
            self.edges.iter().map(|&(l, r)| (r, l)),
        )
        .expect("transpose of a simple graph is simple")
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn vertex_count(&self) -> usize {
        self.left_count + self.right_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(left, right)` endpoints of an edge.
    pub fn endpoints(&self, edge: EdgeId) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn find_edge(&self, left: usize, right: usize) -> Option<EdgeId> {
        self.index.get(&(left, right)).copied()
    }

    pub fn left_edges(&self, left: usize) -> &[EdgeId] {
        &self.left_adj[left]
    }

    pub fn right_edges(&self, right: usize) -> &[EdgeId] {
        &self.right_adj[right]
    }

    /// Incident edges of a real vertex.
    pub fn incident(&self, vertex: Vertex) -> &[EdgeId] {
        match vertex {
            Vertex::Left(i) => &self.left_adj[i],
            Vertex::Right(j) => &self.right_adj[j],
            Vertex::Dummy => &[],
        }
    }

    pub fn contains(&self, vertex: Vertex) -> bool {
        match vertex {
            Vertex::Left(i) => i < self.left_count,
            Vertex::Right(j) => j < self.right_count,
            Vertex::Dummy => false,
        }
    }

    pub fn node(&self, vertex: Vertex) -> NodeId {
        match vertex {
            Vertex::Left(i) => i,
            Vertex::Right(j) => self.left_count + j,
            Vertex::Dummy => self.left_count + self.right_count,
        }
    }

    pub fn vertex(&self, node: NodeId) -> Vertex {
        if node < self.left_count {
            Vertex::Left(node)
        } else if node < self.left_count + self.right_count {
            Vertex::Right(node - self.left_count)
        } else {
            Vertex::Dummy
        }
    }
}

/// One weight per edge of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeights<W> {
    values: Vec<W>,
}

impl<W: Weight> EdgeWeights<W> {
    pub fn new(graph: &BipartiteGraph, values: Vec<W>) -> Result<Self> {
        if values.len() != graph.edge_count() {
            return Err(Error::WeightCount {
                expected: graph.edge_count(),
                got: values.len(),
            });
        }
        for &w in &values {
            check_negatable(w)?;
        }
        Ok(EdgeWeights { values })
    }

    pub fn zeros(graph: &BipartiteGraph) -> Self {
        EdgeWeights {
            values: vec![W::zero(); graph.edge_count()],
        }
    }

    pub fn get(&self, edge: EdgeId) -> W {
        self.values[edge]
    }

    pub fn set(&mut self, edge: EdgeId, value: W) -> Result<()> {
        check_negatable(value)?;
        self.values[edge] = value;
        Ok(())
    }

    pub fn as_slice(&self) -> &[W] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `1 + sum |w(e)|`.
    pub fn dominating_weight(&self) -> Result<W> {
        weight::dominating_weight(&self.values)
    }
}

impl<W> Index<EdgeId> for EdgeWeights<W> {
    type Output = W;

    fn index(&self, edge: EdgeId) -> &W {
        &self.values[edge]
    }
}

fn check_negatable<W: Weight>(w: W) -> Result<()> {
    match w.checked_neg() {
        Some(_) => Ok(()),
        None => Err(Error::UnnegatableWeight(w.to_string())),
    }
}

/// A matching stored as edge ids with both directional lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    by_left: Vec<Option<EdgeId>>,
    by_right: Vec<Option<EdgeId>>,
    size: usize,
}

impl Matching {
    pub fn empty(graph: &BipartiteGraph) -> Self {
        Matching {
            by_left: vec![None; graph.left_count()],
            by_right: vec![None; graph.right_count()],
            size: 0,
        }
    }

    pub fn from_edges(
        graph: &BipartiteGraph,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self> {
        let mut matching = Self::empty(graph);
        for e in edges {
            matching.insert(graph, e)?;
        }
        Ok(matching)
    }

    pub fn insert(&mut self, graph: &BipartiteGraph, edge: EdgeId) -> Result<()> {
        if edge >= graph.edge_count() {
            return Err(Error::InvalidMatching(format!("unknown edge id {edge}")));
        }
        let (l, r) = graph.endpoints(edge);
        if self.by_left[l].is_some() || self.by_right[r].is_some() {
            return Err(Error::InvalidMatching(format!(
                "edge ({l}, {r}) shares an endpoint with the matching"
            )));
        }
        self.by_left[l] = Some(edge);
        self.by_right[r] = Some(edge);
        self.size += 1;
        Ok(())
    }

    pub fn remove(&mut self, graph: &BipartiteGraph, edge: EdgeId) -> Result<()> {
        if !self.contains(graph, edge) {
            return Err(Error::InvalidMatching(format!("edge {edge} is not matched")));
        }
        let (l, r) = graph.endpoints(edge);
        self.by_left[l] = None;
        self.by_right[r] = None;
        self.size -= 1;
        Ok(())
    }

    pub fn contains(&self, graph: &BipartiteGraph, edge: EdgeId) -> bool {
        let (l, _) = graph.endpoints(edge);
        self.by_left[l] == Some(edge)
    }

    /// Matched edge at a left vertex.
    pub fn left_edge(&self, left: usize) -> Option<EdgeId> {
        self.by_left[left]
    }

    /// Matched edge at a right vertex.
    pub fn right_edge(&self, right: usize) -> Option<EdgeId> {
        self.by_right[right]
    }

    pub fn edge_at(&self, vertex: Vertex) -> Option<EdgeId> {
        match vertex {
            Vertex::Left(i) => self.by_left[i],
            Vertex::Right(j) => self.by_right[j],
            Vertex::Dummy => None,
        }
    }

    /// `mu(u)`.
    pub fn partner_of_left(&self, graph: &BipartiteGraph, left: usize) -> Option<usize> {
        self.by_left[left].map(|e| graph.endpoints(e).1)
    }

    /// `mu^-1(v)`.
    pub fn partner_of_right(&self, graph: &BipartiteGraph, right: usize) -> Option<usize> {
        self.by_right[right].map(|e| graph.endpoints(e).0)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn is_perfect(&self) -> bool {
        self.by_left.len() == self.by_right.len() && self.size == self.by_left.len()
    }

    /// Every right vertex is matched.
    pub fn is_right_perfect(&self) -> bool {
        self.size == self.by_right.len()
    }

    /// Matched edge ids in order of their left endpoint.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.by_left.iter().filter_map(|e| *e)
    }

    pub fn unmatched_left(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_left
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.is_none().then_some(i))
    }

    pub fn unmatched_right(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_right
            .iter()
            .enumerate()
            .filter_map(|(j, e)| e.is_none().then_some(j))
    }
}

/// `w(mu)`, the total weight of a matching.
pub fn matching_weight<W: Weight>(weights: &EdgeWeights<W>, matching: &Matching) -> Result<W> {
    matching
        .edges()
        .try_fold(W::zero(), |acc, e| weight::add(acc, weights.get(e)))
}

/// Dual values indexed by [`NodeId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential<W> {
    values: Vec<W>,
}

impl<W: Weight> Potential<W> {
    pub fn zeros(len: usize) -> Self {
        Potential {
            values: vec![W::zero(); len],
        }
    }

    pub fn from_vec(values: Vec<W>) -> Self {
        Potential { values }
    }

    pub fn get(&self, node: NodeId) -> W {
        self.values[node]
    }

    pub fn set(&mut self, node: NodeId, value: W) {
        self.values[node] = value;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[W] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<W> {
        self.values
    }
}

impl<W> Index<NodeId> for Potential<W> {
    type Output = W;

    fn index(&self, node: NodeId) -> &W {
        &self.values[node]
    }
}
