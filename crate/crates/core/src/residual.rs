//! Residual (auxiliary) digraphs of a matching and the reduced-weight
//! certificate built on them.
//!
//! In the auxiliary graph of a matching `mu`, a non-matching edge `(u, v)`
//! is an arc `u -> v` carrying `w(e)`, and a matching edge is reversed into
//! `v -> u` carrying `-w(e)`. A potential `p` certifies the view when every
//! arc has nonnegative reduced weight `w + p(tail) - p(head)`.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId, EdgeWeights, Matching, NodeId, Potential, Vertex};
use crate::weight::{self, Weight};

/// What a residual arc stands for; decides how alternation treats it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcKind {
    /// Non-matching edge; alternation adds it.
    Free(EdgeId),
    /// Matching edge traversed backwards; alternation removes it.
    Matched(EdgeId),
    /// Absent star edge materialized at the sentinel weight.
    Virtual { left: usize, right: usize },
    /// Left vertex to the collapsed dummy; alternation parks the vertex there.
    IntoDummy(usize),
    /// Collapsed dummy to a parked left vertex; alternation releases it.
    OutOfDummy(usize),
    /// Arc of a plain digraph, identified by insertion order.
    Plain(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc<W> {
    pub tail: NodeId,
    pub head: NodeId,
    pub weight: W,
    pub kind: ArcKind,
}

/// A weighted digraph on dense node ids, exposed arc by arc.
pub trait ResidualGraph<W: Weight> {
    fn node_count(&self) -> usize;

    fn for_each_arc(&self, node: NodeId, visit: &mut dyn FnMut(Arc<W>));

    /// Human-readable node name for diagnostics.
    fn label(&self, node: NodeId) -> String {
        node.to_string()
    }

    fn arcs(&self) -> Vec<Arc<W>> {
        let mut out = Vec::new();
        for node in 0..self.node_count() {
            self.for_each_arc(node, &mut |a| out.push(a));
        }
        out
    }

    fn arcs_from(&self, node: NodeId) -> Vec<Arc<W>> {
        let mut out = Vec::new();
        self.for_each_arc(node, &mut |a| out.push(a));
        out
    }
}

/// Left vertices parked on the collapsed dummy vertex `x`, which stands for
/// `capacity` interchangeable zero-weight right vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DummyPool {
    capacity: usize,
    members: Vec<bool>,
    count: usize,
}

impl DummyPool {
    pub fn new(left_count: usize, capacity: usize) -> Self {
        DummyPool {
            capacity,
            members: vec![false; left_count],
            count: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn is_full(&self) -> bool {
        self.count == self.capacity
    }

    pub fn contains(&self, left: usize) -> bool {
        self.members[left]
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn insert(&mut self, left: usize) -> Result<()> {
        if self.members[left] {
            return Err(Error::InvalidMatching(format!("L{left} already on the dummy")));
        }
        if self.count == self.capacity {
            return Err(Error::InvalidMatching("dummy over capacity".into()));
        }
        self.members[left] = true;
        self.count += 1;
        Ok(())
    }

    pub fn remove(&mut self, left: usize) -> Result<()> {
        if !self.members[left] {
            return Err(Error::InvalidMatching(format!("L{left} is not on the dummy")));
        }
        self.members[left] = false;
        self.count -= 1;
        Ok(())
    }
}

/// The auxiliary graph `G_mu` of a matching, optionally
///
/// * mirrored (every arc reversed, which is the auxiliary graph of the
///   transposed instance),
/// * with a virtual full star around one center vertex,
/// * with the collapsed dummy vertex of a right-perfect instance,
/// * restricted to arcs lighter than a sentinel.
///
/// Potentials handed to generic routines must be in the view's own sign
/// convention; [`AuxiliaryView::oriented`] converts.
#[derive(Debug, Clone, Copy)]
pub struct AuxiliaryView<'a, W> {
    graph: &'a BipartiteGraph,
    weights: &'a EdgeWeights<W>,
    matching: &'a Matching,
    mirrored: bool,
    star: Option<(Vertex, W)>,
    dummy: Option<&'a DummyPool>,
    sentinel: Option<W>,
}

impl<'a, W: Weight> AuxiliaryView<'a, W> {
    pub fn new(graph: &'a BipartiteGraph, weights: &'a EdgeWeights<W>, matching: &'a Matching) -> Self {
        AuxiliaryView {
            graph,
            weights,
            matching,
            mirrored: false,
            star: None,
            dummy: None,
            sentinel: None,
        }
    }

    /// Reverse every arc. The reduced weight of each arc is unchanged when
    /// potentials are negated, see [`AuxiliaryView::oriented`].
    pub fn mirrored(mut self) -> Self {
        self.mirrored = !self.mirrored;
        self
    }

    /// Materialize every absent edge around `center` at weight `big`. The
    /// center must sit on the side whose arcs leave it: left when unmirrored,
    /// right when mirrored.
    pub fn with_star(mut self, center: Vertex, big: W) -> Self {
        debug_assert!(matches!(
            (center, self.mirrored),
            (Vertex::Left(_), false) | (Vertex::Right(_), true)
        ));
        self.star = Some((center, big));
        self
    }

    /// Attach the collapsed dummy vertex. A pool of capacity zero adds nothing.
    pub fn with_dummy(mut self, pool: &'a DummyPool) -> Self {
        if pool.capacity() > 0 {
            self.dummy = Some(pool);
        }
        self
    }

    /// Drop non-matching arcs whose weight is at least `sentinel`.
    pub fn below(mut self, sentinel: W) -> Self {
        self.sentinel = Some(sentinel);
        self
    }

    pub fn graph(&self) -> &'a BipartiteGraph {
        self.graph
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    pub fn has_dummy(&self) -> bool {
        self.dummy.is_some()
    }

    /// The potential in this view's sign convention, sized to its nodes.
    pub fn oriented(&self, potential: &Potential<W>) -> Vec<W> {
        let n = self.node_count();
        let mut out: Vec<W> = potential.as_slice().iter().take(n).copied().collect();
        out.resize(n, W::zero());
        if self.mirrored {
            for p in &mut out {
                *p = -*p;
            }
        }
        out
    }

    fn keep(&self, w: W) -> bool {
        self.sentinel.is_none_or(|s| w < s)
    }

    fn emit(&self, tail: NodeId, head: NodeId, weight: W, kind: ArcKind, visit: &mut dyn FnMut(Arc<W>)) {
        visit(Arc {
            tail,
            head,
            weight,
            kind,
        });
    }

    fn star_arcs(&self, center: Vertex, big: W, visit: &mut dyn FnMut(Arc<W>)) {
        let g = self.graph;
        let tail = g.node(center);
        match center {
            Vertex::Left(u) => {
                let mut present: Vec<Option<EdgeId>> = vec![None; g.right_count()];
                for &e in g.left_edges(u) {
                    present[g.endpoints(e).1] = Some(e);
                }
                for (j, slot) in present.into_iter().enumerate() {
                    let head = g.node(Vertex::Right(j));
                    match slot {
                        Some(e) if !self.matching.contains(g, e) => {
                            let w = self.weights.get(e);
                            if self.keep(w) {
                                self.emit(tail, head, w, ArcKind::Free(e), visit);
                            }
                        }
                        Some(_) => {}
                        None if self.sentinel.is_none() => {
                            self.emit(tail, head, big, ArcKind::Virtual { left: u, right: j }, visit)
                        }
                        None => {}
                    }
                }
            }
            Vertex::Right(v) => {
                let mut present: Vec<Option<EdgeId>> = vec![None; g.left_count()];
                for &e in g.right_edges(v) {
                    present[g.endpoints(e).0] = Some(e);
                }
                for (i, slot) in present.into_iter().enumerate() {
                    let head = g.node(Vertex::Left(i));
                    match slot {
                        Some(e) if !self.matching.contains(g, e) => {
                            let w = self.weights.get(e);
                            if self.keep(w) {
                                self.emit(tail, head, w, ArcKind::Free(e), visit);
                            }
                        }
                        Some(_) => {}
                        None if self.sentinel.is_none() => {
                            self.emit(tail, head, big, ArcKind::Virtual { left: i, right: v }, visit)
                        }
                        None => {}
                    }
                }
            }
            Vertex::Dummy => {}
        }
    }
}

impl<W: Weight> ResidualGraph<W> for AuxiliaryView<'_, W> {
    fn node_count(&self) -> usize {
        self.graph.vertex_count() + usize::from(self.dummy.is_some())
    }

    fn label(&self, node: NodeId) -> String {
        self.graph.vertex(node).to_string()
    }

    fn for_each_arc(&self, node: NodeId, visit: &mut dyn FnMut(Arc<W>)) {
        let g = self.graph;
        let m = self.matching;
        let vertex = g.vertex(node);
        let x = g.node(Vertex::Dummy);
        if let Some((center, big)) = self.star {
            if center == vertex {
                self.star_arcs(center, big, visit);
                if let (Vertex::Left(u), Some(pool)) = (center, self.dummy) {
                    if !pool.contains(u) || pool.capacity() >= 2 {
                        self.emit(node, x, W::zero(), ArcKind::IntoDummy(u), visit);
                    }
                }
                return;
            }
        }
        match (vertex, self.mirrored) {
            (Vertex::Left(u), false) => {
                for &e in g.left_edges(u) {
                    if m.left_edge(u) != Some(e) && self.keep(self.weights.get(e)) {
                        let head = g.node(Vertex::Right(g.endpoints(e).1));
                        self.emit(node, head, self.weights.get(e), ArcKind::Free(e), visit);
                    }
                }
                if let Some(pool) = self.dummy {
                    if !pool.contains(u) || pool.capacity() >= 2 {
                        self.emit(node, x, W::zero(), ArcKind::IntoDummy(u), visit);
                    }
                }
            }
            (Vertex::Right(v), false) => {
                if let Some(e) = m.right_edge(v) {
                    let head = g.node(Vertex::Left(g.endpoints(e).0));
                    self.emit(node, head, -self.weights.get(e), ArcKind::Matched(e), visit);
                }
            }
            (Vertex::Dummy, false) => {
                if let Some(pool) = self.dummy {
                    for u in pool.members() {
                        self.emit(node, u, W::zero(), ArcKind::OutOfDummy(u), visit);
                    }
                }
            }
            (Vertex::Right(v), true) => {
                for &e in g.right_edges(v) {
                    if m.right_edge(v) != Some(e) && self.keep(self.weights.get(e)) {
                        let head = g.node(Vertex::Left(g.endpoints(e).0));
                        self.emit(node, head, self.weights.get(e), ArcKind::Free(e), visit);
                    }
                }
            }
            (Vertex::Left(u), true) => {
                if let Some(e) = m.left_edge(u) {
                    let head = g.node(Vertex::Right(g.endpoints(e).1));
                    self.emit(node, head, -self.weights.get(e), ArcKind::Matched(e), visit);
                }
                if let Some(pool) = self.dummy {
                    if pool.contains(u) {
                        self.emit(node, x, W::zero(), ArcKind::OutOfDummy(u), visit);
                    }
                }
            }
            (Vertex::Dummy, true) => {
                if let Some(pool) = self.dummy {
                    for u in 0..g.left_count() {
                        if !pool.contains(u) || pool.capacity() >= 2 {
                            self.emit(node, u, W::zero(), ArcKind::IntoDummy(u), visit);
                        }
                    }
                }
            }
        }
    }
}

/// A plain weighted digraph.
#[derive(Debug, Clone, Default)]
pub struct ArcList<W> {
    adjacency: Vec<Vec<Arc<W>>>,
    arc_count: usize,
}

impl<W: Weight> ArcList<W> {
    pub fn new(node_count: usize) -> Self {
        ArcList {
            adjacency: vec![Vec::new(); node_count],
            arc_count: 0,
        }
    }

    pub fn add_arc(&mut self, tail: NodeId, head: NodeId, weight: W) -> usize {
        let id = self.arc_count;
        self.adjacency[tail].push(Arc {
            tail,
            head,
            weight,
            kind: ArcKind::Plain(id),
        });
        self.arc_count += 1;
        id
    }

    /// Copy of any residual graph as a plain arc list, arc kinds preserved.
    pub fn snapshot(graph: &impl ResidualGraph<W>) -> Self {
        let mut list = ArcList::new(graph.node_count());
        for a in graph.arcs() {
            list.adjacency[a.tail].push(a);
            list.arc_count += 1;
        }
        list
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }
}

impl<W: Weight> ResidualGraph<W> for ArcList<W> {
    fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    fn for_each_arc(&self, node: NodeId, visit: &mut dyn FnMut(Arc<W>)) {
        for &a in &self.adjacency[node] {
            visit(a);
        }
    }
}

/// `w_mu(e) + p(tail) - p(head)`.
pub fn reduced_weight<W: Weight>(arc: &Arc<W>, potential: &[W]) -> Result<W> {
    weight::sub(weight::add(arc.weight, potential[arc.tail])?, potential[arc.head])
}

/// Outcome of a certificate check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate<W> {
    Valid,
    Violated { arc: Arc<W>, reduced: W },
}

impl<W: Weight> Certificate<W> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Certificate::Valid)
    }

    pub(crate) fn into_result(self, graph: &impl ResidualGraph<W>) -> Result<()> {
        match self {
            Certificate::Valid => Ok(()),
            Certificate::Violated { arc, reduced } => Err(Error::CertificateViolation {
                tail: graph.label(arc.tail),
                head: graph.label(arc.head),
                reduced: reduced.to_string(),
            }),
        }
    }
}

/// Accepts iff every arc has nonnegative reduced weight; otherwise reports
/// the first violating arc in node order.
pub fn validate_potential<W: Weight>(
    graph: &impl ResidualGraph<W>,
    potential: &[W],
) -> Result<Certificate<W>> {
    if potential.len() < graph.node_count() {
        return Err(Error::InvalidMatching(format!(
            "potential has {} entries for {} nodes",
            potential.len(),
            graph.node_count()
        )));
    }
    for node in 0..graph.node_count() {
        let mut found = None;
        let mut overflow = false;
        graph.for_each_arc(node, &mut |a| {
            if found.is_some() || overflow {
                return;
            }
            match reduced_weight(&a, potential) {
                Ok(r) if r < W::zero() => found = Some((a, r)),
                Ok(_) => {}
                Err(_) => overflow = true,
            }
        });
        if overflow {
            return Err(Error::Overflow);
        }
        if let Some((arc, reduced)) = found {
            return Ok(Certificate::Violated { arc, reduced });
        }
    }
    Ok(Certificate::Valid)
}

/// Sum of arc weights along a path or cycle.
pub fn path_weight<W: Weight>(path: &[Arc<W>]) -> Result<W> {
    path.iter().try_fold(W::zero(), |acc, a| weight::add(acc, a.weight))
}

/// `mu` symmetric-difference `P` for an augmenting path or alternating cycle
/// of the auxiliary view of `mu`.
pub fn apply_alternation<W: Weight>(
    graph: &BipartiteGraph,
    matching: &Matching,
    path: &[Arc<W>],
) -> Result<Matching> {
    let mut out = matching.clone();
    alternate(graph, &mut out, None, path)?;
    Ok(out)
}

pub(crate) fn alternate<W: Weight>(
    graph: &BipartiteGraph,
    matching: &mut Matching,
    mut pool: Option<&mut DummyPool>,
    path: &[Arc<W>],
) -> Result<()> {
    for pair in path.windows(2) {
        if pair[0].head != pair[1].tail {
            return Err(Error::NotAlternating(format!(
                "arc into {} followed by arc out of {}",
                pair[0].head, pair[1].tail
            )));
        }
    }
    for a in path {
        match a.kind {
            ArcKind::Matched(e) => {
                if !matching.contains(graph, e) {
                    return Err(Error::NotAlternating(format!("edge {e} is not matched")));
                }
            }
            ArcKind::Free(e) => {
                if matching.contains(graph, e) {
                    return Err(Error::NotAlternating(format!("edge {e} is already matched")));
                }
            }
            ArcKind::Virtual { left, right } => {
                return Err(Error::NotAlternating(format!(
                    "virtual edge ({left}, {right}) is not part of the graph"
                )));
            }
            ArcKind::Plain(_) => {
                return Err(Error::NotAlternating("plain arc in an alternation".into()));
            }
            ArcKind::IntoDummy(_) | ArcKind::OutOfDummy(_) if pool.is_none() => {
                return Err(Error::NotAlternating("dummy arc without a dummy vertex".into()));
            }
            _ => {}
        }
    }
    for a in path {
        match a.kind {
            ArcKind::Matched(e) => matching.remove(graph, e)?,
            ArcKind::OutOfDummy(u) => pool.as_deref_mut().expect("checked").remove(u)?,
            _ => {}
        }
    }
    for a in path {
        let res = match a.kind {
            ArcKind::Free(e) => matching.insert(graph, e),
            ArcKind::IntoDummy(u) => pool.as_deref_mut().expect("checked").insert(u),
            _ => Ok(()),
        };
        res.map_err(|e| Error::NotAlternating(e.to_string()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fix_a() -> (BipartiteGraph, EdgeWeights<i64>) {
        let g = BipartiteGraph::complete(2, 2);
        let w = EdgeWeights::new(&g, vec![1, 4, 2, 1]).unwrap();
        (g, w)
    }

    fn find(view: &impl ResidualGraph<i64>, tail: NodeId, head: NodeId) -> Arc<i64> {
        view.arcs_from(tail)
            .into_iter()
            .find(|a| a.head == head)
            .expect("arc present")
    }

    #[test]
    fn reduced_weights_on_fixture() {
        let (g, w) = fix_a();
        let mu = Matching::from_edges(&g, [0, 3]).unwrap();
        let view = AuxiliaryView::new(&g, &w, &mu);
        let p = [0, 0, 1, 1];
        // u2 -> v1
        let a = find(&view, 1, 2);
        assert_eq!(reduced_weight(&a, &p).unwrap(), 1);
        // v1 -> u1, reversed matching edge
        let a = find(&view, 2, 0);
        assert_eq!(a.weight, -1);
        assert_eq!(reduced_weight(&a, &p).unwrap(), 0);
    }

    #[test]
    fn zero_weights_reduce_to_zero() {
        let g = BipartiteGraph::complete(3, 3);
        let w = EdgeWeights::<i64>::zeros(&g);
        let mu = Matching::from_edges(&g, [0, 4, 8]).unwrap();
        let view = AuxiliaryView::new(&g, &w, &mu);
        for a in view.arcs() {
            assert_eq!(reduced_weight(&a, &[0; 6]).unwrap(), 0);
        }
        assert!(validate_potential(&view, &[0; 6]).unwrap().is_valid());
    }

    #[test]
    fn validates_fixture_potential() {
        let (g, w) = fix_a();
        let mu = Matching::from_edges(&g, [0, 3]).unwrap();
        let view = AuxiliaryView::new(&g, &w, &mu);
        assert!(validate_potential(&view, &[0, 0, 1, 1]).unwrap().is_valid());
        match validate_potential(&view, &[0, 0, 0, 0]).unwrap() {
            Certificate::Violated { arc, reduced } => {
                assert_eq!(reduced, -1);
                assert!(matches!(arc.kind, ArcKind::Matched(_)));
            }
            Certificate::Valid => panic!("zero potential must be rejected"),
        }
    }

    #[test]
    fn residual_orientation() {
        let (g, w) = fix_a();
        let mu = Matching::from_edges(&g, [0, 3]).unwrap();
        let view = AuxiliaryView::new(&g, &w, &mu);
        let arcs = view.arcs();
        assert_eq!(arcs.len(), 4);
        for a in arcs {
            match a.kind {
                ArcKind::Free(e) => {
                    let (l, r) = g.endpoints(e);
                    assert_eq!((a.tail, a.head), (l, 2 + r));
                    assert_eq!(a.weight, w[e]);
                }
                ArcKind::Matched(e) => {
                    let (l, r) = g.endpoints(e);
                    assert_eq!((a.tail, a.head), (2 + r, l));
                    assert_eq!(a.weight, -w[e]);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn mirrored_view_reverses_arcs() {
        let (g, w) = fix_a();
        let mu = Matching::from_edges(&g, [0, 3]).unwrap();
        let fwd = AuxiliaryView::new(&g, &w, &mu);
        let rev = fwd.mirrored();
        let mut a: Vec<_> = fwd.arcs().into_iter().map(|a| (a.head, a.tail, a.weight, a.kind)).collect();
        let mut b: Vec<_> = rev.arcs().into_iter().map(|a| (a.tail, a.head, a.weight, a.kind)).collect();
        a.sort_by_key(|t| (t.0, t.1));
        b.sort_by_key(|t| (t.0, t.1));
        assert_eq!(a, b);
        let p = Potential::from_vec(vec![0, 0, 1, 1]);
        assert!(validate_potential(&rev, &rev.oriented(&p)).unwrap().is_valid());
    }

    #[test]
    fn alternation_along_path() {
        let g = BipartiteGraph::complete(2, 2);
        let w = EdgeWeights::new(&g, vec![10i64, 1, 2, 1]).unwrap();
        let mu_prime = Matching::from_edges(&g, [3]).unwrap();
        let view = AuxiliaryView::new(&g, &w, &mu_prime);
        // u1 -> v2 -> u2 -> v1
        let path = vec![find(&view, 0, 3), find(&view, 3, 1), find(&view, 1, 2)];
        let out = apply_alternation(&g, &mu_prime, &path).unwrap();
        let mut edges: Vec<_> = out.edges().collect();
        edges.sort();
        assert_eq!(edges, vec![1, 2]);
        let before = crate::graph::matching_weight(&w, &mu_prime).unwrap();
        let after = crate::graph::matching_weight(&w, &out).unwrap();
        assert_eq!(after, before + path_weight(&path).unwrap());
    }

    #[test]
    fn alternation_single_edge() {
        let g = BipartiteGraph::complete(1, 1);
        let w = EdgeWeights::new(&g, vec![3i64]).unwrap();
        let mu = Matching::empty(&g);
        let view = AuxiliaryView::new(&g, &w, &mu);
        let out = apply_alternation(&g, &mu, &view.arcs()).unwrap();
        assert_eq!(out.edges().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn alternation_around_cycle() {
        let (g, w) = fix_a();
        let mu = Matching::from_edges(&g, [0, 3]).unwrap();
        let view = AuxiliaryView::new(&g, &w, &mu);
        // u1 -> v2 -> u2 -> v1 -> u1
        let cycle = vec![find(&view, 0, 3), find(&view, 3, 1), find(&view, 1, 2), find(&view, 2, 0)];
        let out = apply_alternation(&g, &mu, &cycle).unwrap();
        let mut edges: Vec<_> = out.edges().collect();
        edges.sort();
        assert_eq!(edges, vec![1, 2]);
        assert_eq!(path_weight(&cycle).unwrap(), 4);
    }

    #[test]
    fn alternation_rejects_broken_path() {
        let (g, w) = fix_a();
        let mu = Matching::from_edges(&g, [0, 3]).unwrap();
        let view = AuxiliaryView::new(&g, &w, &mu);
        let path = vec![find(&view, 0, 3), find(&view, 2, 0)];
        assert!(matches!(
            apply_alternation(&g, &mu, &path),
            Err(Error::NotAlternating(_))
        ));
        // Free arc whose endpoint is already matched.
        let path = vec![find(&view, 1, 2)];
        assert!(matches!(
            apply_alternation(&g, &mu, &path),
            Err(Error::NotAlternating(_))
        ));
    }

    #[test]
    fn star_materializes_absent_edges() {
        let g = BipartiteGraph::new(2, 2, [(0, 0), (1, 0), (1, 1)]).unwrap();
        let w = EdgeWeights::new(&g, vec![5i64, 1, 2]).unwrap();
        let mu = Matching::from_edges(&g, [1]).unwrap();
        let view = AuxiliaryView::new(&g, &w, &mu).with_star(Vertex::Left(0), 99);
        let out = view.arcs_from(0);
        assert_eq!(out.len(), 2);
        assert_eq!(out[1].kind, ArcKind::Virtual { left: 0, right: 1 });
        assert_eq!(out[1].weight, 99);
        assert!(view.below(50).arcs_from(0).iter().all(|a| a.weight < 50));
    }

    #[test]
    fn dummy_arcs() {
        let g = BipartiteGraph::complete(3, 1);
        let w = EdgeWeights::new(&g, vec![-5i64, -3, -1]).unwrap();
        let mu = Matching::from_edges(&g, [0]).unwrap();
        let mut pool = DummyPool::new(3, 2);
        pool.insert(1).unwrap();
        pool.insert(2).unwrap();
        let view = AuxiliaryView::new(&g, &w, &mu).with_dummy(&pool);
        assert_eq!(view.node_count(), 5);
        let x = 4;
        let into: Vec<_> = view.arcs().into_iter().filter(|a| a.head == x).collect();
        // capacity 2: every left vertex reaches some dummy
        assert_eq!(into.len(), 3);
        let out = view.arcs_from(x);
        assert_eq!(out.iter().map(|a| a.head).collect::<Vec<_>>(), vec![1, 2]);
    }
}
