//! Dart-based cubic multipoles.
//!
//! Every edge `e` owns the two darts `2e` and `2e + 1`; a dart is either
//! attached to a vertex or is a semiedge. Links, dangling edges and isolated
//! edges all fall out of this one representation, which keeps parallel edges
//! and vertex-less edges uniform. The darts of a vertex are kept in creation
//! order; counting uses that order as its fixed rotation.

mod cuts;
pub mod generators;
pub mod io;

use std::collections::VecDeque;
use std::fmt;

pub use cuts::{contract_cut_side, find_small_cuts, EdgeCut, Shore};

use thiserror::Error;

pub type Dart = usize;
pub type EdgeId = usize;

/// One end of an edge while building a multipole. `Semi` carries a 0-based
/// position in the semiedge order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Vertex(usize),
    Semi(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Link,
    Dangling,
    Isolated,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: EdgeId, vertex: usize },
    #[error("vertex index {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("semiedge slot {slot} used {uses} times")]
    BadSemiedgeSlot { slot: usize, uses: usize },
    #[error("size mismatch: {left} vs {right} semiedges")]
    SizeMismatch { left: usize, right: usize },
    #[error("operation requires a graph, found a {0}-pole")]
    NotAGraph(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not representable: {0}")]
    Unrepresentable(String),
    #[error("invalid rotation: {0}")]
    InvalidRotation(String),
}

/// An ordered cubic multipole. Graphs are the 0-poles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multipole {
    vertex_of: Vec<Option<usize>>,
    incidence: Vec<[Dart; 3]>,
    semiedges: Vec<Dart>,
}

impl Multipole {
    /// Builds a multipole with `order` vertices and `size` semiedges from a
    /// list of edges. Edge `i` gets darts `2i` (first end) and `2i + 1`.
    pub fn new(order: usize, size: usize, edges: &[(End, End)]) -> Result<Self, GraphError> {
        let mut vertex_of = Vec::with_capacity(2 * edges.len());
        let mut incidence: Vec<Vec<Dart>> = vec![Vec::with_capacity(3); order];
        let mut slots: Vec<Vec<Dart>> = vec![Vec::new(); size];
        for (e, &(a, b)) in edges.iter().enumerate() {
            if let (End::Vertex(u), End::Vertex(v)) = (a, b) {
                if u == v {
                    return Err(GraphError::Loop { edge: e, vertex: u });
                }
            }
            for (i, end) in [a, b].into_iter().enumerate() {
                let dart = 2 * e + i;
                match end {
                    End::Vertex(v) => {
                        if v >= order {
                            return Err(GraphError::VertexOutOfRange { vertex: v, order });
                        }
                        incidence[v].push(dart);
                        vertex_of.push(Some(v));
                    }
                    End::Semi(s) => {
                        if s >= size {
                            return Err(GraphError::BadSemiedgeSlot { slot: s, uses: 1 });
                        }
                        slots[s].push(dart);
                        vertex_of.push(None);
                    }
                }
            }
        }
        for (s, darts) in slots.iter().enumerate() {
            if darts.len() != 1 {
                return Err(GraphError::BadSemiedgeSlot { slot: s, uses: darts.len() });
            }
        }
        let incidence = incidence
            .into_iter()
            .enumerate()
            .map(|(v, ds)| {
                <[Dart; 3]>::try_from(ds.as_slice())
                    .map_err(|_| GraphError::NotCubic { vertex: v, degree: ds.len() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Multipole {
            vertex_of,
            incidence,
            semiedges: slots.into_iter().map(|d| d[0]).collect(),
        })
    }

    /// Builds a graph (0-pole) from vertex pairs.
    pub fn from_edges(order: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let ends: Vec<_> = edges.iter().map(|&(u, v)| (End::Vertex(u), End::Vertex(v))).collect();
        Self::new(order, 0, &ends)
    }

    pub fn empty() -> Self {
        Multipole { vertex_of: Vec::new(), incidence: Vec::new(), semiedges: Vec::new() }
    }

    /// Number of vertices, n(g).
    pub fn order(&self) -> usize {
        self.incidence.len()
    }

    /// Number of semiedges, |g|.
    pub fn size(&self) -> usize {
        self.semiedges.len()
    }

    pub fn is_graph(&self) -> bool {
        self.semiedges.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_of.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.vertex_of.len()
    }

    #[inline]
    pub fn twin(&self, d: Dart) -> Dart {
        d ^ 1
    }

    #[inline]
    pub fn edge_of(&self, d: Dart) -> EdgeId {
        d / 2
    }

    #[inline]
    pub fn vertex_of(&self, d: Dart) -> Option<usize> {
        self.vertex_of[d]
    }

    /// Darts at `v` in rotation (creation) order.
    #[inline]
    pub fn darts_at(&self, v: usize) -> [Dart; 3] {
        self.incidence[v]
    }

    /// Semiedge darts in their linear order.
    pub fn semiedges(&self) -> &[Dart] {
        &self.semiedges
    }

    /// Position of a semiedge dart in the semiedge order.
    pub fn slot_of(&self, d: Dart) -> Option<usize> {
        if self.vertex_of[d].is_some() {
            return None;
        }
        self.semiedges.iter().position(|&s| s == d)
    }

    pub fn end_of(&self, d: Dart) -> End {
        match self.vertex_of[d] {
            Some(v) => End::Vertex(v),
            None => End::Semi(self.slot_of(d).expect("semiedge dart listed in order")),
        }
    }

    pub fn ends(&self, e: EdgeId) -> (End, End) {
        (self.end_of(2 * e), self.end_of(2 * e + 1))
    }

    pub fn all_ends(&self) -> Vec<(End, End)> {
        (0..self.edge_count()).map(|e| self.ends(e)).collect()
    }

    pub fn edge_kind(&self, e: EdgeId) -> EdgeKind {
        match (self.vertex_of[2 * e], self.vertex_of[2 * e + 1]) {
            (Some(_), Some(_)) => EdgeKind::Link,
            (None, None) => EdgeKind::Isolated,
            _ => EdgeKind::Dangling,
        }
    }

    pub fn links(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_count()).filter(move |&e| self.edge_kind(e) == EdgeKind::Link)
    }

    pub fn isolated_count(&self) -> usize {
        (0..self.edge_count()).filter(|&e| self.edge_kind(e) == EdgeKind::Isolated).count()
    }

    /// Endpoints of a link.
    pub fn link_endpoints(&self, e: EdgeId) -> Option<(usize, usize)> {
        Some((self.vertex_of[2 * e]?, self.vertex_of[2 * e + 1]?))
    }

    /// The vertex at the far end of dart `d`'s edge, if any.
    pub fn across(&self, d: Dart) -> Option<usize> {
        self.vertex_of[d ^ 1]
    }

    /// Neighbours of `v` with multiplicity, in rotation order.
    pub fn neighbors(&self, v: usize) -> [Option<usize>; 3] {
        self.incidence[v].map(|d| self.across(d))
    }

    /// Number of edges joining `u` and `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.incidence[u].iter().filter(|&&d| self.across(d) == Some(v)).count()
    }

    pub fn is_simple(&self) -> bool {
        (0..self.order()).all(|v| {
            let [a, b, c] = self.neighbors(v);
            a != b && b != c && a != c
        })
    }

    /// Returns a copy with the darts at every vertex reordered. Each entry of
    /// `orders` must be a permutation of the current darts at that vertex.
    pub fn with_dart_orders(&self, orders: &[[Dart; 3]]) -> Result<Self, GraphError> {
        if orders.len() != self.order() {
            return Err(GraphError::InvalidRotation(format!(
                "{} vertex orders given for {} vertices",
                orders.len(),
                self.order()
            )));
        }
        for (v, ord) in orders.iter().enumerate() {
            let mut a = *ord;
            let mut b = self.incidence[v];
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(GraphError::InvalidRotation(format!("vertex {v}: {ord:?} is not a permutation of its darts")));
            }
        }
        let mut g = self.clone();
        g.incidence = orders.to_vec();
        Ok(g)
    }

    /// Connected components over vertices, ignoring the edges in `removed`.
    /// Returns a component id per vertex and the number of components.
    pub fn components_without(&self, removed: &[EdgeId]) -> (Vec<usize>, usize) {
        let n = self.order();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for d in self.incidence[v] {
                    if removed.contains(&(d / 2)) {
                        continue;
                    }
                    if let Some(w) = self.across(d) {
                        if comp[w] == usize::MAX {
                            comp[w] = count;
                            queue.push_back(w);
                        }
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[]).1 <= 1
    }

    /// Links whose removal increases the number of components.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let (_, base) = self.components_without(&[]);
        self.links()
            .filter(|&e| self.components_without(&[e]).1 > base)
            .collect()
    }

    pub fn has_bridge(&self) -> bool {
        !self.bridges().is_empty()
    }

    /// Replaces vertex `v` by a triangle. `v` keeps its first edge; the other
    /// two edges move to new vertices `n` and `n + 1`.
    pub fn expand_vertex(&self, v: usize) -> Result<Self, GraphError> {
        let n = self.order();
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
        }
        let [_, d1, d2] = self.incidence[v];
        let mut ends = self.all_ends();
        for (d, nv) in [(d1, n), (d2, n + 1)] {
            let e = d / 2;
            if d % 2 == 0 {
                ends[e].0 = End::Vertex(nv);
            } else {
                ends[e].1 = End::Vertex(nv);
            }
        }
        ends.push((End::Vertex(v), End::Vertex(n)));
        ends.push((End::Vertex(n), End::Vertex(n + 1)));
        ends.push((End::Vertex(n + 1), End::Vertex(v)));
        Multipole::new(n + 2, self.size(), &ends)
    }

    /// Cuts a link into two dangling edges whose semiedges are appended to
    /// the semiedge order (first end's semiedge first).
    pub fn cut_link(&self, e: EdgeId) -> Result<Self, GraphError> {
        let (a, b) = self.ends(e);
        if self.edge_kind(e) != EdgeKind::Link {
            return Err(GraphError::InvalidCut(format!("edge {e} is not a link")));
        }
        let k = self.size();
        let mut ends = self.all_ends();
        ends[e] = (a, End::Semi(k));
        ends.push((b, End::Semi(k + 1)));
        Multipole::new(self.order(), k + 2, &ends)
    }

    /// Removes vertex `v`; its three edges become dangling (or isolated, for
    /// an edge whose other end was already a semiedge), with the new semiedges
    /// appended in rotation order.
    pub fn remove_vertex(&self, v: usize) -> Result<Self, GraphError> {
        let n = self.order();
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: n });
        }
        let k = self.size();
        let relabel = |end: End| match end {
            End::Vertex(w) if w > v => End::Vertex(w - 1),
            other => other,
        };
        let mut ends: Vec<(End, End)> = self.all_ends().into_iter().map(|(a, b)| (relabel(a), relabel(b))).collect();
        for (i, d) in self.incidence[v].into_iter().enumerate() {
            let e = d / 2;
            if d % 2 == 0 {
                ends[e].0 = End::Semi(k + i);
            } else {
                ends[e].1 = End::Semi(k + i);
            }
        }
        Multipole::new(n - 1, k + 3, &ends)
    }

    /// Returns a copy whose semiedge order is permuted: new slot `i` is the
    /// old slot `perm[i]`.
    pub fn permute_semiedges(&self, perm: &[usize]) -> Result<Self, GraphError> {
        let k = self.size();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
            return Err(GraphError::ParameterOutOfRange(format!("{perm:?} is not a permutation of 0..{k}")));
        }
        let mut g = self.clone();
        g.semiedges = perm.iter().map(|&p| self.semiedges[p]).collect();
        Ok(g)
    }
}

/// Result of gluing two k-poles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub graph: Multipole,
    /// Vertex-less closed loops that were deleted.
    pub loops_removed: usize,
}

/// Joins the i-th semiedge of `g1` with the i-th semiedge of `g2` for all i.
/// Vertices of `g1` keep their indices; vertices of `g2` are shifted by
/// `n(g1)`. Chains that close up without meeting a vertex are deleted.
pub fn glue(g1: &Multipole, g2: &Multipole) -> Result<Multipole, GraphError> {
    glue_with_report(g1, g2).map(|r| r.graph)
}

pub fn glue_with_report(g1: &Multipole, g2: &Multipole) -> Result<Gluing, GraphError> {
    if g1.size() != g2.size() {
        return Err(GraphError::SizeMismatch { left: g1.size(), right: g2.size() });
    }
    let n1 = g1.order();
    let offset = g1.dart_count();
    let total = offset + g2.dart_count();
    let vertex = |d: Dart| -> Option<usize> {
        if d < offset {
            g1.vertex_of(d)
        } else {
            g2.vertex_of(d - offset).map(|v| v + n1)
        }
    };
    let mut jump = vec![usize::MAX; total];
    for (&a, &b) in g1.semiedges().iter().zip(g2.semiedges()) {
        jump[a] = b + offset;
        jump[b + offset] = a;
    }
    let mut used = vec![false; total];
    let mut edges = Vec::new();
    for d in 0..total {
        if used[d] || vertex(d).is_none() {
            continue;
        }
        used[d] = true;
        let mut y = d ^ 1;
        while vertex(y).is_none() {
            used[y] = true;
            let z = jump[y];
            used[z] = true;
            y = z ^ 1;
        }
        used[y] = true;
        edges.push((vertex(d).unwrap(), vertex(y).unwrap()));
    }
    // Whatever is left are closed chains of vertex-less edges.
    let mut loops_removed = 0;
    for d in 0..total {
        if used[d] {
            continue;
        }
        loops_removed += 1;
        let mut y = d;
        while !used[y] {
            used[y] = true;
            used[y ^ 1] = true;
            y = jump[y ^ 1];
        }
    }
    let graph = Multipole::from_edges(n1 + g2.order(), &edges)?;
    Ok(Gluing { graph, loops_removed })
}

impl fmt::Display for Multipole {
    /// Multipole text form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&io::write_multipole(self))
    }
}
