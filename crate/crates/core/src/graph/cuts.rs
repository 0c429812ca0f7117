use std::collections::BTreeSet;

use super::{End, EdgeId, GraphError, Multipole};

/// A small edge cut together with one of its shores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCut {
    /// Cut edges in increasing order.
    pub edges: Vec<EdgeId>,
    /// Vertices of one shore in increasing order.
    pub side: Vec<usize>,
}

impl EdgeCut {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Vertices of the opposite shore.
    pub fn complement(&self, order: usize) -> Vec<usize> {
        (0..order).filter(|v| self.side.binary_search(v).is_err()).collect()
    }
}

/// Which shore of a cut to contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shore {
    Side,
    Complement,
}

/// Finds a bridge, else a 2-edge-cut, else a non-trivial 3-edge-cut. Within
/// each size the lexicographically first edge tuple wins. The reported side
/// is the smaller shore (on ties, the one holding the smaller vertex).
pub fn find_small_cuts(g: &Multipole) -> Result<Option<EdgeCut>, GraphError> {
    if !g.is_graph() {
        return Err(GraphError::NotAGraph(g.size()));
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let links: Vec<EdgeId> = g.links().collect();
    let shore_of = |removed: &[EdgeId]| -> Option<Vec<usize>> {
        let (comp, count) = g.components_without(removed);
        if count < 2 {
            return None;
        }
        let a: Vec<usize> = (0..g.order()).filter(|&v| comp[v] == comp[0]).collect();
        let b: Vec<usize> = (0..g.order()).filter(|&v| comp[v] != comp[0]).collect();
        Some(if b.len() < a.len() { b } else { a })
    };
    for &e in &links {
        if let Some(side) = shore_of(&[e]) {
            return Ok(Some(EdgeCut { edges: vec![e], side }));
        }
    }
    for (i, &e1) in links.iter().enumerate() {
        for &e2 in &links[i + 1..] {
            if let Some(side) = shore_of(&[e1, e2]) {
                return Ok(Some(EdgeCut { edges: vec![e1, e2], side }));
            }
        }
    }
    for (i, &e1) in links.iter().enumerate() {
        for (j, &e2) in links.iter().enumerate().skip(i + 1) {
            for &e3 in &links[j + 1..] {
                if let Some(side) = shore_of(&[e1, e2, e3]) {
                    if side.len() >= 2 && g.order() - side.len() >= 2 {
                        return Ok(Some(EdgeCut { edges: vec![e1, e2, e3], side }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Contracts one shore of a 2- or 3-edge cut. A 2-cut shore disappears and
/// its two cut edges fuse into one edge, kept at the position of the first cut
/// edge. A 3-cut shore becomes a single vertex placed at the smallest index of
/// the shore, with the cut edges attached in their original order.
pub fn contract_cut_side(g: &Multipole, cut: &EdgeCut, shore: Shore) -> Result<Multipole, GraphError> {
    if !g.is_graph() {
        return Err(GraphError::NotAGraph(g.size()));
    }
    let k = cut.edges.len();
    if k != 2 && k != 3 {
        return Err(GraphError::InvalidCut(format!("cut of size {k}, expected 2 or 3")));
    }
    let n = g.order();
    if cut.side.iter().any(|&v| v >= n) {
        return Err(GraphError::InvalidCut("shore vertex out of range".into()));
    }
    let side: BTreeSet<usize> = cut.side.iter().copied().collect();
    let shore: BTreeSet<usize> = match shore {
        Shore::Side => side,
        Shore::Complement => (0..n).filter(|v| !side.contains(v)).collect(),
    };
    if shore.is_empty() || shore.len() == n {
        return Err(GraphError::InvalidCut("empty shore".into()));
    }
    let crossing: BTreeSet<EdgeId> = g
        .links()
        .filter(|&e| {
            let (u, v) = g.link_endpoints(e).unwrap();
            shore.contains(&u) != shore.contains(&v)
        })
        .collect();
    let listed: BTreeSet<EdgeId> = cut.edges.iter().copied().collect();
    if listed.len() != k || crossing != listed {
        return Err(GraphError::InvalidCut(format!(
            "edges {:?} are not the edges leaving the shore {:?}",
            cut.edges, shore
        )));
    }
    let keep_rep = if k == 3 { shore.first().copied() } else { None };
    let mut new_index = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if !shore.contains(&v) || Some(v) == keep_rep {
            new_index[v] = Some(next);
            next += 1;
        }
    }
    let map_end = |v: usize| -> usize {
        if shore.contains(&v) {
            new_index[keep_rep.expect("3-cut representative")].unwrap()
        } else {
            new_index[v].unwrap()
        }
    };
    let outside = |e: EdgeId| -> usize {
        let (u, v) = g.link_endpoints(e).unwrap();
        if shore.contains(&u) {
            v
        } else {
            u
        }
    };
    let mut ordered: Vec<EdgeId> = cut.edges.clone();
    ordered.sort_unstable();
    let mut edges = Vec::new();
    for e in 0..g.edge_count() {
        let (u, v) = g.link_endpoints(e).expect("graphs have only links");
        let inside = shore.contains(&u) && shore.contains(&v);
        if inside {
            continue;
        }
        if k == 2 && listed.contains(&e) {
            if e == ordered[0] {
                let x = new_index[outside(ordered[0])].unwrap();
                let y = new_index[outside(ordered[1])].unwrap();
                if x == y {
                    return Err(GraphError::Loop { edge: e, vertex: x });
                }
                edges.push((End::Vertex(x), End::Vertex(y)));
            }
            continue;
        }
        edges.push((End::Vertex(map_end(u)), End::Vertex(map_end(v))));
    }
    Multipole::new(next, 0, &edges)
}
