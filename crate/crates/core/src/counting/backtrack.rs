//! Independent oracle: list every circuit, then choose multisets of circuits
//! covering each edge exactly twice.

use num_bigint::BigUint;

use super::{CountError, CountLimits};
use crate::graph::{EdgeId, Multipole};

/// Edge sets as bit masks; graphs up to 128 edges.
type EdgeSet = u128;

/// All circuits of a graph as edge sets. A circuit is listed once, found as
/// the path from the far end of its smallest edge back to the near end.
pub fn circuits(g: &Multipole, max: usize) -> Result<Vec<EdgeSet>, CountError> {
    let m = g.edge_count();
    if m > 128 {
        return Err(CountError::ResourceLimit(format!("{m} edges exceed the backtracking limit of 128")));
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.order()];
    for e0 in 0..m {
        let Some((u, w)) = g.link_endpoints(e0) else { continue };
        on_path[w] = true;
        extend(g, e0, u, w, 1u128 << e0, &mut on_path, &mut out, max)?;
        on_path[w] = false;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Multipole,
    e0: EdgeId,
    target: usize,
    at: usize,
    edges: EdgeSet,
    on_path: &mut [bool],
    out: &mut Vec<EdgeSet>,
    max: usize,
) -> Result<(), CountError> {
    for d in g.darts_at(at) {
        let e = d / 2;
        if e <= e0 {
            continue;
        }
        let Some(next) = g.across(d) else { continue };
        if next == target {
            if out.len() >= max {
                return Err(CountError::ResourceLimit(format!("more than {max} circuits")));
            }
            out.push(edges | 1u128 << e);
        } else if !on_path[next] {
            on_path[next] = true;
            extend(g, e0, target, next, edges | 1u128 << e, on_path, out, max)?;
            on_path[next] = false;
        }
    }
    Ok(())
}

struct Search<'a> {
    by_edge: Vec<Vec<usize>>,
    circuits: &'a [EdgeSet],
    cover: Vec<u8>,
    m: usize,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn fits(&self, c: EdgeSet, extra: EdgeSet) -> bool {
        let mut bits = c;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            let need = 1 + u8::from(extra >> e & 1 == 1);
            if self.cover[e] + need > 2 {
                return false;
            }
            bits &= bits - 1;
        }
        true
    }

    fn apply(&mut self, c: EdgeSet, delta: i8) {
        let mut bits = c;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            self.cover[e] = (self.cover[e] as i8 + delta) as u8;
            bits &= bits - 1;
        }
    }

    fn run(&mut self, from: usize) -> Result<u64, CountError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(CountError::ResourceLimit(format!("backtracking exceeded {} nodes", self.max_nodes)));
        }
        let Some(e) = (from..self.m).find(|&e| self.cover[e] < 2) else {
            return Ok(1);
        };
        let cands = self.by_edge[e].clone();
        let mut total = 0;
        if self.cover[e] == 1 {
            for &i in &cands {
                let c = self.circuits[i];
                if self.fits(c, 0) {
                    self.apply(c, 1);
                    total += self.run(e)?;
                    self.apply(c, -1);
                }
            }
        } else {
            for (a, &i) in cands.iter().enumerate() {
                let ci = self.circuits[i];
                if !self.fits(ci, 0) {
                    continue;
                }
                for &j in &cands[a + 1..] {
                    let cj = self.circuits[j];
                    if self.fits(cj, ci) {
                        self.apply(ci, 1);
                        self.apply(cj, 1);
                        total += self.run(e)?;
                        self.apply(cj, -1);
                        self.apply(ci, -1);
                    }
                }
            }
        }
        Ok(total)
    }
}

pub(crate) fn count_backtrack(g: &Multipole, limits: &CountLimits) -> Result<BigUint, CountError> {
    if !g.is_graph() {
        return Err(CountError::Graph(crate::graph::GraphError::NotAGraph(g.size())));
    }
    let list = circuits(g, limits.max_circuits)?;
    let m = g.edge_count();
    let mut by_edge = vec![Vec::new(); m];
    for (i, &c) in list.iter().enumerate() {
        for (e, slot) in by_edge.iter_mut().enumerate() {
            if c >> e & 1 == 1 {
                slot.push(i);
            }
        }
    }
    let mut search = Search {
        by_edge,
        circuits: &list,
        cover: vec![0; m],
        m,
        nodes: 0,
        max_nodes: limits.max_search_nodes,
    };
    Ok(BigUint::from(search.run(0)?))
}
