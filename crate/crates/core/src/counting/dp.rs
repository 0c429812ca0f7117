//! Frontier dynamic program over boundary states.
//!
//! Vertices are absorbed one at a time. The processed part is a multipole
//! whose semiedges are the frontier edges (one endpoint processed), ordered
//! by edge id, and the number of its covers with a given boundary is all that
//! matters for the rest of the sweep.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::{CountError, CountLimits};
use crate::boundary::{canonical_form, Boundary};
use crate::graph::{EdgeId, GraphError, Multipole};

/// Greedy elimination order: repeatedly take the unprocessed vertex that
/// leaves the smallest frontier, breaking ties by vertex id.
pub fn elimination_order(g: &Multipole) -> Vec<usize> {
    let n = g.order();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut frontier = 0isize;
    for _ in 0..n {
        let (v, delta) = (0..n)
            .filter(|&v| !done[v])
            .map(|v| {
                let delta: isize = g
                    .neighbors(v)
                    .iter()
                    .map(|w| match w {
                        Some(w) if done[*w] => -1,
                        _ => 1,
                    })
                    .sum();
                (v, delta)
            })
            .min_by_key(|&(v, d)| (frontier + d, v))
            .expect("unprocessed vertex left");
        done[v] = true;
        frontier += delta;
        order.push(v);
    }
    order
}

#[derive(Clone, Copy)]
enum Source {
    Old(usize),
    New(usize),
}

pub(crate) fn count_dp(g: &Multipole, limits: &CountLimits) -> Result<BigUint, CountError> {
    if !g.is_graph() {
        return Err(GraphError::NotAGraph(g.size()).into());
    }
    let mut done = vec![false; g.order()];
    let mut frontier: Vec<EdgeId> = Vec::new();
    let mut states: HashMap<Boundary, BigUint> = HashMap::new();
    states.insert(Boundary::empty(), BigUint::from(1u32));
    for v in elimination_order(g) {
        let darts = g.darts_at(v);
        // consumed[j]: frontier position of dart j's edge if its far end is done
        let consumed: [Option<usize>; 3] = darts.map(|d| {
            let w = g.across(d).expect("graphs have only links");
            done[w].then(|| frontier.binary_search(&(d / 2)).expect("edge on frontier"))
        });
        let mut next_frontier: Vec<(EdgeId, Source)> = frontier
            .iter()
            .enumerate()
            .filter(|(s, _)| !consumed.contains(&Some(*s)))
            .map(|(s, &e)| (e, Source::Old(s)))
            .collect();
        for (j, &d) in darts.iter().enumerate() {
            if consumed[j].is_none() {
                next_frontier.push((d / 2, Source::New(j)));
            }
        }
        next_frontier.sort_by_key(|&(e, _)| e);
        let sources: Vec<Source> = next_frontier.iter().map(|&(_, s)| s).collect();
        let joins: Vec<(usize, usize)> = consumed
            .iter()
            .enumerate()
            .filter_map(|(j, s)| s.map(|s| (j, s)))
            .collect();
        let mut next_states: HashMap<Boundary, BigUint> = HashMap::new();
        let mut scratch = Scratch::default();
        for (b, cnt) in &states {
            for mask in 0u32..1 << joins.len() {
                if let Some(nb) = transition(b, &joins, mask, &sources, &mut scratch) {
                    *next_states.entry(nb).or_default() += cnt;
                }
            }
            if next_states.len() > limits.max_states {
                return Err(CountError::ResourceLimit(format!(
                    "DP state table exceeded {} entries",
                    limits.max_states
                )));
            }
        }
        states = next_states;
        done[v] = true;
        frontier = next_frontier.into_iter().map(|(e, _)| e).collect();
    }
    Ok(states.remove(&Boundary::empty()).unwrap_or_default())
}

#[derive(Default)]
struct Scratch {
    parent: Vec<usize>,
    relations: Vec<(usize, usize)>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Absorbs one vertex into a state. Nodes `0..k` are the old paths, nodes
/// `k..k+3` the vertex's corners; corner `j` joins darts `j` and `j + 1`.
fn transition(
    b: &Boundary,
    joins: &[(usize, usize)],
    mask: u32,
    sources: &[Source],
    sc: &mut Scratch,
) -> Option<Boundary> {
    let k = b.size();
    let nodes = k + 3;
    let corner_a = |j: usize| k + j;
    let corner_b = |j: usize| k + (j + 2) % 3;
    sc.parent.clear();
    sc.parent.extend(0..nodes);
    sc.relations.clear();
    for p in b.pairs().iter().chain(b.extra()) {
        sc.relations.push((p[0] as usize - 1, p[1] as usize - 1));
    }
    sc.relations.extend([(k, k + 1), (k + 1, k + 2), (k, k + 2)]);
    for (i, &(j, s)) in joins.iter().enumerate() {
        let [p, q] = b.pairs()[s].map(|x| x as usize - 1);
        let (x, y) = if mask >> i & 1 == 0 { (corner_a(j), corner_b(j)) } else { (corner_b(j), corner_a(j)) };
        let (rp, rx) = (find(&mut sc.parent, p), find(&mut sc.parent, x));
        sc.parent[rp] = rx;
        let (rq, ry) = (find(&mut sc.parent, q), find(&mut sc.parent, y));
        if rq != ry {
            sc.parent[rq] = ry;
        }
        sc.relations.push((p, y));
        sc.relations.push((q, x));
    }
    for i in 0..sc.relations.len() {
        let (a, c) = sc.relations[i];
        if find(&mut sc.parent, a) == find(&mut sc.parent, c) {
            return None;
        }
    }
    // label open components by first appearance along the new frontier
    let mut label = vec![u8::MAX; nodes];
    let mut next = 0u8;
    let mut raw = Vec::with_capacity(sources.len());
    for src in sources {
        let ends = match *src {
            Source::Old(s) => b.pairs()[s].map(|x| x as usize - 1),
            Source::New(j) => [corner_a(j), corner_b(j)],
        };
        let mut pair = [0u8; 2];
        for (t, &node) in ends.iter().enumerate() {
            let r = find(&mut sc.parent, node);
            if label[r] == u8::MAX {
                label[r] = next;
                next += 1;
            }
            pair[t] = label[r];
        }
        raw.push(pair);
    }
    let mut extra: Vec<[u8; 2]> = Vec::new();
    for i in 0..sc.relations.len() {
        let (a, c) = sc.relations[i];
        let (la, lc) = (label[find(&mut sc.parent, a)], label[find(&mut sc.parent, c)]);
        if la == u8::MAX || lc == u8::MAX {
            continue;
        }
        let pair = [la.min(lc), la.max(lc)];
        let meets = raw.iter().any(|p| (p[0] == pair[0] && p[1] == pair[1]) || (p[0] == pair[1] && p[1] == pair[0]));
        if !meets {
            extra.push(pair);
        }
    }
    extra.sort_unstable();
    extra.dedup();
    Some(canonical_form(&raw, &extra))
}
