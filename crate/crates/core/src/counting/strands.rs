//! Corner/strand model behind the crossing-assignment bijection.
//!
//! At a vertex with darts `[d0, d1, d2]` a circuit double cover uses each of
//! the three transitions `d0d1`, `d1d2`, `d2d0` exactly once; we call them the
//! corners `3v`, `3v + 1`, `3v + 2`. Corner `3v + j` has port 0 on `d_j` and
//! port 1 on `d_{j+1}`. Half-corner `2c + p` names port `p` of corner `c`.
//!
//! Along a link the two half-corners at one end are joined to the two at the
//! other end, either straight (choice 0: A–A, B–B) or crossed (choice 1:
//! A–B, B–A), where A is the corner starting at the dart and B the corner
//! ending at it. Fixing a choice per link fixes every strand.

use crate::graph::{Dart, EdgeId, EdgeKind, Multipole};

/// Sentinel base for half-corner partners that leave through a semiedge:
/// `TERMINAL + 2 * slot + side`.
pub(crate) const TERMINAL: usize = usize::MAX / 2;

#[derive(Clone, Debug)]
pub(crate) struct StrandModel {
    /// Position of each link in the choice vector; `usize::MAX` otherwise.
    pub link_index: Vec<usize>,
    pub links: Vec<EdgeId>,
    /// For every half-corner, the half-corner (or terminal) it is joined to
    /// under choice 0 and choice 1.
    pub partner: Vec<[usize; 2]>,
    /// Link index governing each half-corner's join (`usize::MAX` for
    /// dangling darts, whose join does not depend on a choice).
    pub governing: Vec<usize>,
    /// Dart of each half-corner.
    pub dart: Vec<Dart>,
    pub corners: usize,
}

impl StrandModel {
    pub fn new(g: &Multipole) -> Self {
        let links: Vec<EdgeId> = g.links().collect();
        let mut link_index = vec![usize::MAX; g.edge_count()];
        for (i, &e) in links.iter().enumerate() {
            link_index[e] = i;
        }
        let corners = 3 * g.order();
        // half-corners A and B at each vertex dart
        let mut at_dart = vec![[usize::MAX; 2]; g.dart_count()];
        let mut dart = vec![0; 2 * corners];
        for v in 0..g.order() {
            let ds = g.darts_at(v);
            for j in 0..3 {
                let a = 2 * (3 * v + j);
                let b = 2 * (3 * v + (j + 2) % 3) + 1;
                at_dart[ds[j]] = [a, b];
                dart[a] = ds[j];
                dart[b] = ds[j];
            }
        }
        let mut partner = vec![[usize::MAX; 2]; 2 * corners];
        let mut governing = vec![usize::MAX; 2 * corners];
        for v in 0..g.order() {
            for d in g.darts_at(v) {
                let [a, b] = at_dart[d];
                let e = d / 2;
                match g.vertex_of(d ^ 1) {
                    Some(_) => {
                        let [a2, b2] = at_dart[d ^ 1];
                        partner[a] = [a2, b2];
                        partner[b] = [b2, a2];
                        governing[a] = link_index[e];
                        governing[b] = link_index[e];
                    }
                    None => {
                        let slot = g.slot_of(d ^ 1).expect("semiedge has a slot");
                        partner[a] = [TERMINAL + 2 * slot; 2];
                        partner[b] = [TERMINAL + 2 * slot + 1; 2];
                    }
                }
            }
        }
        StrandModel { link_index, links, partner, governing, dart, corners }
    }

    #[inline]
    pub fn next(&self, h: usize, choices: &[bool]) -> usize {
        let g = self.governing[h];
        let c = if g == usize::MAX { 0 } else { usize::from(choices[g]) };
        self.partner[h][c]
    }
}

/// A binary choice per link: `true` joins the walks crossed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossingAssignment {
    choice: Vec<Option<bool>>,
}

impl CrossingAssignment {
    /// Builds an assignment from one flag per link, links in edge-id order.
    pub fn from_link_flags(g: &Multipole, flags: &[bool]) -> Option<Self> {
        let links: Vec<EdgeId> = g.links().collect();
        if links.len() != flags.len() {
            return None;
        }
        let mut choice = vec![None; g.edge_count()];
        for (&e, &f) in links.iter().zip(flags) {
            choice[e] = Some(f);
        }
        Some(CrossingAssignment { choice })
    }

    pub fn get(&self, e: EdgeId) -> Option<bool> {
        self.choice.get(e).copied().flatten()
    }

    pub fn link_flags(&self) -> Vec<bool> {
        self.choice.iter().flatten().copied().collect()
    }
}

/// A walk of a cover, as the darts through which it leaves each vertex (or
/// semiedge) in order. Edge `i` of the walk is `darts[i] / 2`; the walk
/// enters edge `i` at `darts[i]` and reaches `darts[i] ^ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    pub darts: Vec<Dart>,
    pub closed: bool,
}

impl Walk {
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.darts.iter().map(|d| d / 2)
    }

    /// Vertices passed through, in order (each inner vertex once).
    pub fn vertices(&self, g: &Multipole) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.darts.len());
        for (i, &d) in self.darts.iter().enumerate() {
            if i + 1 < self.darts.len() || self.closed {
                if let Some(v) = g.vertex_of(d ^ 1) {
                    out.push(v);
                }
            }
        }
        out
    }
}

/// A collection of circuits and semiedge-to-semiedge paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitCover {
    pub walks: Vec<Walk>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("walk {walk} is not contiguous at position {pos}")]
    Broken { walk: usize, pos: usize },
    #[error("walk {walk} repeats edge {edge}")]
    RepeatedEdge { walk: usize, edge: EdgeId },
    #[error("walk {walk} repeats vertex {vertex}")]
    RepeatedVertex { walk: usize, vertex: usize },
    #[error("edge {edge} is covered {times} times")]
    Coverage { edge: EdgeId, times: usize },
    #[error("open walk {walk} does not end at semiedges")]
    OpenEnd { walk: usize },
}

impl CircuitCover {
    /// Checks the cover against `g` with an edge-based validator: every walk
    /// is contiguous and repeats no edge and no vertex, open walks run between
    /// semiedges, and every edge is covered exactly twice.
    pub fn validate(&self, g: &Multipole) -> Result<(), CoverError> {
        let mut coverage = vec![0usize; g.edge_count()];
        for (w, walk) in self.walks.iter().enumerate() {
            let len = walk.darts.len();
            for i in 0..len {
                let d = walk.darts[i];
                let arrive = d ^ 1;
                let next = if i + 1 < len {
                    Some(walk.darts[i + 1])
                } else if walk.closed {
                    Some(walk.darts[0])
                } else {
                    None
                };
                match next {
                    Some(nd) => {
                        let v = g.vertex_of(arrive);
                        if v.is_none() || v != g.vertex_of(nd) || nd == arrive {
                            return Err(CoverError::Broken { walk: w, pos: i });
                        }
                    }
                    None => {
                        if g.vertex_of(arrive).is_some() {
                            return Err(CoverError::OpenEnd { walk: w });
                        }
                    }
                }
            }
            if !walk.closed && walk.darts.first().is_some_and(|&d| g.vertex_of(d).is_some()) {
                return Err(CoverError::OpenEnd { walk: w });
            }
            let mut seen_e = std::collections::HashSet::new();
            for e in walk.edges() {
                if !seen_e.insert(e) {
                    return Err(CoverError::RepeatedEdge { walk: w, edge: e });
                }
                coverage[e] += 1;
            }
            let mut seen_v = std::collections::HashSet::new();
            for v in walk.vertices(g) {
                if !seen_v.insert(v) {
                    return Err(CoverError::RepeatedVertex { walk: w, vertex: v });
                }
            }
        }
        if let Some((edge, &times)) = coverage.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(CoverError::Coverage { edge, times });
        }
        Ok(())
    }
}

/// Traces every strand of `g` under `choices` (one flag per link, in
/// edge-id order) into walks, without any validity check.
pub fn trace_walks(g: &Multipole, assignment: &CrossingAssignment) -> CircuitCover {
    let model = StrandModel::new(g);
    let flags = assignment.link_flags();
    trace_with_model(g, &model, &flags)
}

pub(crate) fn trace_with_model(g: &Multipole, model: &StrandModel, choices: &[bool]) -> CircuitCover {
    let mut seen = vec![false; 2 * model.corners];
    let mut walks = Vec::new();
    // open strands first, started from each semiedge end in slot order
    for (slot, &sd) in g.semiedges().iter().enumerate() {
        let (inner, kind) = (sd ^ 1, g.edge_kind(sd / 2));
        for side in 0..2 {
            if kind == EdgeKind::Isolated {
                // both strands of an isolated edge run from the lower slot
                let other = g.slot_of(inner).expect("isolated edge has two slots");
                if slot < other {
                    walks.push(Walk { darts: vec![sd], closed: false });
                }
                continue;
            }
            let v = g.vertex_of(inner).expect("dangling edge");
            let j = g.darts_at(v).iter().position(|&d| d == inner).unwrap();
            let h = if side == 0 { 2 * (3 * v + j) } else { 2 * (3 * v + (j + 2) % 3) + 1 };
            if seen[h] {
                continue;
            }
            let mut darts = vec![sd];
            let mut cur = h;
            loop {
                seen[cur] = true;
                let out = cur ^ 1;
                seen[out] = true;
                darts.push(model.dart[out]);
                let nxt = model.next(out, choices);
                if nxt >= TERMINAL {
                    break;
                }
                cur = nxt;
            }
            walks.push(Walk { darts, closed: false });
        }
    }
    for start in (0..2 * model.corners).step_by(2) {
        if seen[start] {
            continue;
        }
        let mut darts = Vec::new();
        let mut cur = start;
        loop {
            seen[cur] = true;
            let out = cur ^ 1;
            seen[out] = true;
            darts.push(model.dart[out]);
            cur = model.next(out, choices);
            if cur == start {
                break;
            }
        }
        walks.push(Walk { darts, closed: true });
    }
    CircuitCover { walks }
}

/// Scratch space for repeated validity checks.
pub(crate) struct Tracer {
    stamp: Vec<u32>,
    seen: Vec<u32>,
    epoch: u32,
    strand: u32,
}

impl Tracer {
    pub fn new(model: &StrandModel, order: usize) -> Self {
        Tracer { stamp: vec![0; order], seen: vec![0; model.corners], epoch: 0, strand: 0 }
    }

    /// Whether every strand repeats no vertex. Open strands are traced from
    /// their terminal ends first.
    pub fn is_valid(&mut self, g: &Multipole, model: &StrandModel, choices: &[bool]) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        if self.strand > u32::MAX - 4 * model.corners as u32 - 16 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.strand = 0;
        }
        for &sd in g.semiedges() {
            let inner = sd ^ 1;
            let Some(v) = g.vertex_of(inner) else { continue };
            let j = g.darts_at(v).iter().position(|&d| d == inner).unwrap();
            for h in [2 * (3 * v + j), 2 * (3 * v + (j + 2) % 3) + 1] {
                if self.seen[h / 2] == epoch {
                    continue;
                }
                self.strand += 1;
                let mut cur = h;
                loop {
                    let c = cur / 2;
                    let w = c / 3;
                    if self.stamp[w] == self.strand {
                        return false;
                    }
                    self.stamp[w] = self.strand;
                    self.seen[c] = epoch;
                    let nxt = model.next(cur ^ 1, choices);
                    if nxt >= TERMINAL {
                        break;
                    }
                    cur = nxt;
                }
            }
        }
        for c in 0..model.corners {
            if self.seen[c] == epoch {
                continue;
            }
            self.strand += 1;
            let start = 2 * c;
            let mut cur = start;
            loop {
                let cc = cur / 2;
                let w = cc / 3;
                if self.stamp[w] == self.strand {
                    return false;
                }
                self.stamp[w] = self.strand;
                self.seen[cc] = epoch;
                cur = model.next(cur ^ 1, choices);
                if cur == start {
                    break;
                }
            }
        }
        true
    }
}
