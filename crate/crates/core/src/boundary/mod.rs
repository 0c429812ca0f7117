//! Boundaries of circuit double covers on ordered multipoles.
//!
//! A boundary records, per semiedge, the labels of the two paths ending
//! there, and after `|` every pair of paths that share an edge without
//! meeting at a common semiedge. Labels are `1..=k`. The canonical form is
//! the lexicographically smallest encoding over all relabelings, with each
//! pair sorted and the extra pairs sorted.

mod join;
mod multiplicity;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use join::{join_count, JoinMatrix};
pub use multiplicity::{
    boundary_of, multiplicity_vector, verify_bilinear, BilinearCheck, MultiplicityVector,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("label {label} appears {count} times, expected 2")]
    LabelMultiplicity { label: u32, count: usize },
    #[error("pair ({0},{0}) repeats a label")]
    RepeatedLabel(u32),
    #[error("extra pair ({0},{1}) already meets at a semiedge")]
    RedundantExtra(u32, u32),
    #[error("extra pair mentions unknown label {0}")]
    UnknownLabel(u32),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("boundary size {0} outside the supported range 0..=5")]
    UnsupportedSize(usize),
    #[error("gluing creates {0} vertex-less loop(s); the bilinear form does not apply")]
    LoopGluing(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Count(#[from] crate::counting::CountError),
    #[error("invalid cover: {0}")]
    Cover(#[from] crate::counting::CoverError),
}

/// A canonical boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boundary {
    pairs: Vec<[u8; 2]>,
    extra: Vec<[u8; 2]>,
}

impl Boundary {
    /// The boundary of every 0-pole.
    pub fn empty() -> Self {
        Boundary { pairs: Vec::new(), extra: Vec::new() }
    }

    /// Validates a raw record with arbitrary positive labels and returns its
    /// canonical form.
    pub fn canonicalize(pairs: &[(u32, u32)], extra: &[(u32, u32)]) -> Result<Self, BoundaryError> {
        let mut labels: Vec<u32> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        labels.sort_unstable();
        labels.dedup();
        let dense = |x: u32| labels.binary_search(&x).map(|i| i as u8);
        let mut count = vec![0usize; labels.len()];
        let mut raw = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b {
                return Err(BoundaryError::RepeatedLabel(a));
            }
            let (x, y) = (dense(a).unwrap(), dense(b).unwrap());
            count[x as usize] += 1;
            count[y as usize] += 1;
            raw.push([x, y]);
        }
        if let Some(i) = count.iter().position(|&c| c != 2) {
            return Err(BoundaryError::LabelMultiplicity { label: labels[i], count: count[i] });
        }
        let mut raw_extra = Vec::with_capacity(extra.len());
        for &(a, b) in extra {
            if a == b {
                return Err(BoundaryError::RepeatedLabel(a));
            }
            let x = dense(a).map_err(|_| BoundaryError::UnknownLabel(a))?;
            let y = dense(b).map_err(|_| BoundaryError::UnknownLabel(b))?;
            if raw.iter().any(|p| (p[0] == x && p[1] == y) || (p[0] == y && p[1] == x)) {
                return Err(BoundaryError::RedundantExtra(a, b));
            }
            raw_extra.push([x, y]);
        }
        Ok(canonical_form(&raw, &raw_extra))
    }

    /// Number of semiedges.
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[[u8; 2]] {
        &self.pairs
    }

    pub fn extra(&self) -> &[[u8; 2]] {
        &self.extra
    }

    /// Whether paths `a` and `b` (1-based) share an edge.
    pub fn related(&self, a: u8, b: u8) -> bool {
        let hit = |p: &[u8; 2]| (p[0] == a && p[1] == b) || (p[0] == b && p[1] == a);
        self.pairs.iter().any(hit) || self.extra.iter().any(hit)
    }
}

/// Canonical form of a record whose labels are `0..k` (each used twice, no
/// repeated label in a pair, extras not co-occurring).
///
/// Any labeling that minimises the pair sequence hands out fresh labels in
/// order of first appearance. The only freedom is at a pair whose two labels
/// are both fresh, so the search keeps, slot by slot, the partial labelings
/// with the smallest prefix and branches at such pairs; the extras break the
/// remaining ties.
pub(crate) fn canonical_form(raw: &[[u8; 2]], raw_extra: &[[u8; 2]]) -> Boundary {
    let k = raw.len();
    #[derive(Clone)]
    struct Partial {
        map: Vec<u8>,
        next: u8,
    }
    const UNSET: u8 = u8::MAX;
    let mut live = vec![Partial { map: vec![UNSET; k], next: 1 }];
    let mut pairs = Vec::with_capacity(k);
    for &[a, b] in raw {
        let mut best: Option<[u8; 2]> = None;
        let mut next_live: Vec<Partial> = Vec::new();
        for p in &live {
            let mut options = Vec::with_capacity(2);
            match (p.map[a as usize], p.map[b as usize]) {
                (UNSET, UNSET) => {
                    let mut q = p.clone();
                    q.map[a as usize] = q.next;
                    q.map[b as usize] = q.next + 1;
                    q.next += 2;
                    let mut r = p.clone();
                    r.map[b as usize] = r.next;
                    r.map[a as usize] = r.next + 1;
                    r.next += 2;
                    options.push(q);
                    options.push(r);
                }
                (UNSET, _) => {
                    let mut q = p.clone();
                    q.map[a as usize] = q.next;
                    q.next += 1;
                    options.push(q);
                }
                (_, UNSET) => {
                    let mut q = p.clone();
                    q.map[b as usize] = q.next;
                    q.next += 1;
                    options.push(q);
                }
                _ => options.push(p.clone()),
            }
            for q in options {
                let (x, y) = (q.map[a as usize], q.map[b as usize]);
                let enc = [x.min(y), x.max(y)];
                match best {
                    Some(bst) if enc > bst => {}
                    Some(bst) if enc == bst => next_live.push(q),
                    _ => {
                        best = Some(enc);
                        next_live.clear();
                        next_live.push(q);
                    }
                }
            }
        }
        pairs.push(best.expect("at least one live labeling"));
        live = next_live;
    }
    let extra = live
        .iter()
        .map(|p| {
            let mut ex: Vec<[u8; 2]> = raw_extra
                .iter()
                .map(|&[a, b]| {
                    let (x, y) = (p.map[a as usize], p.map[b as usize]);
                    [x.min(y), x.max(y)]
                })
                .collect();
            ex.sort_unstable();
            ex.dedup();
            ex
        })
        .min()
        .unwrap_or_default();
    Boundary { pairs, extra }
}

/// All canonical boundaries of size `k` (0..=5) in increasing order.
pub fn enumerate_boundaries(k: usize) -> Result<Vec<Boundary>, BoundaryError> {
    if k > 5 {
        return Err(BoundaryError::UnsupportedSize(k));
    }
    let mut out = BTreeSet::new();
    let mut pairs = Vec::with_capacity(k);
    let mut used = vec![0u8; k];
    sequences(k, 0, &mut pairs, &mut used, &mut |seq| {
        let free: Vec<[u8; 2]> = (0..k as u8)
            .flat_map(|a| (a + 1..k as u8).map(move |b| [a, b]))
            .filter(|&[a, b]| !seq.iter().any(|p| (p[0] == a && p[1] == b) || (p[0] == b && p[1] == a)))
            .collect();
        for mask in 0u32..1 << free.len() {
            let extra: Vec<[u8; 2]> = (0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i]).collect();
            out.insert(canonical_form(seq, &extra));
        }
    });
    Ok(out.into_iter().collect())
}

/// Pair sequences where every label `0..k` is used twice, a label may be
/// introduced only after all smaller ones.
fn sequences(k: usize, next: u8, pairs: &mut Vec<[u8; 2]>, used: &mut [u8], emit: &mut dyn FnMut(&[[u8; 2]])) {
    if pairs.len() == k {
        if used.iter().all(|&u| u == 2) {
            emit(pairs);
        }
        return;
    }
    let limit = (next as usize + 2).min(k) as u8;
    for a in 0..limit {
        for b in a + 1..limit {
            if used[a as usize] == 2 || used[b as usize] == 2 {
                continue;
            }
            // fresh labels must be introduced in order
            let fresh_ok = match (a >= next, b >= next) {
                (false, false) => true,
                (false, true) => b == next,
                (true, true) => a == next && b == next + 1,
                (true, false) => false,
            };
            if !fresh_ok {
                continue;
            }
            let new_next = next.max(b + 1);
            used[a as usize] += 1;
            used[b as usize] += 1;
            pairs.push([a, b]);
            sequences(k, new_next, pairs, used, emit);
            pairs.pop();
            used[a as usize] -= 1;
            used[b as usize] -= 1;
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ps: &[[u8; 2]]| ps.iter().map(|p| format!("({},{})", p[0], p[1])).collect::<Vec<_>>().join(",");
        write!(f, "<{}|{}>", list(&self.pairs), list(&self.extra))
    }
}

impl FromStr for Boundary {
    type Err = BoundaryError;

    /// Parses `<(a,b),...|(x,y),...>` with any positive labels and
    /// canonicalises the result.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BoundaryError::Parse(format!("malformed boundary {s:?}"));
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = body.strip_prefix('<').and_then(|b| b.strip_suffix('>')).ok_or_else(bad)?;
        let (left, right) = inner.split_once('|').ok_or_else(bad)?;
        let parse_list = |t: &str| -> Result<Vec<(u32, u32)>, BoundaryError> {
            if t.is_empty() {
                return Ok(Vec::new());
            }
            let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
            t.split("),(")
                .map(|p| {
                    let (a, b) = p.split_once(',').ok_or_else(bad)?;
                    let a: u32 = a.parse().map_err(|_| bad())?;
                    let b: u32 = b.parse().map_err(|_| bad())?;
                    if a == 0 || b == 0 {
                        return Err(bad());
                    }
                    Ok((a, b))
                })
                .collect()
        };
        Boundary::canonicalize(&parse_list(left)?, &parse_list(right)?)
    }
}

impl serde::Serialize for Boundary {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Boundary {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Reference canonical form: minimum over all k! relabelings.
    pub(crate) fn brute_canonical(raw: &[[u8; 2]], extra: &[[u8; 2]]) -> Boundary {
        let k = raw.len();
        let mut perm: Vec<u8> = (0..k as u8).collect();
        let mut best: Option<Boundary> = None;
        loop {
            let enc = |p: &[u8; 2]| {
                let (x, y) = (perm[p[0] as usize] + 1, perm[p[1] as usize] + 1);
                [x.min(y), x.max(y)]
            };
            let pairs: Vec<_> = raw.iter().map(enc).collect();
            let mut ex: Vec<_> = extra.iter().map(enc).collect();
            ex.sort_unstable();
            ex.dedup();
            let b = Boundary { pairs, extra: ex };
            if best.as_ref().map_or(true, |x| b < *x) {
                best = Some(b);
            }
            // next permutation
            let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
            let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        best.unwrap_or_else(Boundary::empty)
    }

    #[test]
    fn census() {
        let sizes: Vec<usize> = (0..=4).map(|k| enumerate_boundaries(k).unwrap().len()).collect();
        assert_eq!(sizes, vec![1, 0, 1, 1, 33]);
        assert!(enumerate_boundaries(6).is_err());
    }

    #[test]
    fn census_five_matches_hand_count() {
        // Hand count: semiedge sequences whose paths form one 5-cycle give
        // 384 classes, those forming a 3-cycle plus a 2-cycle give 360.
        assert_eq!(enumerate_boundaries(5).unwrap().len(), 744);
    }

    #[test]
    fn size_three_example() {
        let b = Boundary::canonicalize(&[(2, 1), (3, 1), (3, 2)], &[]).unwrap();
        assert_eq!(b.to_string(), "<(1,2),(1,3),(2,3)|>");
        assert_eq!(b, enumerate_boundaries(3).unwrap()[0]);
    }

    #[test]
    fn text_round_trip() {
        for b in enumerate_boundaries(4).unwrap() {
            assert_eq!(b.to_string().parse::<Boundary>().unwrap(), b);
        }
        assert_eq!("<|>".parse::<Boundary>().unwrap(), Boundary::empty());
        assert!("<(1,2)|>".parse::<Boundary>().is_err());
        assert!("(1,2)".parse::<Boundary>().is_err());
    }

    #[test]
    fn invalid_records() {
        assert!(matches!(Boundary::canonicalize(&[(1, 1)], &[]), Err(BoundaryError::RepeatedLabel(1))));
        assert!(matches!(
            Boundary::canonicalize(&[(1, 2), (1, 3)], &[]),
            Err(BoundaryError::LabelMultiplicity { .. })
        ));
        assert!(matches!(
            Boundary::canonicalize(&[(1, 2), (1, 2)], &[(1, 2)]),
            Err(BoundaryError::RedundantExtra(1, 2))
        ));
        assert!(matches!(
            Boundary::canonicalize(&[(1, 2), (1, 2)], &[(1, 7)]),
            Err(BoundaryError::UnknownLabel(7))
        ));
    }

    #[test]
    fn canonical_matches_brute_force() {
        // every size-5 boundary, relabeled by a shift, canonicalises back
        for b in enumerate_boundaries(5).unwrap() {
            let raw: Vec<[u8; 2]> = b.pairs.iter().map(|p| [(p[0] + 1) % 5, (p[1] + 1) % 5]).collect();
            let ex: Vec<[u8; 2]> = b.extra.iter().map(|p| [(p[0] + 1) % 5, (p[1] + 1) % 5]).collect();
            assert_eq!(canonical_form(&raw, &ex), b);
            assert_eq!(brute_canonical(&raw, &ex), b);
        }
    }

    #[test]
    fn idempotent() {
        for b in enumerate_boundaries(4).unwrap() {
            let pairs: Vec<(u32, u32)> = b.pairs.iter().map(|p| (p[0].into(), p[1].into())).collect();
            let extra: Vec<(u32, u32)> = b.extra.iter().map(|p| (p[0].into(), p[1].into())).collect();
            assert_eq!(Boundary::canonicalize(&pairs, &extra).unwrap(), b);
        }
    }
}
