//! Cut, triangle and short-cycle reductions, and certificates built from them.

mod certificate;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

pub use certificate::{
    certify_planar_bound, certify_with, verify_certificate, BaseGraph, Certificate, CertifyOptions, Combine, Node,
    ReductionStep, StepKind, Verdict,
};

use crate::counting::{count, CountError, CountLimits, Engine};
use crate::graph::{find_small_cuts, GraphError, Multipole};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no cycle of length at most 5 in a cyclically 4-edge-connected graph on {0} vertices: non-planar witness or internal error")]
    NoShortCycle(usize),
    #[error("certificate format: {0}")]
    Format(String),
}

/// Which replacements of a 5-cycle to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CycleMode {
    /// The five replacements that keep the cyclic order of the stubs.
    Planar,
    /// All ten.
    All,
}

impl FromStr for CycleMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "planar" => Ok(CycleMode::Planar),
            "all" => Ok(CycleMode::All),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

impl fmt::Display for CycleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleMode::Planar => "planar",
            CycleMode::All => "all",
        })
    }
}

fn sorted_neighbors(g: &Multipole, v: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = g.neighbors(v).iter().flatten().copied().collect();
    ns.sort_unstable();
    ns.dedup();
    ns
}

/// Whether `cyc` is a cycle whose vertices have no edges among them besides
/// the single cycle edges.
pub fn is_induced_cycle(g: &Multipole, cyc: &[usize]) -> bool {
    let len = cyc.len();
    if len < 3 || cyc.iter().any(|&v| v >= g.order()) {
        return false;
    }
    let mut seen = cyc.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != len {
        return false;
    }
    (0..len).all(|i| {
        let (prev, v, next) = (cyc[(i + len - 1) % len], cyc[i], cyc[(i + 1) % len]);
        let inside = g
            .neighbors(v)
            .iter()
            .flatten()
            .filter(|w| cyc.contains(w))
            .count();
        g.multiplicity(v, prev) == 1 && g.multiplicity(v, next) == 1 && inside == 2
    })
}

fn search_cycle(g: &Multipole, len: usize, induced: bool) -> Option<Vec<usize>> {
    fn extend(g: &Multipole, len: usize, induced: bool, path: &mut Vec<usize>) -> bool {
        let s = path[0];
        let last = *path.last().unwrap();
        if path.len() == len {
            let closes = g.multiplicity(last, s) > 0 && path[1] < last;
            return closes && (!induced || is_induced_cycle(g, path));
        }
        for w in sorted_neighbors(g, last) {
            if w > s && !path.contains(&w) {
                path.push(w);
                if extend(g, len, induced, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    if len < 3 || !g.is_graph() {
        return None;
    }
    (0..g.order()).find_map(|s| {
        let mut path = vec![s];
        extend(g, len, induced, &mut path).then_some(path)
    })
}

/// The lexicographically smallest induced cycle of the given length, written
/// from its smallest vertex towards the smaller of its two neighbours.
pub fn find_cycle(g: &Multipole, len: usize) -> Option<Vec<usize>> {
    search_cycle(g, len, true)
}

/// Whether `g` contains any cycle of length `len`, induced or not.
pub fn has_cycle(g: &Multipole, len: usize) -> bool {
    search_cycle(g, len, false).is_some()
}

fn require_cyclically_4_connected(g: &Multipole) -> Result<(), ReductionError> {
    if let Some(cut) = find_small_cuts(g)? {
        return Err(ReductionError::Precondition(format!(
            "graph has a {}-edge cut {:?}; reduce cuts first",
            cut.size(),
            cut.edges
        )));
    }
    Ok(())
}

/// The neighbour of each cycle vertex off the cycle.
fn stubs(g: &Multipole, cyc: &[usize]) -> Result<Vec<usize>, ReductionError> {
    if !is_induced_cycle(g, cyc) {
        return Err(ReductionError::Precondition(format!("{cyc:?} is not an induced cycle")));
    }
    Ok(cyc
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .flatten()
                .copied()
                .find(|w| !cyc.contains(w))
                .expect("induced cycle vertex has an outside neighbour")
        })
        .collect())
}

/// Deletes the cycle vertices, adds `extra` new vertices (ids `n..n+extra`
/// in `new_edges`) and the given edges. Kept vertices are renumbered in
/// order; kept edges stay in order ahead of the new ones.
fn rewrite(g: &Multipole, cyc: &[usize], extra: usize, new_edges: &[(usize, usize)]) -> Result<Multipole, GraphError> {
    let n = g.order();
    let mut index = vec![usize::MAX; n + extra];
    let mut next = 0;
    for v in 0..n {
        if !cyc.contains(&v) {
            index[v] = next;
            next += 1;
        }
    }
    for j in 0..extra {
        index[n + j] = next + j;
    }
    let mut edges: Vec<(usize, usize)> = g
        .links()
        .filter_map(|e| g.link_endpoints(e))
        .filter(|(u, v)| !cyc.contains(u) && !cyc.contains(v))
        .map(|(u, v)| (index[u], index[v]))
        .collect();
    for &(u, v) in new_edges {
        if u == v {
            return Err(GraphError::Loop { edge: edges.len(), vertex: index[u] });
        }
        edges.push((index[u], index[v]));
    }
    Multipole::from_edges(next + extra, &edges)
}

/// The two graphs obtained by deleting opposite edges of an induced 4-cycle
/// `a0 a1 a2 a3` and suppressing the degree-2 vertices. The first keeps the
/// paths `a0 a1` and `a2 a3`, the second `a1 a2` and `a3 a0`.
pub fn replace_4cycle(g: &Multipole, cyc: &[usize]) -> Result<[Multipole; 2], ReductionError> {
    if cyc.len() != 4 {
        return Err(ReductionError::Precondition(format!("expected a 4-cycle, got {} vertices", cyc.len())));
    }
    require_cyclically_4_connected(g)?;
    let x = stubs(g, cyc)?;
    Ok([
        rewrite(g, cyc, 0, &[(x[0], x[1]), (x[2], x[3])])?,
        rewrite(g, cyc, 0, &[(x[1], x[2]), (x[3], x[0])])?,
    ])
}

/// Replaces a 5-cycle `a0..a4` by an edge and a new vertex. The i-th planar
/// replacement joins the stubs of `a_i` and `a_{i+1}` and attaches the other
/// three to the new vertex; in [`CycleMode::All`] five more follow, joining
/// `a_i` with `a_{i+2}` instead.
pub fn replace_5cycle(g: &Multipole, cyc: &[usize], mode: CycleMode) -> Result<Vec<Multipole>, ReductionError> {
    if cyc.len() != 5 {
        return Err(ReductionError::Precondition(format!("expected a 5-cycle, got {} vertices", cyc.len())));
    }
    require_cyclically_4_connected(g)?;
    if has_cycle(g, 4) {
        return Err(ReductionError::Precondition("graph contains a 4-cycle".into()));
    }
    let x = stubs(g, cyc)?;
    let w = g.order();
    let mut patterns: Vec<[usize; 5]> = (0..5).map(|i| [i, i + 1, i + 2, i + 3, i + 4]).collect();
    if mode == CycleMode::All {
        patterns.extend((0..5).map(|i| [i, i + 2, i + 1, i + 3, i + 4]));
    }
    patterns
        .into_iter()
        .map(|p| {
            let [a, b, c, d, e] = p.map(|i| x[i % 5]);
            if a == b {
                return Err(ReductionError::Precondition(format!("stubs meet at vertex {a}: short cycle")));
            }
            Ok(rewrite(g, cyc, 1, &[(a, b), (w, c), (w, d), (w, e)])?)
        })
        .collect()
}

/// The concrete inequality `ν(G) >= factor · min ν(G_i)` for the first
/// induced cycle of length `len` (4 or 5), counted directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleInequality {
    pub cycle: Vec<usize>,
    pub nu: BigUint,
    pub children: Vec<BigUint>,
    pub factor: BigRational,
}

impl CycleInequality {
    pub fn holds(&self) -> bool {
        let min = self.children.iter().min().cloned().unwrap_or_default();
        let rhs = &self.factor * BigRational::from_integer(min.into());
        BigRational::from_integer(self.nu.clone().into()) >= rhs
    }
}

pub fn cycle_factor(len: usize, mode: CycleMode) -> Option<BigRational> {
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    match (len, mode) {
        (4, _) => Some(r(4, 1)),
        (5, CycleMode::Planar) => Some(r(5, 2)),
        (5, CycleMode::All) => Some(r(15, 4)),
        _ => None,
    }
}

pub fn check_cycle_inequality(
    g: &Multipole,
    len: usize,
    mode: CycleMode,
    limits: &CountLimits,
) -> Result<Option<CycleInequality>, ReductionError> {
    let factor = cycle_factor(len, mode)
        .ok_or_else(|| ReductionError::Precondition(format!("no reduction for cycles of length {len}")))?;
    let Some(cycle) = find_cycle(g, len) else {
        return Ok(None);
    };
    let children = if len == 4 { replace_4cycle(g, &cycle)?.to_vec() } else { replace_5cycle(g, &cycle, mode)? };
    let nu = count(g, Engine::Auto, limits)?.value;
    let children = children
        .iter()
        .map(|h| Ok(count(h, Engine::Auto, limits)?.value))
        .collect::<Result<Vec<_>, ReductionError>>()?;
    debug_assert!(!factor.is_zero());
    Ok(Some(CycleInequality { cycle, nu, children, factor }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn nu(g: &Multipole) -> BigUint {
        count(g, Engine::Auto, &CountLimits::default()).unwrap().value
    }

    #[test]
    fn cycle_search() {
        assert_eq!(find_cycle(&petersen(), 4), None);
        assert_eq!(find_cycle(&petersen(), 5), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(find_cycle(&cube(), 3), None);
        let c = find_cycle(&cube(), 4).unwrap();
        assert!(is_induced_cycle(&cube(), &c));
        assert!(c[1] < c[3] && c.iter().all(|&v| v >= c[0]));
        // K4's 4-cycles all have chords
        assert_eq!(find_cycle(&k4(), 4), None);
        assert!(has_cycle(&k4(), 4));
        assert_eq!(find_cycle(&k4(), 3), Some(vec![0, 1, 2]));
    }

    #[test]
    fn cube_4cycle() {
        let g = cube();
        let c = find_cycle(&g, 4).unwrap();
        let [g1, g2] = replace_4cycle(&g, &c).unwrap();
        assert_eq!((g1.order(), g2.order()), (4, 4));
        assert!(!g1.has_bridge() && !g2.has_bridge());
        let m = nu(&g1).min(nu(&g2));
        assert!(nu(&g) >= BigUint::from(4u32) * m);
    }

    #[test]
    fn k33_4cycle_gives_thetas() {
        let g = k33();
        let c = find_cycle(&g, 4).unwrap();
        for h in replace_4cycle(&g, &c).unwrap() {
            assert_eq!(h.order(), 2);
            assert_eq!(h.multiplicity(0, 1), 3);
        }
    }

    #[test]
    fn cut_blocks_4cycle() {
        let g = prism(3).unwrap();
        let err = replace_4cycle(&g, &[0, 1, 4, 3]).unwrap_err();
        assert!(matches!(err, ReductionError::Precondition(_)));
    }

    #[test]
    fn petersen_5cycle() {
        let g = petersen();
        let c = find_cycle(&g, 5).unwrap();
        let planar = replace_5cycle(&g, &c, CycleMode::Planar).unwrap();
        assert_eq!(planar.len(), 5);
        assert!(planar.iter().all(|h| h.order() == 6 && !h.has_bridge()));
        let all = replace_5cycle(&g, &c, CycleMode::All).unwrap();
        assert_eq!(all.len(), 10);
        assert_eq!(&all[..5], &planar[..]);
        let l = CountLimits::default();
        for mode in [CycleMode::Planar, CycleMode::All] {
            let chk = check_cycle_inequality(&g, 5, mode, &l).unwrap().unwrap();
            assert_eq!(chk.nu, 52u32.into());
            assert!(chk.holds(), "{chk:?}");
        }
    }

    #[test]
    fn four_cycle_blocks_5cycle() {
        let g = cube();
        assert!(replace_5cycle(&g, &[0, 1, 2, 3, 4], CycleMode::Planar).is_err());
    }
}
