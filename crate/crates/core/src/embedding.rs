//! Rotation systems, face tracing and flowers.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::counting::{count_outer_fixed, CountError, CountLimits};
use crate::graph::generators::{flower_gadget, theta as theta_graph};
use crate::graph::{Dart, EdgeId, GraphError, Multipole};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("rotation does not match the graph: {0}")]
    Mismatch(String),
    #[error("embedding has Euler characteristic {0}; only planar embeddings are supported")]
    NonPlanar(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Count(#[from] CountError),
}

/// Cyclic order of the three darts at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    rotation: Vec<[Dart; 3]>,
}

impl RotationSystem {
    /// Checks that every vertex lists exactly its own darts.
    pub fn new(g: &Multipole, rotation: Vec<[Dart; 3]>) -> Result<Self, EmbeddingError> {
        if !g.is_graph() {
            return Err(GraphError::NotAGraph(g.size()).into());
        }
        if rotation.len() != g.order() {
            return Err(EmbeddingError::Mismatch(format!(
                "{} vertices in rotation, {} in graph",
                rotation.len(),
                g.order()
            )));
        }
        for (v, r) in rotation.iter().enumerate() {
            let mut a = *r;
            let mut b = g.darts_at(v);
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(EmbeddingError::Mismatch(format!("vertex {v}: {r:?} are not its darts")));
            }
        }
        Ok(RotationSystem { rotation })
    }

    /// The rotation given by the dart order stored in `g`.
    pub fn from_dart_order(g: &Multipole) -> Result<Self, EmbeddingError> {
        Self::new(g, (0..g.order()).map(|v| g.darts_at(v)).collect())
    }

    /// Rotation of a simple graph from the cyclic order of neighbours at
    /// each vertex.
    pub fn from_neighbor_cycles(g: &Multipole, cycles: &[[usize; 3]]) -> Result<Self, EmbeddingError> {
        if cycles.len() != g.order() {
            return Err(EmbeddingError::Mismatch("one neighbour cycle per vertex needed".into()));
        }
        let rotation = cycles
            .iter()
            .enumerate()
            .map(|(v, ws)| {
                let mut out = [0; 3];
                for (slot, &w) in out.iter_mut().zip(ws) {
                    let ds: Vec<Dart> = g.darts_at(v).into_iter().filter(|&d| g.across(d) == Some(w)).collect();
                    if ds.len() != 1 {
                        return Err(EmbeddingError::Mismatch(format!(
                            "vertex {v} has {} edges to {w}",
                            ds.len()
                        )));
                    }
                    *slot = ds[0];
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(g, rotation)
    }

    pub fn at(&self, v: usize) -> [Dart; 3] {
        self.rotation[v]
    }

    /// Successor of `d` in the rotation at its vertex.
    pub fn succ(&self, g: &Multipole, d: Dart) -> Dart {
        let r = self.rotation[g.vertex_of(d).expect("vertex dart")];
        let i = r.iter().position(|&x| x == d).expect("dart in rotation");
        r[(i + 1) % 3]
    }

    /// Parses lines `v: d1 d2 d3`.
    pub fn parse(g: &Multipole, text: &str) -> Result<Self, EmbeddingError> {
        let mut rotation = vec![None; g.order()];
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (v, rest) = line
                .split_once(':')
                .ok_or_else(|| EmbeddingError::Parse(format!("missing ':' in {line:?}")))?;
            let v: usize = v.trim().parse().map_err(|_| EmbeddingError::Parse(format!("bad vertex in {line:?}")))?;
            let ds: Vec<Dart> = rest
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| EmbeddingError::Parse(format!("bad dart {t:?}"))))
                .collect::<Result<_, _>>()?;
            let ds: [Dart; 3] = ds
                .try_into()
                .map_err(|_| EmbeddingError::Parse(format!("vertex {v} needs three darts")))?;
            let slot = rotation
                .get_mut(v)
                .ok_or_else(|| EmbeddingError::Parse(format!("vertex {v} out of range")))?;
            *slot = Some(ds);
        }
        let rotation = rotation
            .into_iter()
            .enumerate()
            .map(|(v, r)| r.ok_or_else(|| EmbeddingError::Parse(format!("vertex {v} missing"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(g, rotation)
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, r) in self.rotation.iter().enumerate() {
            writeln!(f, "{v}: {} {} {}", r[0], r[1], r[2])?;
        }
        Ok(())
    }
}

/// A face as the cyclic sequence of darts along its boundary; each dart
/// leaves the vertex it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    darts: Vec<Dart>,
}

impl Face {
    pub fn new(darts: Vec<Dart>) -> Self {
        Face { darts }
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.darts.iter().map(|d| d / 2)
    }

    pub fn vertices<'a>(&'a self, g: &'a Multipole) -> impl Iterator<Item = usize> + 'a {
        self.darts.iter().map(|&d| g.vertex_of(d).expect("vertex dart"))
    }

    /// Whether the boundary walk repeats neither a vertex nor an edge.
    pub fn is_cycle(&self, g: &Multipole) -> bool {
        let vs: BTreeSet<usize> = self.vertices(g).collect();
        let es: BTreeSet<EdgeId> = self.edges().collect();
        vs.len() == self.len() && es.len() == self.len()
    }
}

/// Faces traced by `d ↦ succ(twin(d))`, in order of their smallest dart.
pub fn trace_faces(g: &Multipole, rot: &RotationSystem) -> Vec<Face> {
    let mut seen = vec![false; g.dart_count()];
    let mut faces = Vec::new();
    for start in 0..g.dart_count() {
        if seen[start] {
            continue;
        }
        let mut darts = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            darts.push(d);
            d = rot.succ(g, d ^ 1);
        }
        faces.push(Face { darts });
    }
    faces
}

/// V − E + F of the embedding.
pub fn euler_characteristic(g: &Multipole, rot: &RotationSystem) -> i64 {
    g.order() as i64 - g.edge_count() as i64 + trace_faces(g, rot).len() as i64
}

/// Checks the five flower conditions for the face `f` of a planar
/// embedding. Neighbour faces are taken in the order of `f`'s edges; for a
/// triangle every pair of neighbours counts as consecutive.
pub fn check_flower(g: &Multipole, rot: &RotationSystem, f: &Face) -> Result<bool, EmbeddingError> {
    let chi = euler_characteristic(g, rot);
    if chi != 2 {
        return Err(EmbeddingError::NonPlanar(chi));
    }
    let faces = trace_faces(g, rot);
    let mut face_of = vec![0; g.dart_count()];
    for (i, face) in faces.iter().enumerate() {
        for &d in face.darts() {
            face_of[d] = i;
        }
    }
    let center = face_of[*f.darts().first().ok_or_else(|| EmbeddingError::Mismatch("empty face".into()))?];
    if faces[center].darts() != f.darts() && !is_rotation_of(faces[center].darts(), f.darts()) {
        return Err(EmbeddingError::Mismatch("face is not a face of this embedding".into()));
    }
    let f = &faces[center];
    let k = f.len();
    let neighbors: Vec<usize> = f.darts().iter().map(|&d| face_of[d ^ 1]).collect();
    // 1. boundaries are cycles
    if !f.is_cycle(g) || neighbors.iter().any(|&p| !faces[p].is_cycle(g)) {
        return Ok(false);
    }
    // 2. size
    if k < 3 {
        return Ok(false);
    }
    let edge_set = |i: usize| -> BTreeSet<EdgeId> { faces[i].edges().collect() };
    let shared = |a: usize, b: usize| edge_set(a).intersection(&edge_set(b)).count();
    // 3. one edge with each neighbour, so neighbours are distinct
    let distinct: BTreeSet<usize> = neighbors.iter().copied().collect();
    if distinct.len() != k || distinct.contains(&center) || neighbors.iter().any(|&p| shared(center, p) != 1) {
        return Ok(false);
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            let s = shared(neighbors[i], neighbors[j]);
            // 4. and 5.
            if (consecutive && s != 1) || (!consecutive && s != 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn is_rotation_of(a: &[Dart], b: &[Dart]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i]))
}

/// The standalone flower with its planar rotation, outer face and center.
pub struct PlanarFlower {
    pub graph: Multipole,
    pub rotation: RotationSystem,
    pub outer: Face,
    pub center: Face,
}

pub fn planar_flower(k: usize) -> Result<PlanarFlower, EmbeddingError> {
    let graph = flower_gadget(k)?;
    let rotation = RotationSystem::from_dart_order(&graph)?;
    let faces = trace_faces(&graph, &rotation);
    let pick = |inner: bool| {
        faces
            .iter()
            .find(|f| f.len() == k && f.vertices(&graph).all(|v| (v < k) == inner))
            .cloned()
            .ok_or_else(|| EmbeddingError::Mismatch("flower faces not found".into()))
    };
    Ok(PlanarFlower { outer: pick(false)?, center: pick(true)?, graph, rotation })
}

/// Outcome of counting outer-fixed covers of a flower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowerCount {
    pub k: usize,
    pub count: u64,
    /// `2^(k-3) + 1`.
    pub lower_bound: u64,
    /// `(2^(k-1) + (-1)^k) / 3 + 1`.
    pub formula: u64,
}

impl FlowerCount {
    pub fn bound_ok(&self) -> bool {
        self.count >= self.lower_bound
    }

    pub fn formula_ok(&self) -> bool {
        self.count == self.formula
    }
}

pub fn flower_count_check(k: usize) -> Result<FlowerCount, EmbeddingError> {
    if !(3..=8).contains(&k) {
        return Err(EmbeddingError::OutOfRange(format!("flower size {k} outside 3..=8")));
    }
    let flower = planar_flower(k)?;
    let count = count_outer_fixed(&flower.graph, &flower.outer, &CountLimits::default())?.value;
    let count: u64 = count.try_into().expect("flower counts are small");
    let lower_bound = (1u64 << (k - 3)) + 1;
    let formula = ((1i64 << (k - 1)) + if k % 2 == 0 { 1 } else { -1 }) as u64 / 3 + 1;
    Ok(FlowerCount { k, count, lower_bound, formula })
}

/// Planar rotation of the theta graph.
pub fn theta_rotation() -> (Multipole, RotationSystem) {
    let g = theta_graph();
    let rot = RotationSystem::new(&g, vec![[0, 2, 4], [1, 5, 3]]).expect("theta darts");
    (g, rot)
}

/// Planar rotation of K₄ drawn as a triangle `1 2 3` around vertex 0.
pub fn k4_rotation() -> (Multipole, RotationSystem) {
    let g = crate::graph::generators::k4();
    let rot = RotationSystem::from_neighbor_cycles(&g, &[[1, 2, 3], [2, 0, 3], [3, 0, 1], [1, 0, 2]])
        .expect("K4 neighbours");
    (g, rot)
}

/// Planar rotation of the cube, the 4-flower.
pub fn cube_rotation() -> (Multipole, RotationSystem) {
    let f = planar_flower(4).expect("k = 4");
    (f.graph, f.rotation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn planar_generator_rotations() {
        let (g, r) = k4_rotation();
        assert_eq!(trace_faces(&g, &r).len(), 4);
        assert_eq!(euler_characteristic(&g, &r), 2);
        let (g, r) = theta_rotation();
        assert_eq!(trace_faces(&g, &r).len(), 3);
        assert_eq!(euler_characteristic(&g, &r), 2);
        let (g, r) = cube_rotation();
        assert_eq!(euler_characteristic(&g, &r), 2);
        for k in 3..=8 {
            let f = planar_flower(k).unwrap();
            assert_eq!(euler_characteristic(&f.graph, &f.rotation), 2);
            assert!(f.outer.is_cycle(&f.graph));
        }
    }

    #[test]
    fn faces_partition_darts() {
        let g = flower_snark(5).unwrap();
        let r = RotationSystem::from_dart_order(&g).unwrap();
        let faces = trace_faces(&g, &r);
        let total: usize = faces.iter().map(Face::len).sum();
        assert_eq!(total, g.dart_count());
        assert_eq!(euler_characteristic(&g, &r), 20 - 30 + faces.len() as i64);
    }

    #[test]
    fn flowers() {
        let (g, r) = k4_rotation();
        for f in trace_faces(&g, &r) {
            assert!(check_flower(&g, &r, &f).unwrap());
        }
        let (g, r) = cube_rotation();
        for f in trace_faces(&g, &r) {
            assert!(check_flower(&g, &r, &f).unwrap());
        }
        let (g, r) = theta_rotation();
        for f in trace_faces(&g, &r) {
            assert!(!check_flower(&g, &r, &f).unwrap());
        }
    }

    #[test]
    fn non_planar_rejected() {
        let g = k33();
        let r = RotationSystem::from_dart_order(&g).unwrap();
        let f = trace_faces(&g, &r).remove(0);
        assert!(matches!(check_flower(&g, &r, &f), Err(EmbeddingError::NonPlanar(_))));
    }

    #[test]
    fn flower_counts() {
        let expected = [(3, 2), (4, 4), (5, 6), (6, 12), (7, 22), (8, 44)];
        for (k, c) in expected {
            let r = flower_count_check(k).unwrap();
            assert_eq!(r.count, c, "k = {k}");
            assert!(r.bound_ok() && r.formula_ok());
        }
        assert!(flower_count_check(2).is_err());
        assert!(flower_count_check(9).is_err());
    }

    #[test]
    fn rotation_text_round_trip() {
        let (g, r) = k4_rotation();
        let text = r.to_string();
        assert_eq!(RotationSystem::parse(&g, &text).unwrap(), r);
        assert!(RotationSystem::parse(&g, "0: 0 2\n").is_err());
    }
}
