use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{join_count, Boundary, BoundaryError};
use crate::counting::strands::{trace_with_model, StrandModel, Tracer};
use crate::counting::{count, CircuitCover, CountLimits, Engine, Walk};
use crate::graph::{glue_with_report, Multipole};

/// Per-boundary cover counts of a multipole, scaled by `(1/2)^f` for `f`
/// isolated edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    size: usize,
    entries: BTreeMap<Boundary, BigRational>,
}

impl MultiplicityVector {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry for `b`; zero when absent.
    pub fn get(&self, b: &Boundary) -> BigRational {
        self.entries.get(b).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero entries in boundary order.
    pub fn iter(&self) -> impl Iterator<Item = (&Boundary, &BigRational)> {
        self.entries.iter()
    }

    /// Entries laid out along `boundaries`.
    pub fn dense(&self, boundaries: &[Boundary]) -> Vec<BigRational> {
        boundaries.iter().map(|b| self.get(b)).collect()
    }

    /// Sum of all entries.
    pub fn total(&self) -> BigRational {
        self.entries.values().fold(BigRational::zero(), |a, b| a + b)
    }
}

/// Boundary of a valid cover of `g`.
pub fn boundary_of(g: &Multipole, cover: &CircuitCover) -> Result<Boundary, BoundaryError> {
    cover.validate(g)?;
    boundary_from_walks(g, &cover.walks)
}

pub(crate) fn boundary_from_walks(g: &Multipole, walks: &[Walk]) -> Result<Boundary, BoundaryError> {
    let k = g.size();
    let mut at_slot: Vec<Vec<u32>> = vec![Vec::with_capacity(2); k];
    let mut label_of = vec![0u32; walks.len()];
    let mut next = 0u32;
    for (i, w) in walks.iter().enumerate().filter(|(_, w)| !w.closed) {
        next += 1;
        label_of[i] = next;
        let first = g.slot_of(w.darts[0]).expect("open walks start at a semiedge");
        let last = g.slot_of(w.darts[w.darts.len() - 1] ^ 1).expect("open walks end at a semiedge");
        at_slot[first].push(next);
        at_slot[last].push(next);
    }
    let pairs: Vec<(u32, u32)> = at_slot.iter().map(|v| (v[0], v[1])).collect();
    let mut on_edge: Vec<Vec<u32>> = vec![Vec::with_capacity(2); g.edge_count()];
    for (i, w) in walks.iter().enumerate().filter(|(_, w)| !w.closed) {
        for e in w.edges() {
            on_edge[e].push(label_of[i]);
        }
    }
    let mut extra: Vec<(u32, u32)> = on_edge
        .iter()
        .filter(|v| v.len() == 2 && v[0] != v[1])
        .map(|v| (v[0].min(v[1]), v[0].max(v[1])))
        .filter(|&(a, b)| !pairs.iter().any(|&(x, y)| (x == a && y == b) || (x == b && y == a)))
        .collect();
    extra.sort_unstable();
    extra.dedup();
    Boundary::canonicalize(&pairs, &extra)
}

/// Enumerates all covers of `g` through crossing assignments and buckets
/// them by boundary.
pub fn multiplicity_vector(g: &Multipole, limits: &CountLimits) -> Result<MultiplicityVector, BoundaryError> {
    let model = StrandModel::new(g);
    let m = model.links.len();
    if m > limits.max_assignment_bits {
        return Err(crate::counting::CountError::ResourceLimit(format!(
            "{m} links exceed the assignment engine limit of {} bits",
            limits.max_assignment_bits
        ))
        .into());
    }
    let mut counts: BTreeMap<Boundary, BigUint> = BTreeMap::new();
    let mut tracer = Tracer::new(&model, g.order());
    let mut choices = vec![false; m];
    for t in 0u64..1 << m {
        if t > 0 {
            let bit = t.trailing_zeros() as usize;
            choices[bit] = !choices[bit];
        }
        if !tracer.is_valid(g, &model, &choices) {
            continue;
        }
        let cover = trace_with_model(g, &model, &choices);
        let b = boundary_from_walks(g, &cover.walks)?;
        *counts.entry(b).or_default() += 1u32;
    }
    let scale = BigInt::one() << g.isolated_count();
    let entries = counts
        .into_iter()
        .map(|(b, c)| (b, BigRational::new(BigInt::from(c), scale.clone())))
        .collect();
    Ok(MultiplicityVector { size: g.size(), entries })
}

/// Both sides of the bilinear identity for one gluing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearCheck {
    pub direct: BigUint,
    pub bilinear: BigRational,
}

impl BilinearCheck {
    pub fn holds(&self) -> bool {
        self.bilinear == BigRational::from_integer(BigInt::from(self.direct.clone()))
    }
}

/// Counts covers of `glue(g1, g2)` directly and through the multiplicity
/// vectors and join counts. Gluings that close vertex-less loops are
/// rejected.
pub fn verify_bilinear(g1: &Multipole, g2: &Multipole, limits: &CountLimits) -> Result<BilinearCheck, BoundaryError> {
    let glued = glue_with_report(g1, g2)?;
    if glued.loops_removed > 0 {
        return Err(BoundaryError::LoopGluing(glued.loops_removed));
    }
    let direct = count(&glued.graph, Engine::Auto, limits)?.value;
    let h1 = multiplicity_vector(g1, limits)?;
    let h2 = multiplicity_vector(g2, limits)?;
    let mut bilinear = BigRational::zero();
    for (b1, x) in h1.iter() {
        for (b2, y) in h2.iter() {
            let j = join_count(b1, b2)?;
            if j > 0 {
                bilinear += x * y * BigRational::from_integer(j.into());
            }
        }
    }
    Ok(BilinearCheck { direct, bilinear })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;
    use crate::graph::End;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_poles() {
        let l = CountLimits::default();
        let b3 = Boundary::canonicalize(&[(1, 2), (1, 3), (2, 3)], &[]).unwrap();
        let h = multiplicity_vector(&three_star(), &l).unwrap();
        assert_eq!(h.get(&b3), ratio(1, 1));
        assert_eq!(h.iter().count(), 1);
        let h = multiplicity_vector(&triangle_pole(), &l).unwrap();
        assert_eq!(h.get(&b3), ratio(2, 1));
        let b2 = Boundary::canonicalize(&[(1, 2), (1, 2)], &[]).unwrap();
        let h = multiplicity_vector(&isolated_edge_pole(), &l).unwrap();
        assert_eq!(h.get(&b2), ratio(1, 2));
    }

    #[test]
    fn graphs_have_empty_boundary() {
        let h = multiplicity_vector(&petersen(), &CountLimits::default()).unwrap();
        assert_eq!(h.get(&Boundary::empty()), ratio(52, 1));
    }

    #[test]
    fn bilinear_examples() {
        let l = CountLimits::default();
        let c = verify_bilinear(&triangle_pole(), &three_star(), &l).unwrap();
        assert_eq!(c.direct, 2u32.into());
        assert!(c.holds());
        let c = verify_bilinear(&three_star(), &three_star(), &l).unwrap();
        assert_eq!(c.direct, 1u32.into());
        assert!(c.holds());
        assert!(matches!(
            verify_bilinear(&isolated_edge_pole(), &isolated_edge_pole(), &l),
            Err(BoundaryError::LoopGluing(1))
        ));
    }

    #[test]
    fn two_pole_with_isolated_edge() {
        // A digon pole (two vertices, double edge, one semiedge each) glued
        // to an isolated edge is the theta graph.
        let digon = Multipole::new(
            2,
            2,
            &[
                (End::Vertex(0), End::Vertex(1)),
                (End::Vertex(0), End::Vertex(1)),
                (End::Vertex(0), End::Semi(0)),
                (End::Vertex(1), End::Semi(1)),
            ],
        )
        .unwrap();
        let c = verify_bilinear(&digon, &isolated_edge_pole(), &CountLimits::default()).unwrap();
        assert_eq!(c.direct, 1u32.into());
        assert!(c.holds());
    }

    #[test]
    fn boundary_of_validates() {
        let g = three_star();
        let cover = crate::counting::trace_walks(&g, &crate::counting::CrossingAssignment::from_link_flags(&g, &[]).unwrap());
        assert_eq!(boundary_of(&g, &cover).unwrap().to_string(), "<(1,2),(1,3),(2,3)|>");
        let mut broken = cover.clone();
        broken.walks.pop();
        assert!(matches!(boundary_of(&g, &broken), Err(BoundaryError::Cover(_))));
    }
}
