use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use super::{enumerate_boundaries, Boundary, BoundaryError};

/// Number of the `2^k` per-semiedge matchings that turn a cover with
/// boundary `b1` on one side and `b2` on the other into a set of circuits.
///
/// Paths of both sides become nodes with two ends; at semiedge `i` bit `i`
/// of the matching decides which path of `b1` meets which path of `b2`. A
/// matching is rejected when some closed curve holds two paths of one side
/// that share an edge.
pub fn join_count(b1: &Boundary, b2: &Boundary) -> Result<u32, BoundaryError> {
    let k = b1.size();
    if b2.size() != k {
        return Err(BoundaryError::SizeMismatch { left: k, right: b2.size() });
    }
    if k == 0 {
        return Ok(1);
    }
    let related = |b: &Boundary| -> Vec<(usize, usize)> {
        b.pairs()
            .iter()
            .chain(b.extra())
            .map(|p| (p[0] as usize - 1, p[1] as usize - 1))
            .collect()
    };
    let rel1 = related(b1);
    let rel2: Vec<(usize, usize)> = related(b2).into_iter().map(|(a, b)| (a + k, b + k)).collect();
    let mut parent: Vec<usize> = Vec::with_capacity(2 * k);
    let mut valid = 0;
    for mask in 0u64..1 << k {
        parent.clear();
        parent.extend(0..2 * k);
        for i in 0..k {
            let [p, q] = b1.pairs()[i].map(|x| x as usize - 1);
            let [r, s] = b2.pairs()[i].map(|x| x as usize + k - 1);
            if mask >> i & 1 == 0 {
                union(&mut parent, p, r);
                union(&mut parent, q, s);
            } else {
                union(&mut parent, p, s);
                union(&mut parent, q, r);
            }
        }
        let ok = rel1
            .iter()
            .chain(&rel2)
            .all(|&(a, b)| find(&mut parent, a) != find(&mut parent, b));
        if ok {
            valid += 1;
        }
    }
    Ok(valid)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra] = rb;
    }
}

/// Join counts between all boundaries of one size, indexed in the order of
/// [`enumerate_boundaries`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinMatrix {
    k: usize,
    boundaries: Vec<Boundary>,
    entries: Vec<Vec<u32>>,
}

impl JoinMatrix {
    pub fn new(k: usize) -> Result<Self, BoundaryError> {
        let boundaries = enumerate_boundaries(k)?;
        let entries = boundaries
            .par_iter()
            .map(|a| boundaries.iter().map(|b| join_count(a, b)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(JoinMatrix { k, boundaries, entries })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    pub fn dimension(&self) -> usize {
        self.boundaries.len()
    }

    pub fn boundaries(&self) -> &[Boundary] {
        &self.boundaries
    }

    pub fn index_of(&self, b: &Boundary) -> Option<usize> {
        self.boundaries.binary_search(b).ok()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }

    /// `M · x` for a vector indexed like the boundaries.
    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(&m, v)| m != 0 && !v.is_zero())
                    .fold(BigRational::zero(), |acc, (&m, v)| acc + v * BigRational::from_integer(m.into()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        let b3 = &enumerate_boundaries(3).unwrap()[0];
        assert_eq!(join_count(b3, b3).unwrap(), 1);
        let b2 = &enumerate_boundaries(2).unwrap()[0];
        assert_eq!(join_count(b2, b2).unwrap(), 2);
        assert_eq!(join_count(&Boundary::empty(), &Boundary::empty()).unwrap(), 1);
        assert!(join_count(b2, b3).is_err());
    }

    #[test]
    fn matrix_bounds_and_symmetry() {
        let m = JoinMatrix::new(4).unwrap();
        assert_eq!(m.dimension(), 33);
        for i in 0..33 {
            for j in 0..33 {
                assert!(m.get(i, j) <= 16);
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
    }
}
