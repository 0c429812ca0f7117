//! Standard cubic graphs and small multipoles.

use super::{End, GraphError, Multipole};

fn build(order: usize, edges: &[(usize, usize)]) -> Multipole {
    Multipole::from_edges(order, edges).expect("generator produces a cubic graph")
}

/// K₂³: two vertices joined by three parallel edges.
pub fn theta() -> Multipole {
    build(2, &[(0, 1), (0, 1), (0, 1)])
}

pub fn k4() -> Multipole {
    build(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn k33() -> Multipole {
    build(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)])
}

/// Outer 5-cycle 0..5, spokes i–(i+5), inner pentagram on 5..10.
pub fn petersen() -> Multipole {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &edges)
}

/// Klee graph on `n` vertices: start from the theta graph and expand vertex 0
/// into a triangle `(n - 2) / 2` times.
pub fn klee(n: usize) -> Result<Multipole, GraphError> {
    if n < 2 || n % 2 == 1 {
        return Err(GraphError::ParameterOutOfRange(format!("klee needs even n >= 2, got {n}")));
    }
    let mut g = theta();
    while g.order() < n {
        g = g.expand_vertex(0)?;
    }
    Ok(g)
}

/// Circular ladder on `2k` vertices: inner cycle `0..k`, outer cycle
/// `k..2k`, spokes `i`–`k+i`.
pub fn prism(k: usize) -> Result<Multipole, GraphError> {
    if k < 2 {
        return Err(GraphError::ParameterOutOfRange(format!("prism needs k >= 2, got {k}")));
    }
    let mut edges = Vec::with_capacity(3 * k);
    for i in 0..k {
        edges.push((i, (i + 1) % k));
    }
    for i in 0..k {
        edges.push((i, k + i));
    }
    for i in 0..k {
        edges.push((k + i, k + (i + 1) % k));
    }
    Ok(build(2 * k, &edges))
}

pub fn cube() -> Multipole {
    prism(4).expect("k = 4")
}

/// The standalone planar flower on `2k` vertices: a center cycle `0..k`,
/// petals `k..2k` on the outer cycle. Darts at every vertex are ordered
/// along a planar rotation whose outer face is the cycle `k, k+1, ..., 2k-1`.
pub fn flower_gadget(k: usize) -> Result<Multipole, GraphError> {
    if k < 3 {
        return Err(GraphError::ParameterOutOfRange(format!("flower gadget needs k >= 3, got {k}")));
    }
    let g = prism(k)?;
    let dart_to = |v: usize, w: usize| {
        g.darts_at(v)
            .into_iter()
            .find(|&d| g.across(d) == Some(w))
            .expect("prism neighbours")
    };
    let orders: Vec<[usize; 3]> = (0..2 * k)
        .map(|v| {
            if v < k {
                let prev = (v + k - 1) % k;
                let next = (v + 1) % k;
                [dart_to(v, prev), dart_to(v, k + v), dart_to(v, next)]
            } else {
                let i = v - k;
                let next = k + (i + 1) % k;
                let prev = k + (i + k - 1) % k;
                [dart_to(v, next), dart_to(v, i), dart_to(v, prev)]
            }
        })
        .collect();
    g.with_dart_orders(&orders)
}

/// Flower snark J_k for odd `k >= 3`: hubs `a_i = i` joined to `b_i = k+i`,
/// `c_i = 2k+i`, `d_i = 3k+i`; the `b_i` form a k-cycle and the `c_i`, `d_i`
/// together form one 2k-cycle `c_0 ... c_{k-1} d_0 ... d_{k-1}`.
pub fn flower_snark(k: usize) -> Result<Multipole, GraphError> {
    if k < 3 || k % 2 == 0 {
        return Err(GraphError::ParameterOutOfRange(format!("flower snark needs odd k >= 3, got {k}")));
    }
    let (a, b, c, d) = (0, k, 2 * k, 3 * k);
    let mut edges = Vec::with_capacity(6 * k);
    for i in 0..k {
        edges.extend([(a + i, b + i), (a + i, c + i), (a + i, d + i)]);
    }
    for i in 0..k {
        edges.push((b + i, b + (i + 1) % k));
    }
    let ring: Vec<usize> = (0..k).map(|i| c + i).chain((0..k).map(|i| d + i)).collect();
    for i in 0..2 * k {
        edges.push((ring[i], ring[(i + 1) % (2 * k)]));
    }
    Ok(build(4 * k, &edges))
}

/// One vertex with three dangling edges in slots 1, 2, 3.
pub fn three_star() -> Multipole {
    Multipole::new(
        1,
        3,
        &[
            (End::Vertex(0), End::Semi(0)),
            (End::Vertex(0), End::Semi(1)),
            (End::Vertex(0), End::Semi(2)),
        ],
    )
    .expect("valid 3-star")
}

/// A triangle whose i-th vertex carries the i-th semiedge.
pub fn triangle_pole() -> Multipole {
    cycle_pole(3).expect("len 3")
}

/// A cycle `a_0 ... a_{len-1}` where `a_i` carries semiedge `i`.
pub fn cycle_pole(len: usize) -> Result<Multipole, GraphError> {
    if len < 2 {
        return Err(GraphError::ParameterOutOfRange(format!("cycle pole needs len >= 2, got {len}")));
    }
    let mut ends = Vec::with_capacity(2 * len);
    for i in 0..len {
        ends.push((End::Vertex(i), End::Vertex((i + 1) % len)));
    }
    for i in 0..len {
        ends.push((End::Vertex(i), End::Semi(i)));
    }
    Multipole::new(len, len, &ends)
}

/// A single isolated edge whose ends are semiedges 1 and 2.
pub fn isolated_edge_pole() -> Multipole {
    Multipole::new(0, 2, &[(End::Semi(0), End::Semi(1))]).expect("valid isolated edge")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::find_small_cuts;

    #[test]
    fn sizes() {
        assert_eq!(theta().edge_count(), 3);
        assert_eq!(petersen().order(), 10);
        assert!(petersen().is_simple());
        assert_eq!(klee(2).unwrap(), theta());
        for n in (2..=20).step_by(2) {
            let g = klee(n).unwrap();
            assert_eq!(g.order(), n);
            assert!(g.is_connected());
        }
        assert!(klee(5).is_err());
        assert!(klee(0).is_err());
        let j3 = flower_snark(3).unwrap();
        assert_eq!(j3.order(), 12);
        assert!(j3.is_simple());
        assert!(flower_snark(4).is_err());
        let f = flower_gadget(5).unwrap();
        assert_eq!((f.order(), f.edge_count()), (10, 15));
        assert!(flower_gadget(2).is_err());
    }

    #[test]
    fn klee4_is_k4() {
        let g = klee(4).unwrap();
        assert!(g.is_simple());
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn klee_grows_by_expanding_vertex_zero() {
        for n in (2..=12).step_by(2) {
            assert_eq!(klee(n + 2).unwrap(), klee(n).unwrap().expand_vertex(0).unwrap());
        }
    }

    #[test]
    fn flower_snarks_are_cyclically_4_connected() {
        for k in [5, 7] {
            assert_eq!(find_small_cuts(&flower_snark(k).unwrap()).unwrap(), None);
        }
        assert_eq!(find_small_cuts(&petersen()).unwrap(), None);
    }
}
