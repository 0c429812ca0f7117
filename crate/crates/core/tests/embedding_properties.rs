mod common;

use cidc::catalog;
use cidc::embedding::{check_flower, euler_characteristic, trace_faces, RotationSystem};
use cidc::graph::find_small_cuts;
use cidc::Multipole;
use common::*;
use rand::seq::SliceRandom;
use rand::Rng;

/// Some planar rotation, by trying both cyclic orders at every vertex.
fn planar_rotation(g: &Multipole) -> Option<RotationSystem> {
    let n = g.order();
    (0u64..1 << n).find_map(|mask| {
        let rot: Vec<[usize; 3]> = (0..n)
            .map(|v| {
                let [a, b, c] = g.darts_at(v);
                if mask >> v & 1 == 0 {
                    [a, b, c]
                } else {
                    [a, c, b]
                }
            })
            .collect();
        let r = RotationSystem::new(g, rot).unwrap();
        (euler_characteristic(g, &r) == 2).then_some(r)
    })
}

#[test]
fn every_face_is_a_flower_center() {
    let graphs: Vec<Multipole> = catalog::planar_le16()
        .into_iter()
        .filter(|g| g.order() <= 12 && find_small_cuts(g).unwrap().is_none())
        .collect();
    assert!(graphs.len() >= 3);
    for g in &graphs {
        let rot = planar_rotation(g).expect("catalog graph is planar");
        for f in trace_faces(g, &rot) {
            assert!(check_flower(g, &rot, &f).unwrap());
        }
    }
}

#[test]
fn faces_partition_darts() {
    let mut r = rng(5);
    for _ in 0..50 {
        let n = random_even(&mut r, 2, 16);
        let g = random_cubic(&mut r, n);
        let rot = RotationSystem::from_dart_order(&g).unwrap();
        let mut seen = vec![0; g.dart_count()];
        for f in trace_faces(&g, &rot) {
            for &d in f.darts() {
                seen[d] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }
}

#[test]
fn euler_characteristic_survives_relabeling() {
    let mut r = rng(6);
    for _ in 0..50 {
        let n = random_even(&mut r, 2, 16);
        let g = random_cubic(&mut r, n);
        let rot = RotationSystem::from_dart_order(&g).unwrap();
        let mut vperm: Vec<usize> = (0..n).collect();
        vperm.shuffle(&mut r);
        let m = g.edge_count();
        let mut eperm: Vec<usize> = (0..m).collect();
        eperm.shuffle(&mut r);
        let flip: Vec<bool> = (0..m).map(|_| r.gen_bool(0.5)).collect();
        let mut edges = vec![(0, 0); m];
        for e in 0..m {
            let (u, v) = g.link_endpoints(e).unwrap();
            let (u, v) = (vperm[u], vperm[v]);
            edges[eperm[e]] = if flip[e] { (v, u) } else { (u, v) };
        }
        let h = Multipole::from_edges(n, &edges).unwrap();
        let map = |d: usize| 2 * eperm[d / 2] + ((d % 2) ^ usize::from(flip[d / 2]));
        let mut hrot = vec![[0; 3]; n];
        for v in 0..n {
            hrot[vperm[v]] = rot.at(v).map(map);
        }
        let hr = RotationSystem::new(&h, hrot).unwrap();
        assert_eq!(euler_characteristic(&g, &rot), euler_characteristic(&h, &hr));
    }
}
