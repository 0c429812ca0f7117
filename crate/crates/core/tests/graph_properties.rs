mod common;

use cidc::catalog;
use cidc::graph::generators::*;
use cidc::graph::io::{parse_graph6, parse_multipole, write_graph6, write_multipole};
use cidc::graph::{contract_cut_side, find_small_cuts, glue_with_report, EdgeCut, Shore};
use cidc::Multipole;
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multipole_text_round_trip(seed in any::<u64>(), n in 1usize..8, cuts in 0usize..3) {
        let mut r = rng(seed);
        let mut g = random_cubic(&mut r, 2 * n);
        for _ in 0..cuts {
            let links: Vec<usize> = g.links().collect();
            g = g.cut_link(*pick(&mut r, &links)).unwrap();
        }
        prop_assert_eq!(parse_multipole(&write_multipole(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip(idx in 0usize..621) {
        let g = &catalog::cubic_le14()[idx];
        let text = write_graph6(g).unwrap();
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(write_graph6(&back).unwrap(), text);
        prop_assert_eq!(back.order(), g.order());
    }

    #[test]
    fn glue_counts(seed in any::<u64>(), n1 in 1usize..6, n2 in 1usize..6) {
        let mut r = rng(seed);
        let (ga, gb) = (random_bridgeless(&mut r, 2 * n1), random_bridgeless(&mut r, 2 * n2));
        let a = random_four_pole(&mut r, &ga);
        let b = random_four_pole(&mut r, &gb);
        let report = glue_with_report(&a, &b).unwrap();
        prop_assert_eq!(report.graph.order(), a.order() + b.order());
        prop_assert_eq!(report.graph.edge_count(), a.edge_count() + b.edge_count() - 4);
        prop_assert_eq!(report.loops_removed, 0);
    }
}

#[test]
fn isolated_edges_glue_into_removed_loop() {
    let e = isolated_edge_pole();
    let report = glue_with_report(&e, &e).unwrap();
    assert_eq!(report.loops_removed, 1);
    assert_eq!(report.graph.edge_count(), 0);
}

/// Brute-force cyclic 4-edge-connectivity: no cut of at most 3 links with
/// a cycle on both sides.
fn cyclically_4_connected(g: &Multipole) -> bool {
    let links: Vec<usize> = g.links().collect();
    let m = links.len();
    let has_cycle = |side: &[usize]| {
        let inside = links
            .iter()
            .filter(|&&e| {
                let (u, v) = g.link_endpoints(e).unwrap();
                side.contains(&u) && side.contains(&v)
            })
            .count();
        inside >= side.len()
    };
    for size in 1..=3usize {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let removed: Vec<usize> = idx.iter().map(|&i| links[i]).collect();
            let (comp, count) = g.components_without(&removed);
            if count > 1 {
                let a: Vec<usize> = (0..g.order()).filter(|&v| comp[v] == comp[0]).collect();
                let b: Vec<usize> = (0..g.order()).filter(|&v| comp[v] != comp[0]).collect();
                if has_cycle(&a) && has_cycle(&b) {
                    return false;
                }
            }
            let mut i = size;
            while i > 0 && idx[i - 1] == m - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    true
}

#[test]
fn small_cuts_match_cyclic_connectivity() {
    for g in catalog::cubic_le14().iter().filter(|g| g.order() <= 12) {
        let none = find_small_cuts(g).unwrap().is_none();
        assert_eq!(none, cyclically_4_connected(g), "{}", write_graph6(g).unwrap());
    }
}

#[test]
fn removing_two_non_adjacent_edges_keeps_2_edge_connectivity() {
    let graphs: Vec<Multipole> = catalog::cubic_le14()
        .into_iter()
        .filter(|g| g.order() >= 6 && find_small_cuts(g).unwrap().is_none())
        .collect();
    assert!(!graphs.is_empty());
    for g in &graphs {
        let m = g.edge_count();
        for e in 0..m {
            for f in e + 1..m {
                let (a, b) = g.link_endpoints(e).unwrap();
                let (c, d) = g.link_endpoints(f).unwrap();
                if [a, b].iter().any(|x| *x == c || *x == d) {
                    continue;
                }
                let (_, count) = g.components_without(&[e, f]);
                assert_eq!(count, 1);
                let bridge = (0..m)
                    .filter(|&x| x != e && x != f)
                    .any(|x| g.components_without(&[e, f, x]).1 > 1);
                assert!(!bridge);
            }
        }
    }
}

#[test]
fn klee_contracts_back() {
    for n in (4..=14).step_by(2) {
        let g = klee(n).unwrap();
        let h = klee(n + 2).unwrap();
        assert_eq!(h, g.expand_vertex(0).unwrap());
        let tri = vec![0, n, n + 1];
        let edges: Vec<usize> = h
            .links()
            .filter(|&e| {
                let (u, v) = h.link_endpoints(e).unwrap();
                tri.contains(&u) != tri.contains(&v)
            })
            .collect();
        let back = contract_cut_side(&h, &EdgeCut { edges, side: tri }, Shore::Side).unwrap();
        assert_eq!(back.order(), n);
        assert_eq!(nu(&back), nu(&g));
    }
}
