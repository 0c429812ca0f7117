mod common;

use std::collections::BTreeSet;

use cidc::boundary::{enumerate_boundaries, multiplicity_vector, Boundary};
use cidc::catalog;
use cidc::counting::CountLimits;
use cidc::graph::generators::{three_star, triangle_pole};
use common::*;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn relabeled(b: &Boundary, seed: u64) -> (Vec<(u32, u32)>, Vec<(u32, u32)>) {
    let mut r = rng(seed);
    let m = b.size();
    let mut names: Vec<u32> = (0..m as u32).map(|i| 10 + 7 * i).collect();
    names.shuffle(&mut r);
    let name = |x: u8| names[x as usize - 1];
    let mut swap = |p: &[u8; 2]| {
        let (a, c) = (name(p[0]), name(p[1]));
        if r.gen_bool(0.5) {
            (c, a)
        } else {
            (a, c)
        }
    };
    let pairs = b.pairs().iter().map(&mut swap).collect();
    let mut extra: Vec<(u32, u32)> = b.extra().iter().map(&mut swap).collect();
    extra.shuffle(&mut rng(seed ^ 1));
    (pairs, extra)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_ignores_labels(k in 2usize..=5, pick_seed in any::<u64>(), seed in any::<u64>()) {
        let all = enumerate_boundaries(k).unwrap();
        let b = &all[(pick_seed % all.len() as u64) as usize];
        let (pairs, extra) = relabeled(b, seed);
        prop_assert_eq!(&Boundary::canonicalize(&pairs, &extra).unwrap(), b);
    }
}

#[test]
fn fragment_boundaries_are_enumerated() {
    let pool: Vec<_> = catalog::multigraphs_le10().into_iter().filter(|g| g.order() <= 8).collect();
    let mut r = rng(3);
    let limits = CountLimits::default();
    for _ in 0..60 {
        let g = pick(&mut r, &pool).clone();
        let mut pole = g.remove_vertex(r.gen_range(0..g.order())).unwrap();
        if r.gen_bool(0.5) {
            let links: Vec<usize> = pole.links().collect();
            if !links.is_empty() {
                pole = pole.cut_link(*pick(&mut r, &links)).unwrap();
            }
        }
        let known: BTreeSet<Boundary> = enumerate_boundaries(pole.size()).unwrap().into_iter().collect();
        for (b, _) in multiplicity_vector(&pole, &limits).unwrap().iter() {
            assert!(known.contains(b), "{b} not enumerated");
        }
    }
}

#[test]
fn triangle_vector_doubles_star() {
    let limits = CountLimits::default();
    let star = multiplicity_vector(&three_star(), &limits).unwrap();
    let tri = multiplicity_vector(&triangle_pole(), &limits).unwrap();
    let two = BigRational::from_integer(2.into());
    for b in enumerate_boundaries(3).unwrap() {
        assert_eq!(tri.get(&b), &two * star.get(&b));
    }
}

#[test]
fn two_pole_gluings_are_bilinear() {
    let pool: Vec<_> = catalog::multigraphs_le10().into_iter().filter(|g| g.order() <= 6 && !g.has_bridge()).collect();
    let mut r = rng(22);
    let mut checked = 0;
    for _ in 0..200 {
        let (a, b) = (pick(&mut r, &pool), pick(&mut r, &pool));
        let p1 = a.cut_link(r.gen_range(0..a.edge_count())).unwrap();
        let p2 = b.cut_link(r.gen_range(0..b.edge_count())).unwrap();
        match cidc::boundary::verify_bilinear(&p1, &p2, &CountLimits::default()) {
            Ok(chk) => {
                assert!(chk.holds(), "{chk:?}");
                checked += 1;
            }
            Err(cidc::boundary::BoundaryError::LoopGluing(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(checked > 100);
}
