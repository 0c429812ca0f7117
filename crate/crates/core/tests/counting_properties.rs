mod common;

use cidc::catalog;
use cidc::counting::{count_outer_fixed, Engine};
use cidc::embedding::planar_flower;
use common::*;
use num_bigint::BigUint;

#[test]
fn at_most_two_to_three_halves_n() {
    for g in catalog::multigraphs_le10() {
        assert!(nu(&g) <= BigUint::from(1u32) << (3 * g.order() / 2));
    }
}

#[test]
fn zero_exactly_for_bridges() {
    let graphs = catalog::multigraphs_le10()
        .into_iter()
        .chain(catalog::cubic_le14().into_iter().filter(|g| g.order() <= 12));
    for g in graphs {
        assert_eq!(nu(&g) == BigUint::default(), g.has_bridge());
    }
}

#[test]
fn random_engine_agreement() {
    let mut r = rng(11);
    for _ in 0..40 {
        let n = random_even(&mut r, 10, 14);
        let g = random_cubic(&mut r, n);
        let a = nu_with(&g, Engine::Assignment);
        assert_eq!(a, nu_with(&g, Engine::Backtrack));
        assert_eq!(a, nu_with(&g, Engine::Dp));
    }
}

#[test]
fn flower_gadget_lower_bound() {
    for k in 3..=8 {
        let f = planar_flower(k).unwrap();
        let c = count_outer_fixed(&f.graph, &f.outer, &Default::default()).unwrap().value;
        assert!(c >= BigUint::from((1u32 << (k - 3)) + 1));
    }
}
