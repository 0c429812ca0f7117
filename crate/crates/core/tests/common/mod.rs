#![allow(dead_code)]

use cidc::counting::{count, CountLimits, Engine};
use cidc::Multipole;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn nu(g: &Multipole) -> BigUint {
    count(g, Engine::Auto, &CountLimits::default()).unwrap().value
}

pub fn nu_with(g: &Multipole, engine: Engine) -> BigUint {
    count(g, engine, &CountLimits::default()).unwrap().value
}

/// Connected loopless cubic multigraph on `n` vertices from the pairing model.
pub fn random_cubic(rng: &mut ChaCha8Rng, n: usize) -> Multipole {
    assert!(n >= 2 && n % 2 == 0);
    loop {
        let mut stubs: Vec<usize> = (0..3 * n).map(|i| i / 3).collect();
        stubs.shuffle(rng);
        let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        let g = Multipole::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

/// Like [`random_cubic`] but without bridges.
pub fn random_bridgeless(rng: &mut ChaCha8Rng, n: usize) -> Multipole {
    loop {
        let g = random_cubic(rng, n);
        if !g.has_bridge() {
            return g;
        }
    }
}

pub fn random_even(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    2 * rng.gen_range(lo / 2..=hi / 2)
}

pub fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    items.choose(rng).expect("non-empty")
}

/// A 4-pole from a bridgeless graph: two distinct links cut.
pub fn random_four_pole(rng: &mut ChaCha8Rng, g: &Multipole) -> Multipole {
    let links: Vec<usize> = g.links().collect();
    let e1 = *pick(rng, &links);
    let h = g.cut_link(e1).unwrap();
    let rest: Vec<usize> = h.links().collect();
    h.cut_link(*pick(rng, &rest)).unwrap()
}
