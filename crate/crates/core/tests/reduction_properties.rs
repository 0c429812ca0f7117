mod common;

use cidc::catalog;
use cidc::graph::generators::cycle_pole;
use cidc::graph::{contract_cut_side, find_small_cuts, glue, Shore};
use cidc::lp::{check_theorem_lp, five_cycle_replacements, four_cycle_replacements, verify_dual};
use cidc::reductions::{
    certify_planar_bound, find_cycle, replace_4cycle, verify_certificate, Certificate, CycleMode, Node, Verdict,
};
use cidc::scan::klee_count;
use cidc::Multipole;
use common::*;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::Rng;

fn meets_klee(g: &Multipole) -> bool {
    nu(g) >= klee_count(g.order())
}

#[test]
fn minimal_counterexample_screen() {
    let graphs = catalog::multigraphs_le10()
        .into_iter()
        .chain(catalog::cubic_le14())
        .filter(|g| g.order() >= 4 && !g.has_bridge());
    let mut replayed = 0;
    for g in graphs {
        let children: Vec<Multipole> = match find_small_cuts(&g).unwrap() {
            Some(cut) => vec![
                contract_cut_side(&g, &cut, Shore::Complement).unwrap(),
                contract_cut_side(&g, &cut, Shore::Side).unwrap(),
            ],
            None => match find_cycle(&g, 4) {
                Some(c) => replace_4cycle(&g, &c).unwrap().to_vec(),
                None => continue,
            },
        };
        if children.iter().all(meets_klee) {
            replayed += 1;
            assert!(meets_klee(&g));
        }
    }
    assert!(replayed > 500);
}

fn as_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

#[test]
fn lp_bound_is_sound_on_fragments() {
    let pool: Vec<Multipole> = catalog::cubic_le14().into_iter().filter(|g| g.order() <= 10 && !g.has_bridge()).collect();
    let mut r = rng(21);
    for (len, mode) in [(4, CycleMode::Planar), (5, CycleMode::Planar), (5, CycleMode::All)] {
        let t = check_theorem_lp(len, mode).unwrap();
        let v = verify_dual(&t.lp, &t.solution.dual).unwrap();
        let s = cycle_pole(len).unwrap();
        let rs = if len == 4 { four_cycle_replacements() } else { five_cycle_replacements(mode) };
        let mut checked = 0;
        while checked < 20 {
            let base = pick(&mut r, &pool);
            let g = if len == 4 {
                random_four_pole(&mut r, base)
            } else {
                let h = base.remove_vertex(r.gen_range(0..base.order())).unwrap();
                let links: Vec<usize> = h.links().collect();
                h.cut_link(*pick(&mut r, &links)).unwrap()
            };
            let Ok(with_s) = glue(&g, &s) else { continue };
            let Ok(with_r) = rs.iter().map(|x| glue(&g, x)).collect::<Result<Vec<_>, _>>() else { continue };
            let min = with_r.iter().map(nu).min().unwrap();
            let rhs = &v * &t.lp.c4 * as_rational(&min);
            assert!(as_rational(&nu(&with_s)) >= rhs);
            checked += 1;
        }
    }
}

#[test]
fn strong_duality() {
    for (len, mode) in [(4, CycleMode::Planar), (5, CycleMode::Planar), (5, CycleMode::All)] {
        let t = check_theorem_lp(len, mode).unwrap();
        assert_eq!(verify_dual(&t.lp, &t.solution.dual).unwrap(), t.solution.optimum);
    }
}

/// Bumps the factor of the `target`-th node in preorder.
fn tamper(c: &mut Certificate, target: usize, counter: &mut usize) -> bool {
    *counter += 1;
    let Node::Step(s) = &mut c.node else { return false };
    if *counter == target {
        s.factor = &s.factor + BigRational::from_integer(1.into());
        return true;
    }
    s.children.iter_mut().any(|ch| tamper(ch, target, counter))
}

#[test]
fn tampering_is_located() {
    let g = cidc::graph::generators::prism(6).unwrap();
    let mut cert = certify_planar_bound(&g).unwrap();
    assert!(verify_certificate(&cert).is_valid());
    assert!(tamper(&mut cert, 3, &mut 0));
    let json = cert.to_json();
    let back = Certificate::from_json(&json).unwrap();
    assert_eq!(verify_certificate(&back), Verdict::Invalid { step: 3, reason: "factor mismatch".into() });
}

#[test]
fn json_rejects_garbage() {
    assert!(Certificate::from_json(&serde_json::json!({"graph": "2 0 0\n"})).is_err());
    assert!(Certificate::from_json(&serde_json::json!({})).is_err());
}
