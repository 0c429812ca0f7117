//! Bundled graph catalogs, generated with nauty (see `tools/gen_catalog.sh`).

use crate::graph::io::{parse_graph6, parse_multipole_catalog};
use crate::graph::Multipole;

const MULTIGRAPHS_LE10: &str = include_str!("../data/multigraphs_le10.mpl");
const CUBIC_LE14: &str = include_str!("../data/cubic_le14.g6");
const PLANAR_LE16: &str = include_str!("../data/planar_le16.g6");
const GIRTH5_LE14: &str = include_str!("../data/girth5_le14.g6");
const GIRTH5_16: &str = include_str!("../data/girth5_16.g6");

fn graph6_lines(text: &str) -> Vec<Multipole> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_graph6(l).expect("bundled catalog is cubic"))
        .collect()
}

/// All connected loopless cubic multigraphs on 2 to 10 vertices (120 graphs).
pub fn multigraphs_le10() -> Vec<Multipole> {
    parse_multipole_catalog(MULTIGRAPHS_LE10).expect("bundled catalog parses")
}

/// All connected simple cubic graphs on 4 to 14 vertices (621 graphs).
pub fn cubic_le14() -> Vec<Multipole> {
    graph6_lines(CUBIC_LE14)
}

/// All connected simple planar cubic graphs on at most 16 vertices (860 graphs).
pub fn planar_le16() -> Vec<Multipole> {
    graph6_lines(PLANAR_LE16)
}

/// 2-connected simple cubic graphs of girth at least 5 on at most 14 vertices.
pub fn girth5_le14() -> Vec<Multipole> {
    graph6_lines(GIRTH5_LE14)
}

/// 2-connected simple cubic graphs of girth at least 5 on 16 vertices.
pub fn girth5_16() -> Vec<Multipole> {
    graph6_lines(GIRTH5_16)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts_by_order(gs: &[Multipole]) -> Vec<(usize, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for g in gs {
            *m.entry(g.order()).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }

    #[test]
    fn catalog_sizes_match_known_enumerations() {
        assert_eq!(
            counts_by_order(&multigraphs_le10()),
            vec![(2, 1), (4, 2), (6, 6), (8, 20), (10, 91)]
        );
        assert_eq!(
            counts_by_order(&cubic_le14()),
            vec![(4, 1), (6, 2), (8, 5), (10, 19), (12, 85), (14, 509)]
        );
        assert_eq!(
            counts_by_order(&planar_le16()),
            vec![(4, 1), (6, 1), (8, 3), (10, 9), (12, 32), (14, 133), (16, 681)]
        );
        assert_eq!(counts_by_order(&girth5_le14()), vec![(10, 1), (12, 2), (14, 9)]);
        assert_eq!(counts_by_order(&girth5_16()), vec![(16, 49)]);
    }

    #[test]
    fn catalogs_are_connected() {
        assert!(multigraphs_le10().iter().all(Multipole::is_connected));
        assert!(cubic_le14().iter().all(Multipole::is_connected));
    }
}
