//! Exact counting of circuit double covers.
//!
//! Three engines compute ν(G) independently:
//!
//! - [`Engine::Assignment`] walks all crossing assignments of the links;
//! - [`Engine::Backtrack`] lists circuits and assembles double covers;
//! - [`Engine::Dp`] sweeps vertices while tracking boundary states.

mod assignment;
mod backtrack;
mod dp;
mod outer;
pub(crate) mod strands;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

pub use backtrack::circuits;
pub use dp::elimination_order;
pub use outer::{count_outer_fixed, outer_face_choices};
pub use strands::{trace_walks, CircuitCover, CoverError, CrossingAssignment, Walk};

use crate::graph::{GraphError, Multipole};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("outer face is not a circuit: {0}")]
    OuterNotCircuit(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Assignment,
    Backtrack,
    Dp,
    /// Assignment engine for tiny inputs, DP otherwise.
    Auto,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Assignment => "brute",
            Engine::Backtrack => "backtrack",
            Engine::Dp => "dp",
            Engine::Auto => "auto",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" | "assignment" => Ok(Engine::Assignment),
            "backtrack" => Ok(Engine::Backtrack),
            "dp" => Ok(Engine::Dp),
            "auto" => Ok(Engine::Auto),
            other => Err(format!("unknown engine {other:?}")),
        }
    }
}

/// Caps that turn runaway computations into errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountLimits {
    /// Largest number of free links the assignment engine will enumerate.
    pub max_assignment_bits: usize,
    pub max_circuits: usize,
    pub max_search_nodes: u64,
    /// Largest DP state table.
    pub max_states: usize,
    /// Split assignment enumeration into parallel prefix blocks.
    pub parallel: bool,
}

impl Default for CountLimits {
    fn default() -> Self {
        CountLimits {
            max_assignment_bits: 36,
            max_circuits: 2_000_000,
            max_search_nodes: 2_000_000_000,
            max_states: 5_000_000,
            parallel: true,
        }
    }
}

/// Links up to which [`Engine::Auto`] uses the assignment engine.
pub const AUTO_ASSIGNMENT_LINKS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub value: BigUint,
    /// The engine that actually ran.
    pub engine: Engine,
    pub elapsed: Duration,
}

/// Counts the covers of `g` with the chosen engine. For multipoles only the
/// assignment engine applies; it counts raw configurations (see
/// [`count_normalized`]).
pub fn count(g: &Multipole, engine: Engine, limits: &CountLimits) -> Result<CountResult, CountError> {
    let start = Instant::now();
    let engine = match engine {
        Engine::Auto if !g.is_graph() || g.links().count() <= AUTO_ASSIGNMENT_LINKS => Engine::Assignment,
        Engine::Auto => Engine::Dp,
        e => e,
    };
    let value = if g.is_graph() && g.has_bridge() {
        BigUint::default()
    } else {
        match engine {
            Engine::Assignment => assignment::count_valid_assignments(g, limits)?,
            Engine::Backtrack => backtrack::count_backtrack(g, limits)?,
            Engine::Dp => dp::count_dp(g, limits)?,
            Engine::Auto => unreachable!("resolved above"),
        }
    };
    Ok(CountResult { value, engine, elapsed: start.elapsed() })
}

pub fn count_assignments(g: &Multipole) -> Result<CountResult, CountError> {
    count(g, Engine::Assignment, &CountLimits::default())
}

pub fn count_backtrack(g: &Multipole) -> Result<CountResult, CountError> {
    count(g, Engine::Backtrack, &CountLimits::default())
}

pub fn count_dp(g: &Multipole) -> Result<CountResult, CountError> {
    count(g, Engine::Dp, &CountLimits::default())
}

/// Covers of a multipole divided by `2^f` for its `f` isolated edges.
pub fn count_normalized(g: &Multipole, limits: &CountLimits) -> Result<BigRational, CountError> {
    let raw = assignment::count_valid_assignments(g, limits)?;
    Ok(BigRational::new(raw.into(), num_bigint::BigInt::one() << g.isolated_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    fn all(g: &Multipole) -> [BigUint; 3] {
        let l = CountLimits::default();
        [Engine::Assignment, Engine::Backtrack, Engine::Dp].map(|e| count(g, e, &l).unwrap().value)
    }

    #[test]
    fn base_counts() {
        assert_eq!(all(&theta()), [1u32.into(), 1u32.into(), 1u32.into()]);
        assert_eq!(all(&k4()), [2u32.into(), 2u32.into(), 2u32.into()]);
        assert_eq!(all(&petersen()), [52u32.into(), 52u32.into(), 52u32.into()]);
    }

    #[test]
    fn bridge_gives_zero() {
        let g = Multipole::from_edges(
            6,
            &[(0, 1), (0, 1), (1, 2), (2, 0), (3, 4), (3, 4), (4, 5), (5, 3), (2, 5)],
        )
        .unwrap();
        assert_eq!(all(&g), [0u32.into(), 0u32.into(), 0u32.into()]);
        let l = CountLimits::default();
        assert_eq!(assignment::count_valid_assignments(&g, &l).unwrap(), 0u32.into());
        assert_eq!(dp::count_dp(&g, &l).unwrap(), 0u32.into());
        assert_eq!(backtrack::count_backtrack(&g, &l).unwrap(), 0u32.into());
    }

    #[test]
    fn klee_counts() {
        for n in (4..=16).step_by(2) {
            let r = count(&klee(n).unwrap(), Engine::Dp, &CountLimits::default()).unwrap();
            assert_eq!(r.value, BigUint::from(1u32) << (n / 2 - 1));
        }
    }

    #[test]
    fn auto_choice() {
        let l = CountLimits::default();
        assert_eq!(count(&k4(), Engine::Auto, &l).unwrap().engine, Engine::Assignment);
        assert_eq!(count(&petersen(), Engine::Auto, &l).unwrap().engine, Engine::Dp);
    }

    #[test]
    fn rotation_independent() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for g in [petersen(), cube(), flower_snark(3).unwrap()] {
            let orders: Vec<[usize; 3]> = (0..g.order())
                .map(|v| {
                    let mut d = g.darts_at(v);
                    d.shuffle(&mut rng);
                    d
                })
                .collect();
            let h = g.with_dart_orders(&orders).unwrap();
            assert_eq!(count_assignments(&g).unwrap().value, count_assignments(&h).unwrap().value);
        }
    }

    #[test]
    fn normalized_isolated_edge() {
        let v = count_normalized(&isolated_edge_pole(), &CountLimits::default()).unwrap();
        assert_eq!(v, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn engine_names_parse() {
        for e in [Engine::Assignment, Engine::Backtrack, Engine::Dp, Engine::Auto] {
            assert_eq!(e.name().parse::<Engine>().unwrap(), e);
        }
        assert!("fast".parse::<Engine>().is_err());
    }
}
