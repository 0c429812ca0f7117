//! Linear programs bounding the effect of replacing a small multipole.
//!
//! For a multipole `s` and replacements `R`, the program
//!
//! ```text
//! minimise  o·m   subject to  F_r · (M h(r))·m >= 1 for r in R,  m >= 0
//! ```
//!
//! with `o = M h(s)` lower-bounds `ν(J(g, s)) / min_r F_r ν(J(g, r))` over
//! all complements `g`. It is solved through its dual, whose feasible points
//! are checkable certificates.

mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::boundary::{multiplicity_vector, Boundary, BoundaryError, JoinMatrix};
use crate::counting::CountLimits;
use crate::graph::generators::cycle_pole;
use crate::graph::{End, GraphError, Multipole};
use crate::rational;
use crate::reductions::{cycle_factor, CycleMode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("replacement {index} has {found} semiedges, expected {expected}")]
    SizeMismatch { index: usize, expected: usize, found: usize },
    #[error("replacement {index} removes {removed} vertices, expected 4")]
    VertexCount { index: usize, removed: isize },
    #[error("expected {expected} multipliers, got {found}")]
    MultiplierCount { expected: usize, found: usize },
    #[error("multiplier {0} is negative")]
    NegativeMultiplier(usize),
    #[error("claimed value {claimed} differs from the multiplier sum {sum}")]
    ClaimMismatch { claimed: String, sum: String },
    #[error("dual infeasible at coordinate {index} ({boundary}): {lhs} > {rhs}")]
    Infeasible { index: usize, boundary: String, lhs: String, rhs: String },
    #[error("program is infeasible")]
    PrimalInfeasible,
    #[error("unsupported cycle length {0}")]
    UnsupportedCycle(usize),
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionLP {
    pub boundaries: Vec<Boundary>,
    /// `o = M h(s)`.
    pub objective: Vec<BigRational>,
    /// One row `F_r M h(r)` per replacement, each with right-hand side 1.
    pub constraints: Vec<Vec<BigRational>>,
    /// `F_r = c^4`.
    pub c4: BigRational,
}

impl ReductionLP {
    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    pub fn to_json(&self) -> Value {
        let vec = |v: &[BigRational]| v.iter().map(rational::to_json).collect::<Vec<_>>();
        json!({
            "boundaries": self.boundaries.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "objective": vec(&self.objective),
            "constraints": self.constraints.iter().map(|r| vec(r)).collect::<Vec<_>>(),
            "c4": rational::to_json(&self.c4),
        })
    }
}

/// Feasible dual multipliers, one per constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCertificate {
    #[serde(with = "rational_vec")]
    pub multipliers: Vec<BigRational>,
    #[serde(with = "crate::rational::json")]
    pub claimed_value: BigRational,
}

mod rational_vec {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rational::to_json).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .iter()
            .map(|v| rational::from_json(v).ok_or_else(|| D::Error::custom(format!("bad rational {v}"))))
            .collect()
    }
}

impl DualCertificate {
    pub fn new(multipliers: Vec<BigRational>) -> Self {
        let claimed_value = multipliers.iter().fold(BigRational::zero(), |a, b| a + b);
        DualCertificate { multipliers, claimed_value }
    }
}

pub fn build_reduction_lp(s: &Multipole, replacements: &[Multipole], c4: &BigRational) -> Result<ReductionLP, LpError> {
    let k = s.size();
    for (index, r) in replacements.iter().enumerate() {
        if r.size() != k {
            return Err(LpError::SizeMismatch { index, expected: k, found: r.size() });
        }
        let removed = s.order() as isize - r.order() as isize;
        if removed != 4 {
            return Err(LpError::VertexCount { index, removed });
        }
    }
    let limits = CountLimits::default();
    let m = JoinMatrix::new(k)?;
    let boundaries = m.boundaries().to_vec();
    let hs = multiplicity_vector(s, &limits)?.dense(&boundaries);
    let objective = m.apply(&hs);
    let constraints = replacements
        .iter()
        .map(|r| {
            let hr = multiplicity_vector(r, &limits)?.dense(&boundaries);
            Ok(m.apply(&hr).into_iter().map(|x| x * c4).collect())
        })
        .collect::<Result<Vec<Vec<BigRational>>, LpError>>()?;
    Ok(ReductionLP { boundaries, objective, constraints, c4: c4.clone() })
}

/// Checks `Σ_r y_r · row_r <= o` and returns `Σ_r y_r`, a lower bound on the
/// optimum.
pub fn verify_dual(lp: &ReductionLP, cert: &DualCertificate) -> Result<BigRational, LpError> {
    let y = &cert.multipliers;
    if y.len() != lp.constraints.len() {
        return Err(LpError::MultiplierCount { expected: lp.constraints.len(), found: y.len() });
    }
    if let Some(i) = y.iter().position(Signed::is_negative) {
        return Err(LpError::NegativeMultiplier(i));
    }
    let sum = y.iter().fold(BigRational::zero(), |a, b| a + b);
    if sum != cert.claimed_value {
        return Err(LpError::ClaimMismatch {
            claimed: rational::to_text(&cert.claimed_value),
            sum: rational::to_text(&sum),
        });
    }
    for (j, o) in lp.objective.iter().enumerate() {
        let lhs = y
            .iter()
            .zip(&lp.constraints)
            .fold(BigRational::zero(), |acc, (yr, row)| acc + yr * &row[j]);
        if &lhs > o {
            return Err(LpError::Infeasible {
                index: j,
                boundary: lp.boundaries[j].to_string(),
                lhs: rational::to_text(&lhs),
                rhs: rational::to_text(o),
            });
        }
    }
    Ok(sum)
}

/// Checks `m >= 0` and every constraint; returns `o·m`, an upper bound on
/// the optimum, or `None` if `m` is infeasible.
pub fn verify_primal(lp: &ReductionLP, m: &[BigRational]) -> Option<BigRational> {
    if m.len() != lp.variables() || m.iter().any(Signed::is_negative) {
        return None;
    }
    let dot = |row: &[BigRational]| row.iter().zip(m).fold(BigRational::zero(), |a, (x, y)| a + x * y);
    lp.constraints
        .iter()
        .all(|row| dot(row) >= BigRational::one())
        .then(|| dot(&lp.objective))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub optimum: BigRational,
    pub dual: DualCertificate,
    /// An optimal `m`.
    pub primal: Vec<BigRational>,
}

/// Solves the dual `max Σ y, Σ y_r row_r <= o, y >= 0` exactly.
pub fn solve_exact(lp: &ReductionLP) -> Result<LpSolution, LpError> {
    let rows = lp.variables();
    let a: Vec<Vec<BigRational>> = (0..rows)
        .map(|j| lp.constraints.iter().map(|row| row[j].clone()).collect())
        .collect();
    let c = vec![BigRational::one(); lp.constraints.len()];
    match simplex::maximize(&a, &lp.objective, &c) {
        simplex::Outcome::Unbounded => Err(LpError::PrimalInfeasible),
        simplex::Outcome::Optimal(o) => Ok(LpSolution {
            optimum: o.value,
            dual: DualCertificate::new(o.primal),
            primal: o.dual,
        }),
    }
}

/// Replacement 4-poles for a 4-cycle: two isolated edges in each of the two
/// non-crossing pairings.
pub fn four_cycle_replacements() -> Vec<Multipole> {
    [[0, 1, 2, 3], [1, 2, 3, 0]]
        .iter()
        .map(|p| {
            Multipole::new(0, 4, &[(End::Semi(p[0]), End::Semi(p[1])), (End::Semi(p[2]), End::Semi(p[3]))])
                .expect("valid 4-pole")
        })
        .collect()
}

/// Replacement 5-poles for a 5-cycle: an isolated edge and a vertex. The
/// first five keep the cyclic order; [`CycleMode::All`] adds the five with
/// the edge on slots `i, i+2`.
pub fn five_cycle_replacements(mode: CycleMode) -> Vec<Multipole> {
    let mut patterns: Vec<[usize; 5]> = (0..5).map(|i| [i, i + 1, i + 2, i + 3, i + 4]).collect();
    if mode == CycleMode::All {
        patterns.extend((0..5).map(|i| [i, i + 2, i + 1, i + 3, i + 4]));
    }
    patterns
        .into_iter()
        .map(|p| {
            let [a, b, c, d, e] = p.map(|i| End::Semi(i % 5));
            let v = End::Vertex(0);
            Multipole::new(1, 5, &[(a, b), (v, c), (v, d), (v, e)]).expect("valid 5-pole")
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremLp {
    pub cycle_len: usize,
    pub mode: CycleMode,
    pub lp: ReductionLP,
    pub solution: LpSolution,
    /// Bound returned by [`verify_dual`] on the solver's own certificate.
    pub verified: BigRational,
}

impl TheoremLp {
    /// Whether the verified bound reaches 1, certifying the factor `c^4`.
    pub fn certified(&self) -> bool {
        self.verified >= BigRational::one() && self.verified == self.solution.optimum
    }
}

pub fn check_theorem_lp(cycle_len: usize, mode: CycleMode) -> Result<TheoremLp, LpError> {
    let c4 = cycle_factor(cycle_len, mode).ok_or(LpError::UnsupportedCycle(cycle_len))?;
    let s = cycle_pole(cycle_len)?;
    let rs = if cycle_len == 4 { four_cycle_replacements() } else { five_cycle_replacements(mode) };
    let lp = build_reduction_lp(&s, &rs, &c4)?;
    let solution = solve_exact(&lp)?;
    let verified = verify_dual(&lp, &solution.dual)?;
    Ok(TheoremLp { cycle_len, mode, lp, solution, verified })
}

/// Rational from a small fraction.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
