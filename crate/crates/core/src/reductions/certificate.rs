//! Reduction trees proving lower bounds on ν, and their replay.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{find_cycle, has_cycle, is_induced_cycle, replace_4cycle, replace_5cycle, CycleMode, ReductionError};
use crate::graph::io::{parse_multipole, write_multipole};
use crate::graph::{contract_cut_side, find_small_cuts, EdgeCut, EdgeId, Multipole, Shore};
use crate::rational::{self, meets_planar_target};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    Cut2,
    Cut3,
    Triangle,
    Cycle4,
    Cycle5,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Cut2 => "cut2",
            StepKind::Cut3 => "cut3",
            StepKind::Triangle => "triangle",
            StepKind::Cycle4 => "cycle4",
            StepKind::Cycle5 => "cycle5",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [StepKind::Cut2, StepKind::Cut3, StepKind::Triangle, StepKind::Cycle4, StepKind::Cycle5]
            .into_iter()
            .find(|k| k.name() == s)
    }

    /// Factor and combine rule; a 5-cycle step's mode is read off its child count.
    fn rule(self, children: usize) -> Option<(BigRational, Combine, usize)> {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        Some(match (self, children) {
            (StepKind::Cut2, _) => (r(2, 1), Combine::Product, 2),
            (StepKind::Cut3, _) => (r(1, 1), Combine::Product, 2),
            (StepKind::Triangle, _) => (r(2, 1), Combine::Product, 1),
            (StepKind::Cycle4, _) => (r(4, 1), Combine::Minimum, 2),
            (StepKind::Cycle5, 10) => (r(15, 4), Combine::Minimum, 10),
            (StepKind::Cycle5, _) => (r(5, 2), Combine::Minimum, 5),
        })
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Combine {
    Product,
    Minimum,
}

impl Combine {
    pub fn name(self) -> &'static str {
        match self {
            Combine::Product => "product",
            Combine::Minimum => "minimum",
        }
    }

    fn apply(self, factor: &BigRational, bounds: &[BigRational]) -> BigRational {
        let inner = match self {
            Combine::Product => bounds.iter().fold(BigRational::one(), |acc, b| acc * b),
            Combine::Minimum => bounds.iter().min().cloned().unwrap_or_else(BigRational::one),
        };
        factor * inner
    }
}

/// Base graphs where reduction stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseGraph {
    Theta,
    K4,
}

impl BaseGraph {
    pub fn name(self) -> &'static str {
        match self {
            BaseGraph::Theta => "theta",
            BaseGraph::K4 => "K4",
        }
    }

    pub fn nu(self) -> u64 {
        match self {
            BaseGraph::Theta => 1,
            BaseGraph::K4 => 2,
        }
    }

    fn matches(self, g: &Multipole) -> bool {
        if !g.is_graph() {
            return false;
        }
        match self {
            BaseGraph::Theta => g.order() == 2 && g.multiplicity(0, 1) == 3,
            BaseGraph::K4 => {
                g.order() == 4 && (0..4).all(|u| (0..4).all(|v| u == v || g.multiplicity(u, v) == 1))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub kind: StepKind,
    /// Cut edges, or cycle edges in cycle order, as vertex pairs.
    pub witness: Vec<(usize, usize)>,
    pub factor: BigRational,
    pub combine: Combine,
    pub children: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Leaf { base: BaseGraph, nu: u64 },
    Step(ReductionStep),
}

/// A lower bound on ν(graph) together with the reduction tree proving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub graph: Multipole,
    pub bound: BigRational,
    pub node: Node,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Contract triangles with a factor-2 step instead of the 3-cut step.
    pub triangle_steps: bool,
}

/// Builds a certificate for a bridgeless cubic graph assumed planar.
pub fn certify_planar_bound(g: &Multipole) -> Result<Certificate, ReductionError> {
    certify_with(g, CertifyOptions::default())
}

fn check_input(g: &Multipole) -> Result<(), ReductionError> {
    if !g.is_graph() {
        return Err(crate::graph::GraphError::NotAGraph(g.size()).into());
    }
    if !g.is_connected() {
        return Err(crate::graph::GraphError::Disconnected.into());
    }
    if g.has_bridge() {
        return Err(ReductionError::Precondition("graph has a bridge".into()));
    }
    Ok(())
}

fn cut_witness(g: &Multipole, edges: &[EdgeId]) -> Vec<(usize, usize)> {
    edges.iter().map(|&e| g.link_endpoints(e).expect("link")).collect()
}

fn cycle_witness(cyc: &[usize]) -> Vec<(usize, usize)> {
    (0..cyc.len()).map(|i| (cyc[i], cyc[(i + 1) % cyc.len()])).collect()
}

pub fn certify_with(g: &Multipole, opts: CertifyOptions) -> Result<Certificate, ReductionError> {
    check_input(g)?;
    if g.order() == 2 {
        return Ok(leaf(g, BaseGraph::Theta));
    }
    let cut = find_small_cuts(g)?;
    if cut.is_none() && BaseGraph::K4.matches(g) {
        return Ok(leaf(g, BaseGraph::K4));
    }
    let (kind, witness, children) = match cut {
        Some(cut) if cut.size() == 2 => {
            let children = cut_children(g, &cut)?;
            (StepKind::Cut2, cut_witness(g, &cut.edges), children)
        }
        Some(cut) if opts.triangle_steps && find_cycle(g, 3).is_some() => {
            debug_assert_eq!(cut.size(), 3);
            let tri = find_cycle(g, 3).expect("checked");
            (StepKind::Triangle, cycle_witness(&tri), vec![contract_triangle(g, &tri)?])
        }
        Some(cut) if cut.size() == 3 => {
            let children = cut_children(g, &cut)?;
            (StepKind::Cut3, cut_witness(g, &cut.edges), children)
        }
        Some(cut) => return Err(ReductionError::Precondition(format!("unexpected cut {:?}", cut.edges))),
        None => {
            if let Some(c) = find_cycle(g, 4) {
                (StepKind::Cycle4, cycle_witness(&c), replace_4cycle(g, &c)?.to_vec())
            } else if let Some(c) = find_cycle(g, 5) {
                (StepKind::Cycle5, cycle_witness(&c), replace_5cycle(g, &c, CycleMode::Planar)?)
            } else {
                return Err(ReductionError::NoShortCycle(g.order()));
            }
        }
    };
    let children: Vec<Certificate> = children
        .par_iter()
        .map(|h| certify_with(h, opts))
        .collect::<Result<_, _>>()?;
    let (factor, combine, _) = kind.rule(children.len()).expect("known kind");
    let bounds: Vec<BigRational> = children.iter().map(|c| c.bound.clone()).collect();
    let bound = combine.apply(&factor, &bounds);
    Ok(Certificate {
        graph: g.clone(),
        bound,
        node: Node::Step(ReductionStep { kind, witness, factor, combine, children }),
    })
}

fn leaf(g: &Multipole, base: BaseGraph) -> Certificate {
    Certificate {
        graph: g.clone(),
        bound: BigRational::from_integer(BigInt::from(base.nu())),
        node: Node::Leaf { base, nu: base.nu() },
    }
}

/// Children of a cut step: first the shore kept, then the complement kept.
fn cut_children(g: &Multipole, cut: &EdgeCut) -> Result<Vec<Multipole>, ReductionError> {
    Ok(vec![contract_cut_side(g, cut, Shore::Complement)?, contract_cut_side(g, cut, Shore::Side)?])
}

fn contract_triangle(g: &Multipole, tri: &[usize]) -> Result<Multipole, ReductionError> {
    let mut side = tri.to_vec();
    side.sort_unstable();
    let edges: Vec<EdgeId> = g
        .links()
        .filter(|&e| {
            let (u, v) = g.link_endpoints(e).unwrap();
            side.contains(&u) != side.contains(&v)
        })
        .collect();
    Ok(contract_cut_side(g, &EdgeCut { edges, side }, Shore::Side)?)
}

/// Outcome of replaying a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid {
        bound: BigRational,
        /// Whether the bound reaches `(5/2)^(n/4 - 1/2)` for the root order.
        meets_target: bool,
    },
    /// `step` numbers nodes in preorder from 1.
    Invalid { step: usize, reason: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid { bound, meets_target } => write!(
                f,
                "VALID: bound {} (planar target {})",
                rational::to_text(bound),
                if *meets_target { "met" } else { "not met" }
            ),
            Verdict::Invalid { step, reason } => write!(f, "INVALID: step {step} {reason}"),
        }
    }
}

struct Fail(usize, String);

/// Replays every step: witnesses, preconditions, rewrites and arithmetic.
pub fn verify_certificate(cert: &Certificate) -> Verdict {
    let mut counter = 0;
    match replay(cert, &mut counter) {
        Ok(bound) => Verdict::Valid { meets_target: meets_planar_target(&bound, cert.graph.order()), bound },
        Err(Fail(step, reason)) => Verdict::Invalid { step, reason },
    }
}

fn resolve_edges(g: &Multipole, pairs: &[(usize, usize)]) -> Option<Vec<EdgeId>> {
    let mut used: Vec<EdgeId> = Vec::new();
    for &(u, v) in pairs {
        let e = g.links().find(|&e| {
            let (a, b) = g.link_endpoints(e).unwrap();
            ((a, b) == (u, v) || (a, b) == (v, u)) && !used.contains(&e)
        })?;
        used.push(e);
    }
    Some(used)
}

fn witness_cycle(pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let len = pairs.len();
    let cyc: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    (0..len).all(|i| pairs[i].1 == cyc[(i + 1) % len]).then_some(cyc)
}

/// The shore convention of the cut search: the smaller side, ties going to
/// the side of vertex 0.
fn cut_from_witness(g: &Multipole, edges: &[EdgeId]) -> Option<EdgeCut> {
    let (comp, count) = g.components_without(edges);
    if count != 2 {
        return None;
    }
    let a: Vec<usize> = (0..g.order()).filter(|&v| comp[v] == comp[0]).collect();
    let b: Vec<usize> = (0..g.order()).filter(|&v| comp[v] != comp[0]).collect();
    let side = if b.len() < a.len() { b } else { a };
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    Some(EdgeCut { edges, side })
}

fn expected_children(g: &Multipole, step: &ReductionStep) -> Result<Vec<Multipole>, String> {
    let edges = resolve_edges(g, &step.witness).ok_or("witness edge not in graph")?;
    match step.kind {
        StepKind::Cut2 | StepKind::Cut3 => {
            let k = if step.kind == StepKind::Cut2 { 2 } else { 3 };
            if edges.len() != k {
                return Err(format!("witness has {} edges, expected {k}", edges.len()));
            }
            let cut = cut_from_witness(g, &edges).ok_or("witness is not an edge cut")?;
            if k == 3 && (cut.side.len() < 2 || g.order() - cut.side.len() < 2) {
                return Err("3-cut is trivial".into());
            }
            cut_children(g, &cut).map_err(|e| e.to_string())
        }
        StepKind::Triangle => {
            let tri = witness_cycle(&step.witness).filter(|c| c.len() == 3).ok_or("witness is not a triangle")?;
            if !is_induced_cycle(g, &tri) {
                return Err("witness is not a triangle".into());
            }
            Ok(vec![contract_triangle(g, &tri).map_err(|e| e.to_string())?])
        }
        StepKind::Cycle4 | StepKind::Cycle5 => {
            let len = if step.kind == StepKind::Cycle4 { 4 } else { 5 };
            let cyc = witness_cycle(&step.witness).filter(|c| c.len() == len).ok_or("witness is not a cycle")?;
            if !is_induced_cycle(g, &cyc) {
                return Err("cycle is not induced".into());
            }
            if find_small_cuts(g).map_err(|e| e.to_string())?.is_some() {
                return Err("graph is not cyclically 4-edge-connected".into());
            }
            if len == 5 && has_cycle(g, 4) {
                return Err("graph has a 4-cycle".into());
            }
            let res = if len == 4 {
                replace_4cycle(g, &cyc).map(|c| c.to_vec())
            } else {
                let mode = if step.children.len() == 10 { CycleMode::All } else { CycleMode::Planar };
                replace_5cycle(g, &cyc, mode)
            };
            res.map_err(|e| e.to_string())
        }
    }
}

fn replay(cert: &Certificate, counter: &mut usize) -> Result<BigRational, Fail> {
    *counter += 1;
    let id = *counter;
    let fail = |reason: &str| Fail(id, reason.to_string());
    let g = &cert.graph;
    check_input(g).map_err(|e| fail(&e.to_string()))?;
    let bound = match &cert.node {
        Node::Leaf { base, nu } => {
            if !base.matches(g) {
                return Err(fail(&format!("leaf graph is not {}", base.name())));
            }
            if *nu != base.nu() {
                return Err(fail("leaf value mismatch"));
            }
            BigRational::from_integer(BigInt::from(*nu))
        }
        Node::Step(step) => {
            let (factor, combine, arity) = step.kind.rule(step.children.len()).expect("known kind");
            if step.factor != factor {
                return Err(fail("factor mismatch"));
            }
            if step.combine != combine {
                return Err(fail("combine mismatch"));
            }
            if step.children.len() != arity {
                return Err(fail(&format!("has {} children, expected {arity}", step.children.len())));
            }
            let expected = expected_children(g, step).map_err(|r| fail(&r))?;
            if let Some(j) = (0..arity).find(|&j| step.children[j].graph != expected[j]) {
                return Err(fail(&format!("child {} does not match the rewrite", j + 1)));
            }
            let mut bounds = Vec::with_capacity(arity);
            for c in &step.children {
                bounds.push(replay(c, counter)?);
            }
            combine.apply(&factor, &bounds)
        }
    };
    if bound != cert.bound {
        return Err(fail("bound mismatch"));
    }
    Ok(bound)
}

impl Certificate {
    /// Number of nodes in the tree.
    pub fn node_count(&self) -> usize {
        1 + match &self.node {
            Node::Leaf { .. } => 0,
            Node::Step(s) => s.children.iter().map(Certificate::node_count).sum(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "graph": write_multipole(&self.graph),
            "bound": rational::to_json(&self.bound),
        });
        match &self.node {
            Node::Leaf { base, nu } => {
                obj["leaf"] = json!(base.name());
                obj["nu"] = json!(nu);
            }
            Node::Step(s) => {
                obj["steps"] = json!([{
                    "kind": s.kind.name(),
                    "witness": s.witness.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
                    "factor": rational::to_json(&s.factor),
                    "combine": s.combine.name(),
                    "children": s.children.iter().map(Certificate::to_json).collect::<Vec<_>>(),
                }]);
            }
        }
        obj
    }

    pub fn from_json(v: &Value) -> Result<Self, ReductionError> {
        let bad = |m: &str| ReductionError::Format(m.to_string());
        let text = v.get("graph").and_then(Value::as_str).ok_or_else(|| bad("missing graph"))?;
        let graph = parse_multipole(text)?;
        let bound = v
            .get("bound")
            .and_then(rational::from_json)
            .ok_or_else(|| bad("missing or malformed bound"))?;
        let node = if let Some(name) = v.get("leaf") {
            let base = match name.as_str() {
                Some("theta") => BaseGraph::Theta,
                Some("K4") => BaseGraph::K4,
                _ => return Err(bad(&format!("unknown leaf {name}"))),
            };
            let nu = v.get("nu").and_then(Value::as_u64).ok_or_else(|| bad("leaf without nu"))?;
            Node::Leaf { base, nu }
        } else {
            let steps = v.get("steps").and_then(Value::as_array).ok_or_else(|| bad("node without steps or leaf"))?;
            let [s] = steps.as_slice() else {
                return Err(bad("expected exactly one step per node"));
            };
            let kind = s
                .get("kind")
                .and_then(Value::as_str)
                .and_then(StepKind::parse)
                .ok_or_else(|| bad("unknown step kind"))?;
            let witness = s
                .get("witness")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing witness"))?
                .iter()
                .map(|p| match p.as_array().map(Vec::as_slice) {
                    Some([a, b]) => Some((a.as_u64()? as usize, b.as_u64()? as usize)),
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad("malformed witness"))?;
            let factor = s.get("factor").and_then(rational::from_json).ok_or_else(|| bad("malformed factor"))?;
            let combine = match s.get("combine").and_then(Value::as_str) {
                Some("product") => Combine::Product,
                Some("minimum") => Combine::Minimum,
                _ => return Err(bad("unknown combine")),
            };
            let children = s
                .get("children")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing children"))?
                .iter()
                .map(Certificate::from_json)
                .collect::<Result<Vec<_>, _>>()?;
            Node::Step(ReductionStep { kind, witness, factor, combine, children })
        };
        Ok(Certificate { graph, bound, node })
    }
}
