//! Exact counting and certification toolkit for circuit double covers (CiDCs)
//! of cubic multigraphs.
//!
//! The crate is organised around a dart-based [`Multipole`] type. On top of it:
//!
//! - [`counting`] counts CiDCs with three independent engines (crossing
//!   assignments, circuit backtracking, and a frontier dynamic program).
//! - [`boundary`] implements the linear representation of CiDCs on ordered
//!   multipoles: canonical boundaries, multiplicity vectors and join counts.
//! - [`reductions`] holds the cut/triangle/cycle reductions and the
//!   machine-checkable certificates for the planar lower bound.
//! - [`lp`] builds the cycle-reduction linear programs and certifies them with
//!   exact rational simplex and dual certificates.
//! - [`embedding`] traces faces of rotation systems and checks flowers.
//! - [`scan`] runs catalog scans with deterministic output order.

pub mod boundary;
pub mod catalog;
pub mod counting;
pub mod embedding;
pub mod graph;
pub mod lp;
pub mod rational;
pub mod reductions;
pub mod scan;

pub use boundary::{Boundary, JoinMatrix, MultiplicityVector};
pub use counting::{CountLimits, CountResult, Engine};
pub use graph::{Dart, EdgeCut, EdgeId, EdgeKind, End, GraphError, Multipole};
