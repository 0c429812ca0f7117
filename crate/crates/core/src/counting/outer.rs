use std::collections::HashSet;

use super::assignment::count_with_fixed;
use super::strands::StrandModel;
use super::{CountError, CountLimits, CountResult, Engine};
use crate::embedding::Face;
use crate::graph::{EdgeId, Multipole};

/// Crossing choices forced on the edges of `outer` when its boundary walk
/// must be one of the circuits. The walk leaves each vertex through the
/// listed darts; at every vertex it uses the corner between the arriving dart
/// and the next leaving dart.
pub fn outer_face_choices(g: &Multipole, outer: &Face) -> Result<Vec<(EdgeId, bool)>, CountError> {
    let darts = outer.darts();
    let len = darts.len();
    if len < 2 {
        return Err(CountError::OuterNotCircuit(format!("face of length {len}")));
    }
    let mut edges = HashSet::new();
    let mut vertices = HashSet::new();
    for &d in darts {
        let v = g
            .vertex_of(d)
            .ok_or_else(|| CountError::OuterNotCircuit(format!("dart {d} is a semiedge")))?;
        if !edges.insert(d / 2) {
            return Err(CountError::OuterNotCircuit(format!("edge {} repeats", d / 2)));
        }
        if !vertices.insert(v) {
            return Err(CountError::OuterNotCircuit(format!("vertex {v} repeats")));
        }
    }
    let model = StrandModel::new(g);
    // half-corner used at the tail of darts[i]
    let half_at = |arrive: usize, leave: usize, at: usize| -> Result<usize, CountError> {
        let v = g.vertex_of(leave).unwrap();
        if g.vertex_of(arrive) != Some(v) || arrive == leave {
            return Err(CountError::OuterNotCircuit("face walk is not contiguous".into()));
        }
        let ds = g.darts_at(v);
        let j = (0..3)
            .find(|&j| {
                let (x, y) = (ds[j], ds[(j + 1) % 3]);
                (x == arrive && y == leave) || (x == leave && y == arrive)
            })
            .expect("two darts of a cubic vertex form a corner");
        Ok(2 * (3 * v + j) + usize::from(ds[j] != at))
    };
    let mut fixed = Vec::with_capacity(len);
    for i in 0..len {
        let d = darts[i];
        let prev = darts[(i + len - 1) % len];
        let next = darts[(i + 1) % len];
        let tail = half_at(prev ^ 1, d, d)?;
        let head = half_at(d ^ 1, next, d ^ 1)?;
        let c = (0..2)
            .find(|&c| model.partner[tail][c] == head)
            .expect("the two half-corners at an edge can always be joined");
        fixed.push((d / 2, c == 1));
    }
    Ok(fixed)
}

/// Number of covers containing the boundary circuit of `outer`.
pub fn count_outer_fixed(g: &Multipole, outer: &Face, limits: &CountLimits) -> Result<CountResult, CountError> {
    let start = std::time::Instant::now();
    let fixed = outer_face_choices(g, outer)?;
    let value = count_with_fixed(g, &fixed, limits)?;
    Ok(CountResult { value, engine: Engine::Assignment, elapsed: start.elapsed() })
}
