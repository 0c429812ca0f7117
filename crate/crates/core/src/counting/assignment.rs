use num_bigint::BigUint;
use rayon::prelude::*;

use super::strands::{StrandModel, Tracer};
use super::{CountError, CountLimits};
use crate::graph::Multipole;

/// Low bits enumerated inside one parallel block.
const BLOCK_BITS: usize = 16;

/// Counts crossing assignments whose strands are all valid. Isolated edges
/// are not normalised away: each contributes its single forced configuration.
pub(crate) fn count_valid_assignments(g: &Multipole, limits: &CountLimits) -> Result<BigUint, CountError> {
    count_with_fixed(g, &[], limits)
}

/// As [`count_valid_assignments`], with some links forced: `fixed` lists
/// `(link edge, crossed)` pairs and only the other links are enumerated.
pub(crate) fn count_with_fixed(
    g: &Multipole,
    fixed: &[(usize, bool)],
    limits: &CountLimits,
) -> Result<BigUint, CountError> {
    let model = StrandModel::new(g);
    let mut base = vec![false; model.links.len()];
    let mut is_fixed = vec![false; model.links.len()];
    for &(e, c) in fixed {
        let i = model.link_index[e];
        base[i] = c;
        is_fixed[i] = true;
    }
    let free: Vec<usize> = (0..base.len()).filter(|&i| !is_fixed[i]).collect();
    let m = free.len();
    if m > limits.max_assignment_bits {
        return Err(CountError::ResourceLimit(format!(
            "{m} links exceed the assignment engine limit of {} bits",
            limits.max_assignment_bits
        )));
    }
    let low = m.min(BLOCK_BITS);
    let high = m - low;
    let count_block = |prefix: u64| -> u64 {
        let mut choices = base.clone();
        for (i, &l) in free.iter().enumerate().skip(low) {
            choices[l] = (prefix >> (i - low)) & 1 == 1;
        }
        let mut tracer = Tracer::new(&model, g.order());
        let mut count = 0u64;
        // Gray-code walk over the low bits: step t flips bit trailing_zeros(t).
        let steps = 1u64 << low;
        for t in 0..steps {
            if t > 0 {
                let l = free[t.trailing_zeros() as usize];
                choices[l] = !choices[l];
            }
            if tracer.is_valid(g, &model, &choices) {
                count += 1;
            }
        }
        count
    };
    let blocks = 1u64 << high;
    let total: BigUint = if limits.parallel && blocks > 1 {
        (0..blocks)
            .into_par_iter()
            .map(|p| BigUint::from(count_block(p)))
            .reduce(BigUint::default, |a, b| a + b)
    } else {
        (0..blocks).map(|p| BigUint::from(count_block(p))).sum()
    };
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn small_counts() {
        let limits = CountLimits::default();
        assert_eq!(count_valid_assignments(&theta(), &limits).unwrap(), 1u32.into());
        assert_eq!(count_valid_assignments(&k4(), &limits).unwrap(), 2u32.into());
        assert_eq!(count_valid_assignments(&petersen(), &limits).unwrap(), 52u32.into());
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = klee(14).unwrap();
        let seq = CountLimits { parallel: false, ..CountLimits::default() };
        let par = CountLimits { parallel: true, ..CountLimits::default() };
        assert_eq!(count_valid_assignments(&g, &seq).unwrap(), count_valid_assignments(&g, &par).unwrap());
    }

    #[test]
    fn limit_is_enforced() {
        let limits = CountLimits { max_assignment_bits: 10, ..CountLimits::default() };
        assert!(matches!(count_valid_assignments(&petersen(), &limits), Err(CountError::ResourceLimit(_))));
    }
}
