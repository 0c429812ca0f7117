//! Exact dictionary simplex with Bland's rule for `max c·x, A x <= b, x >= 0`
//! with `b >= 0`, so the slack basis is feasible from the start.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub(crate) struct Optimum {
    pub value: BigRational,
    /// Optimal `x`.
    pub primal: Vec<BigRational>,
    /// Optimal multipliers of the rows, i.e. a solution of the dual
    /// `min b·y, Aᵀ y >= c, y >= 0`.
    pub dual: Vec<BigRational>,
}

pub(crate) enum Outcome {
    Optimal(Optimum),
    Unbounded,
}

/// `a` is row-major with `b.len()` rows and `c.len()` columns.
pub(crate) fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> Outcome {
    let (rows, cols) = (b.len(), c.len());
    assert!(b.iter().all(|x| !x.is_negative()), "slack basis must be feasible");
    // variables 0..cols are x, cols..cols+rows the slacks
    let mut basic: Vec<usize> = (cols..cols + rows).collect();
    let mut nonbasic: Vec<usize> = (0..cols).collect();
    let mut tab: Vec<Vec<BigRational>> = a.to_vec();
    let mut rhs: Vec<BigRational> = b.to_vec();
    let mut obj: Vec<BigRational> = c.to_vec();
    let mut value = BigRational::zero();
    loop {
        let entering = (0..cols)
            .filter(|&t| obj[t].is_positive())
            .min_by_key(|&t| nonbasic[t]);
        let Some(e) = entering else { break };
        let leaving = (0..rows)
            .filter(|&i| tab[i][e].is_positive())
            .map(|i| (&rhs[i] / &tab[i][e], basic[i], i))
            .min_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
        let Some((_, _, l)) = leaving else {
            return Outcome::Unbounded;
        };
        let pivot = tab[l][e].clone();
        for t in 0..cols {
            if t != e {
                tab[l][t] = &tab[l][t] / &pivot;
            }
        }
        tab[l][e] = pivot.recip();
        rhs[l] = &rhs[l] / &pivot;
        for i in 0..rows {
            if i == l || tab[i][e].is_zero() {
                continue;
            }
            let f = tab[i][e].clone();
            for t in 0..cols {
                tab[i][t] = if t == e { -(&f * &tab[l][e]) } else { &tab[i][t] - &f * &tab[l][t] };
            }
            rhs[i] = &rhs[i] - &f * &rhs[l];
        }
        let f = obj[e].clone();
        for t in 0..cols {
            obj[t] = if t == e { -(&f * &tab[l][e]) } else { &obj[t] - &f * &tab[l][t] };
        }
        value += &f * &rhs[l];
        std::mem::swap(&mut basic[l], &mut nonbasic[e]);
    }
    let mut primal = vec![BigRational::zero(); cols];
    for (i, &v) in basic.iter().enumerate() {
        if v < cols {
            primal[v] = rhs[i].clone();
        }
    }
    let mut dual = vec![BigRational::zero(); rows];
    for (t, &v) in nonbasic.iter().enumerate() {
        if v >= cols {
            dual[v - cols] = -obj[t].clone();
        }
    }
    Outcome::Optimal(Optimum { value, primal, dual })
}
