//! Exact simplex over the rationals for the small LPs used in pointedness tests.

use num_traits::{Signed, Zero};

use crate::int::{Int, Rat};
use crate::linalg::IntMatrix;

/// Optimum of `max c.x` over `{x = B^T lambda, 0 <= x <= 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanOptimum {
    pub value: Rat,
    pub x: Vec<Rat>,
    /// Coefficients of `x` with respect to the rows of `B`.
    pub lambda: Vec<Rat>,
}

/// Maximizes `objective . x` over points of the rational row span of `basis`
/// lying in the unit box. Uses Bland's rule, so it always terminates.
pub fn maximize_in_unit_box(basis: &IntMatrix, objective: &[Rat]) -> SpanOptimum {
    let r = basis.nrows();
    let n = basis.ncols();
    assert_eq!(objective.len(), n, "objective dimension mismatch");
    // variables: lambda+ (r), lambda- (r), slacks (2n)
    let nv = 2 * r + 2 * n;
    let m = 2 * n;
    let mut tab: Vec<Vec<Rat>> = vec![vec![Rat::zero(); nv]; m];
    let mut rhs: Vec<Rat> = vec![Rat::zero(); m];
    for j in 0..n {
        for k in 0..r {
            let b = basis.get(k, j).to_rat();
            if b.is_zero() {
                continue;
            }
            // -x_j <= 0
            tab[j][k] = -b.clone();
            tab[j][r + k] = b.clone();
            // x_j <= 1
            tab[n + j][k] = b.clone();
            tab[n + j][r + k] = -b;
        }
        tab[j][2 * r + j] = Rat::from_integer(1.into());
        tab[n + j][2 * r + n + j] = Rat::from_integer(1.into());
        rhs[n + j] = Rat::from_integer(1.into());
    }
    let mut reduced = vec![Rat::zero(); nv];
    for k in 0..r {
        let mut c = Rat::zero();
        for j in 0..n {
            c += &objective[j] * basis.get(k, j).to_rat();
        }
        reduced[r + k] = -c.clone();
        reduced[k] = c;
    }
    let mut value = Rat::zero();
    let mut basic: Vec<usize> = (2 * r..nv).collect();

    while let Some(e) = (0..nv).find(|&j| reduced[j].is_positive()) {
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if !tab[i][e].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &tab[i][e];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basic[i] < basic[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let (p, _) = leave.expect("box-constrained LP cannot be unbounded");
        let a = tab[p][e].clone();
        for v in tab[p].iter_mut() {
            *v = &*v / &a;
        }
        rhs[p] = &rhs[p] / &a;
        let prow = tab[p].clone();
        let prhs = rhs[p].clone();
        for i in 0..m {
            if i == p || tab[i][e].is_zero() {
                continue;
            }
            let f = tab[i][e].clone();
            for (v, q) in tab[i].iter_mut().zip(&prow) {
                if !q.is_zero() {
                    *v = &*v - &(&f * q);
                }
            }
            rhs[i] = &rhs[i] - &(&f * &prhs);
        }
        let f = reduced[e].clone();
        for (v, q) in reduced.iter_mut().zip(&prow) {
            if !q.is_zero() {
                *v = &*v - &(&f * q);
            }
        }
        value += &f * &prhs;
        basic[p] = e;
    }

    let mut lambda = vec![Rat::zero(); r];
    for (i, &b) in basic.iter().enumerate() {
        if b < r {
            lambda[b] += &rhs[i];
        } else if b < 2 * r {
            lambda[b - r] -= &rhs[i];
        }
    }
    let x = (0..n)
        .map(|j| {
            let mut s = Rat::zero();
            for k in 0..r {
                s += &lambda[k] * basis.get(k, j).to_rat();
            }
            s
        })
        .collect();
    SpanOptimum { value, x, lambda }
}

/// Scales rational lattice coefficients to the smallest positive integer
/// multiple and returns the resulting integer combination of the rows.
pub fn integral_combination(basis: &IntMatrix, lambda: &[Rat]) -> Vec<Int> {
    let scale = crate::int::denominator_lcm(lambda).to_rat();
    let coefs: Vec<Int> = lambda
        .iter()
        .map(|l| Int::from_rat(&(l * &scale)).unwrap())
        .collect();
    (0..basis.ncols())
        .map(|j| {
            let mut s = Int::ZERO;
            for (k, c) in coefs.iter().enumerate() {
                s += &(c * basis.get(k, j));
            }
            s
        })
        .collect()
}
