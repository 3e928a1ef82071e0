//! Cost-refined term orders on `N^n`.
//!
//! A [`TermOrder`] compares points first by a rational cost vector and breaks
//! ties with graded reverse lexicographic order.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::int::{denominator_lcm, Int, Rat};
use crate::lattice::{sub_points, Lattice, LatticeVector};
use crate::lp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    cost: Vec<Rat>,
    // cost scaled to integers by a positive factor
    weights: Vec<Int>,
    has_cost: bool,
}

impl TermOrder {
    /// Plain graded reverse lexicographic order.
    pub fn degrevlex(dim: usize) -> TermOrder {
        TermOrder::with_cost(vec![Rat::zero(); dim])
    }

    pub fn with_cost(cost: Vec<Rat>) -> TermOrder {
        let scale = denominator_lcm(&cost).to_rat();
        let weights: Vec<Int> = cost
            .iter()
            .map(|c| Int::from_rat(&(c * &scale)).unwrap())
            .collect();
        let has_cost = weights.iter().any(|w| !w.is_zero());
        TermOrder {
            cost,
            weights,
            has_cost,
        }
    }

    pub fn with_integer_cost(cost: &[Int]) -> TermOrder {
        TermOrder::with_cost(cost.iter().map(Int::to_rat).collect())
    }

    /// The order whose cost is the negated unit vector on coordinate `i`;
    /// points with a larger `i`-th entry are smaller.
    pub fn negated_unit(dim: usize, i: usize) -> TermOrder {
        let mut c = vec![Rat::zero(); dim];
        c[i] = -Rat::from_integer(1.into());
        TermOrder::with_cost(c)
    }

    pub fn dim(&self) -> usize {
        self.cost.len()
    }

    pub fn cost(&self) -> &[Rat] {
        &self.cost
    }

    /// How `x` compares to `y` when `u = x - y`.
    pub fn direction(&self, u: &[Int]) -> Ordering {
        if self.has_cost {
            let mut c = Int::ZERO;
            for (w, e) in self.weights.iter().zip(u) {
                if !w.is_zero() && !e.is_zero() {
                    c += &(w * e);
                }
            }
            match c.signum() {
                1 => return Ordering::Greater,
                -1 => return Ordering::Less,
                _ => {}
            }
        }
        let deg: Int = u.iter().sum();
        match deg.signum() {
            1 => return Ordering::Greater,
            -1 => return Ordering::Less,
            _ => {}
        }
        match u.iter().rev().find(|e| !e.is_zero()) {
            Some(e) if e.is_negative() => Ordering::Greater,
            Some(_) => Ordering::Less,
            None => Ordering::Equal,
        }
    }

    pub fn compare(&self, x: &[Int], y: &[Int]) -> Result<Ordering> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(Error::Dimension {
                    expected: self.dim(),
                    found: v.len(),
                });
            }
        }
        Ok(self.direction(&sub_points(x, y)))
    }

    /// `u` or `-u`, whichever has the larger positive part.
    pub fn orient(&self, u: &LatticeVector) -> Result<LatticeVector> {
        match self.direction(u.entries()) {
            Ordering::Greater => Ok(u.clone()),
            Ordering::Less => Ok(u.negated()),
            Ordering::Equal => Err(Error::ZeroVector),
        }
    }

    /// Whether the order is additive and well-founded on every fiber of `l`.
    ///
    /// Nonnegative costs always qualify. Otherwise the cost must be bounded
    /// below on the recession cone of the fibers, i.e. no nonnegative vector
    /// of the span may have negative cost.
    pub fn is_term_order_for(&self, l: &Lattice) -> bool {
        if self.cost.iter().all(|c| !c.is_negative()) {
            return true;
        }
        if l.rank() == 0 {
            return true;
        }
        let neg: Vec<Rat> = self.cost.iter().map(|c| -c).collect();
        lp::maximize_in_unit_box(l.basis(), &neg).value.is_zero()
    }
}

/// A strictly positive weight vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    weights: Vec<Rat>,
}

impl Grading {
    pub fn new(weights: Vec<Rat>) -> Option<Grading> {
        if weights.iter().all(|w| w.is_positive()) {
            Some(Grading { weights })
        } else {
            None
        }
    }

    pub fn all_ones(dim: usize) -> Grading {
        Grading {
            weights: vec![Rat::from_integer(1.into()); dim],
        }
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn degree(&self, x: &[Int]) -> Rat {
        crate::linalg::dot_rat(&self.weights, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use proptest::prelude::*;

    fn pt(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn r(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    #[test]
    fn compare_examples() {
        let o = TermOrder::with_cost(vec![r(1), r(1)]);
        assert_eq!(o.compare(&pt(&[2, 0]), &pt(&[0, 1])).unwrap(), Ordering::Greater);
        let d = TermOrder::degrevlex(2);
        assert_eq!(d.compare(&pt(&[1, 0]), &pt(&[0, 1])).unwrap(), Ordering::Greater);
        assert_eq!(d.compare(&pt(&[3, 3]), &pt(&[3, 3])).unwrap(), Ordering::Equal);
        assert!(d.compare(&pt(&[1]), &pt(&[0, 1])).is_err());
    }

    #[test]
    fn orient_examples() {
        let o = TermOrder::negated_unit(2, 0);
        let u = LatticeVector::from_i64(&[1, -1]);
        assert_eq!(o.orient(&u).unwrap(), LatticeVector::from_i64(&[-1, 1]));
        let o = TermOrder::with_cost(vec![r(1), r(1), r(0)]);
        let u = LatticeVector::from_i64(&[1, 1, -2]);
        assert_eq!(o.orient(&u).unwrap(), u);
        assert_eq!(o.orient(&LatticeVector::from_i64(&[0, 0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn term_order_validity() {
        let diag = Lattice::from_basis(IntMatrix::from_i64(2, &[&[1, 1]])).unwrap();
        assert!(!TermOrder::negated_unit(2, 0).is_term_order_for(&diag));
        assert!(TermOrder::degrevlex(2).is_term_order_for(&diag));
        // projection of the running example onto coordinates 1, 2, 5
        let proj = Lattice::from_basis(IntMatrix::from_i64(3, &[&[1, -1, -1], &[1, 0, -2]])).unwrap();
        let o = TermOrder::with_cost(vec![r(-2), r(-3), r(0)]);
        assert!(o.is_term_order_for(&proj));
    }

    #[test]
    fn rational_costs_scale() {
        let half = Rat::new(1.into(), 2.into());
        let third = Rat::new(1.into(), 3.into());
        let o = TermOrder::with_cost(vec![half, -third]);
        assert_eq!(o.compare(&pt(&[2, 0]), &pt(&[0, 3])).unwrap(), Ordering::Greater);
        // 1/2 * 2 - 1/3 * 3 = 0, tie broken by degree
        assert_eq!(o.compare(&pt(&[0, 0]), &pt(&[2, 3])).unwrap(), Ordering::Less);
    }

    fn point(n: usize) -> impl Strategy<Value = Vec<Int>> {
        proptest::collection::vec(0i64..6, n).prop_map(|v| pt(&v))
    }

    fn cost(n: usize) -> impl Strategy<Value = TermOrder> {
        proptest::collection::vec(-3i64..=3, n)
            .prop_map(|v| TermOrder::with_cost(v.into_iter().map(r).collect()))
    }

    proptest! {
        #[test]
        fn additive(o in cost(4), x in point(4), y in point(4), g in point(4)) {
            let xg: Vec<Int> = x.iter().zip(&g).map(|(a, b)| a + b).collect();
            let yg: Vec<Int> = y.iter().zip(&g).map(|(a, b)| a + b).collect();
            prop_assert_eq!(o.compare(&x, &y).unwrap(), o.compare(&xg, &yg).unwrap());
        }

        #[test]
        fn total(o in cost(4), x in point(4), y in point(4)) {
            let c = o.compare(&x, &y).unwrap();
            prop_assert_eq!(c == Ordering::Equal, x == y);
            prop_assert_eq!(o.compare(&y, &x).unwrap(), c.reverse());
        }

        #[test]
        fn orient_is_idempotent(o in cost(5), v in proptest::collection::vec(-4i64..=4, 5)) {
            let u = LatticeVector::from_i64(&v);
            prop_assume!(!u.is_zero());
            let a = o.orient(&u).unwrap();
            prop_assert_eq!(o.orient(&a).unwrap(), a.clone());
            prop_assert_eq!(o.compare(&a.positive_part(), &a.negative_part()).unwrap(), Ordering::Greater);
        }
    }
}
