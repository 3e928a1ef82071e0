//! Lattice vectors, point sets, lattices and coordinate projections.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use indexmap::IndexSet;

use crate::bitset::Support;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::linalg::{self, Hnf, IntMatrix};

/// A nonnegative integer point.
pub type Point = Vec<Int>;

/// An integer vector with its positive and negative supports cached.
#[derive(Clone)]
pub struct LatticeVector {
    entries: Vec<Int>,
    pos: Support,
    neg: Support,
}

impl LatticeVector {
    pub fn new(entries: Vec<Int>) -> LatticeVector {
        let n = entries.len();
        let mut pos = Support::empty(n);
        let mut neg = Support::empty(n);
        for (i, e) in entries.iter().enumerate() {
            match e.signum() {
                1 => pos.insert(i),
                -1 => neg.insert(i),
                _ => {}
            }
        }
        LatticeVector { entries, pos, neg }
    }

    pub fn from_i64(entries: &[i64]) -> LatticeVector {
        LatticeVector::new(entries.iter().map(|&v| Int::from(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Int> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn positive_part(&self) -> Point {
        self.entries
            .iter()
            .map(|e| if e.is_positive() { e.clone() } else { Int::ZERO })
            .collect()
    }

    pub fn negative_part(&self) -> Point {
        self.entries
            .iter()
            .map(|e| if e.is_negative() { -e } else { Int::ZERO })
            .collect()
    }

    pub fn positive_support(&self) -> &Support {
        &self.pos
    }

    pub fn negative_support(&self) -> &Support {
        &self.neg
    }

    pub fn support(&self) -> Support {
        self.pos.union(&self.neg)
    }

    pub fn negated(&self) -> LatticeVector {
        LatticeVector {
            entries: self.entries.iter().map(|e| -e).collect(),
            pos: self.neg.clone(),
            neg: self.pos.clone(),
        }
    }

    /// True when `u+ <= x` componentwise; `x_support` must be `supp(x)`.
    pub fn positive_part_le(&self, x: &[Int], x_support: &Support) -> bool {
        self.pos.is_subset(x_support) && self.pos.iter().all(|i| self.entries[i] <= x[i])
    }

    /// True when `u+ <= x` componentwise.
    pub fn positive_part_le_point(&self, x: &[Int]) -> bool {
        self.pos.iter().all(|i| self.entries[i] <= x[i])
    }

    pub fn sum(&self) -> Int {
        self.entries.iter().sum()
    }

    /// Returns the vector with the first nonzero entry made positive.
    pub fn sign_normalized(&self) -> LatticeVector {
        match self.entries.iter().find(|e| !e.is_zero()) {
            Some(e) if e.is_negative() => self.negated(),
            _ => self.clone(),
        }
    }
}

impl PartialEq for LatticeVector {
    fn eq(&self, other: &LatticeVector) -> bool {
        self.entries == other.entries
    }
}

impl Eq for LatticeVector {}

impl Hash for LatticeVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state)
    }
}

impl Ord for LatticeVector {
    fn cmp(&self, other: &LatticeVector) -> Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl PartialOrd for LatticeVector {
    fn partial_cmp(&self, other: &LatticeVector) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Support of a point.
pub fn point_support(x: &[Int]) -> Support {
    Support::from_indices(
        x.len(),
        x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i),
    )
}

fn check_dims(x: &[Int], y: &[Int]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(())
}

/// Componentwise minimum.
pub fn meet(x: &[Int], y: &[Int]) -> Result<Point> {
    check_dims(x, y)?;
    Ok(x.iter().zip(y).map(|(a, b)| a.min(b).clone()).collect())
}

/// Componentwise minimum on the coordinates in `sigma`, zero elsewhere.
pub fn meet_on(sigma: &Support, x: &[Int], y: &[Int]) -> Result<Point> {
    check_dims(x, y)?;
    Ok(x.iter()
        .zip(y)
        .enumerate()
        .map(|(i, (a, b))| {
            if sigma.contains(i) {
                a.min(b).clone()
            } else {
                Int::ZERO
            }
        })
        .collect())
}

/// `max(u+, v+)`, the peak of the critical path for the pair `(u, v)`.
pub fn critical_peak(u: &LatticeVector, v: &LatticeVector) -> Point {
    u.entries
        .iter()
        .zip(&v.entries)
        .map(|(a, b)| {
            let m = a.max(b);
            if m.is_positive() {
                m.clone()
            } else {
                Int::ZERO
            }
        })
        .collect()
}

pub fn sub_points(x: &[Int], y: &[Int]) -> Point {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn add_points(x: &[Int], y: &[Int]) -> Point {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// An ordered, deduplicated set of vectors living on labelled coordinates.
///
/// Labels are the original coordinate indices of each position and are kept
/// sorted, so positional order agrees with label order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSet {
    labels: Vec<usize>,
    vectors: IndexSet<LatticeVector>,
}

impl VectorSet {
    pub fn new(dim: usize) -> VectorSet {
        VectorSet::with_labels((0..dim).collect())
    }

    pub fn with_labels(labels: Vec<usize>) -> VectorSet {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        VectorSet {
            labels,
            vectors: IndexSet::new(),
        }
    }

    pub fn from_vectors(dim: usize, vectors: impl IntoIterator<Item = LatticeVector>) -> VectorSet {
        let mut s = VectorSet::new(dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn from_i64(dim: usize, rows: &[&[i64]]) -> VectorSet {
        VectorSet::from_vectors(dim, rows.iter().map(|r| LatticeVector::from_i64(r)))
    }

    pub fn from_matrix(m: &IntMatrix) -> VectorSet {
        VectorSet::from_vectors(
            m.ncols(),
            m.rows().map(|r| LatticeVector::new(r.to_vec())),
        )
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Inserts `v`; returns false if it was already present.
    ///
    /// Panics on a dimension mismatch.
    pub fn insert(&mut self, v: LatticeVector) -> bool {
        assert_eq!(v.dim(), self.dim(), "vector dimension mismatch");
        self.vectors.insert(v)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.vectors.contains(v)
    }

    /// Membership up to sign.
    pub fn contains_up_to_sign(&self, v: &LatticeVector) -> bool {
        self.contains(v) || self.contains(&v.negated())
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticeVector> {
        self.vectors.iter()
    }

    pub fn get(&self, i: usize) -> Option<&LatticeVector> {
        self.vectors.get_index(i)
    }

    pub fn to_vec(&self) -> Vec<LatticeVector> {
        self.vectors.iter().cloned().collect()
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(
            self.dim(),
            self.vectors.iter().map(|v| v.entries().to_vec()).collect(),
        )
        .unwrap()
    }

    /// Same vectors sorted lexicographically.
    pub fn sorted(&self) -> VectorSet {
        let mut v = self.to_vec();
        v.sort();
        VectorSet {
            labels: self.labels.clone(),
            vectors: v.into_iter().collect(),
        }
    }

    /// Sign-normalized and sorted, for comparisons that ignore orientation.
    pub fn canonical_up_to_sign(&self) -> VectorSet {
        let mut v: Vec<LatticeVector> = self.vectors.iter().map(|u| u.sign_normalized()).collect();
        v.sort();
        v.dedup();
        VectorSet {
            labels: self.labels.clone(),
            vectors: v.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a VectorSet {
    type Item = &'a LatticeVector;
    type IntoIter = indexmap::set::Iter<'a, LatticeVector>;
    fn into_iter(self) -> Self::IntoIter {
        self.vectors.iter()
    }
}

/// A sublattice of `Z^n` given by a basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: IntMatrix,
    hnf: Hnf,
}

impl Lattice {
    /// Lattice with the rows of `basis` as basis; rows must be independent.
    pub fn from_basis(basis: IntMatrix) -> Result<Lattice> {
        let hnf = linalg::hnf(&basis);
        if hnf.rank() != basis.nrows() {
            return Err(Error::RankDeficient {
                rank: hnf.rank(),
                wanted: basis.nrows(),
            });
        }
        Ok(Lattice { basis, hnf })
    }

    /// Lattice spanned by arbitrary generators; the basis is their HNF.
    pub fn span(dim: usize, generators: &[Vec<Int>]) -> Result<Lattice> {
        let m = IntMatrix::from_rows(dim, generators.to_vec())?;
        let hnf = linalg::hnf(&m);
        Ok(Lattice {
            basis: hnf.to_matrix(),
            hnf,
        })
    }

    /// The integer kernel `{u : A u = 0}`.
    /// The integer kernel of `a`, with an LLL-reduced basis.
    pub fn kernel(a: &IntMatrix) -> Lattice {
        let k = linalg::integer_kernel_basis(a);
        let reduced = linalg::lll_reduce(&k).expect("kernel basis is independent");
        Lattice::from_basis(reduced).expect("kernel basis is independent")
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn hnf(&self) -> &Hnf {
        &self.hnf
    }

    pub fn basis_vectors(&self) -> VectorSet {
        VectorSet::from_matrix(&self.basis)
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.hnf.contains(v)
    }

    /// Whether `x - y` lies in the lattice.
    pub fn fiber_equivalent(&self, x: &[Int], y: &[Int]) -> bool {
        x.len() == self.dim() && y.len() == self.dim() && self.contains(&sub_points(x, y))
    }
}

/// Coordinate projection dropping the indices in `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionMap {
    sigma: Support,
    kept: Vec<usize>,
}

impl ProjectionMap {
    pub fn new(dim: usize, sigma: impl IntoIterator<Item = usize>) -> ProjectionMap {
        let sigma = Support::from_indices(dim, sigma);
        let kept = sigma.complement().to_vec();
        ProjectionMap { sigma, kept }
    }

    pub fn sigma(&self) -> &Support {
        &self.sigma
    }

    /// Coordinates that survive the projection, ascending.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn project(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector::new(self.kept.iter().map(|&i| v.entries()[i].clone()).collect())
    }

    pub fn project_set(&self, s: &VectorSet) -> VectorSet {
        let mut out = VectorSet::with_labels(self.kept.iter().map(|&i| s.labels()[i]).collect());
        for v in s {
            let p = self.project(v);
            if !p.is_zero() {
                out.insert(p);
            }
        }
        out
    }

    /// Image of a lattice; the basis is projected row by row when that keeps
    /// it independent, otherwise the projected rows are put in HNF.
    pub fn project_lattice(&self, l: &Lattice) -> Lattice {
        let p = l.basis().select_columns(&self.kept);
        Lattice::from_basis(p.clone())
            .unwrap_or_else(|_| Lattice::span(self.kept.len(), &p.to_rows()).unwrap())
    }

    /// The unique `w` in `l` whose projection is `v`.
    pub fn lift(&self, l: &Lattice, v: &LatticeVector) -> Result<LatticeVector> {
        if v.dim() != self.kept.len() {
            return Err(Error::Dimension {
                expected: self.kept.len(),
                found: v.dim(),
            });
        }
        let p = l.basis().select_columns(&self.kept);
        let coefs = linalg::solve_left(&p, v.entries()).map_err(|e| match e {
            Error::Inconsistent => Error::NotInLattice,
            other => other,
        })?;
        let mut w = vec![Int::ZERO; l.dim()];
        for (c, row) in coefs.iter().zip(l.basis().rows()) {
            let c = Int::from_rat(c).ok_or(Error::NotInLattice)?;
            for (wi, r) in w.iter_mut().zip(row) {
                *wi += &(&c * r);
            }
        }
        Ok(LatticeVector::new(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(v: &[i64]) -> Point {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn running_example() -> Lattice {
        Lattice::from_basis(IntMatrix::from_i64(
            6,
            &[&[1, -1, -1, -3, -1, 2], &[1, 0, 2, -2, -2, 1]],
        ))
        .unwrap()
    }

    #[test]
    fn positive_and_negative_parts() {
        let u = LatticeVector::from_i64(&[1, -1, -1, -3, -1, 2]);
        assert_eq!(u.positive_part(), pt(&[1, 0, 0, 0, 0, 2]));
        assert_eq!(u.negative_part(), pt(&[0, 1, 1, 3, 1, 0]));
        let z = LatticeVector::from_i64(&[0, 0]);
        assert!(z.is_zero());
        assert!(z.support().is_empty());
        let v = LatticeVector::from_i64(&[0, 1, 3, 1, -1, -1]);
        assert_eq!(v.positive_support().to_vec(), vec![1, 2, 3]);
        assert_eq!(v.negative_support().to_vec(), vec![4, 5]);
    }

    #[test]
    fn meets() {
        let x = pt(&[2, 0, 1]);
        let y = pt(&[1, 3, 0]);
        assert_eq!(meet(&x, &y).unwrap(), pt(&[1, 0, 0]));
        assert_eq!(
            meet_on(&Support::from_indices(3, [0]), &x, &y).unwrap(),
            pt(&[1, 0, 0])
        );
        assert_eq!(meet_on(&Support::empty(3), &x, &y).unwrap(), pt(&[0, 0, 0]));
        assert!(meet(&x, &pt(&[1])).is_err());
    }

    #[test]
    fn projection_and_lift() {
        let l = running_example();
        let p = ProjectionMap::new(6, [2, 3, 5]);
        let u = LatticeVector::from_i64(&[1, -1, -1, -3, -1, 2]);
        assert_eq!(p.project(&u), LatticeVector::from_i64(&[1, -1, -1]));

        let p6 = ProjectionMap::new(6, [5]);
        let w = p6
            .lift(&l, &LatticeVector::from_i64(&[0, 1, 3, 1, -1]))
            .unwrap();
        assert_eq!(w, LatticeVector::from_i64(&[0, 1, 3, 1, -1, -1]));

        let id = ProjectionMap::new(6, []);
        assert_eq!(id.project(&u), u);
        assert_eq!(id.lift(&l, &u).unwrap(), u);
        assert!(id.lift(&l, &LatticeVector::from_i64(&[1, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn fiber_equivalence_examples() {
        let l = running_example();
        assert!(l.fiber_equivalent(&pt(&[0, 0, 0, 0, 1, 1]), &pt(&[0, 1, 3, 1, 0, 0])));
        assert!(l.fiber_equivalent(&pt(&[1, 2, 3, 4, 5, 6]), &pt(&[1, 2, 3, 4, 5, 6])));
        let line = Lattice::from_basis(IntMatrix::from_i64(2, &[&[1, -1]])).unwrap();
        assert!(!line.fiber_equivalent(&pt(&[1, 0]), &pt(&[0, 0])));
    }

    #[test]
    fn vector_set_dedups() {
        let mut s = VectorSet::new(2);
        assert!(s.insert(LatticeVector::from_i64(&[1, -1])));
        assert!(!s.insert(LatticeVector::from_i64(&[1, -1])));
        assert!(s.contains_up_to_sign(&LatticeVector::from_i64(&[-1, 1])));
        assert_eq!(s.len(), 1);
    }

    fn vec_strategy(n: usize) -> impl Strategy<Value = LatticeVector> {
        proptest::collection::vec(-20i64..=20, n).prop_map(|v| LatticeVector::from_i64(&v))
    }

    proptest! {
        #[test]
        fn decomposition_identity(u in vec_strategy(7)) {
            let p = u.positive_part();
            let m = u.negative_part();
            prop_assert_eq!(sub_points(&p, &m), u.entries().to_vec());
            prop_assert!(!u.positive_support().intersects(u.negative_support()));
            prop_assert!(p.iter().chain(&m).all(|e| !e.is_negative()));
        }

        #[test]
        fn lift_inverts_projection(a in -3i64..=3, b in -3i64..=3) {
            let l = running_example();
            let p = ProjectionMap::new(6, [2, 3, 5]);
            let w: Vec<Int> = (0..6)
                .map(|j| Int::from(a) * l.basis().get(0, j) + Int::from(b) * l.basis().get(1, j))
                .collect();
            let w = LatticeVector::new(w);
            prop_assert_eq!(p.lift(&l, &p.project(&w)).unwrap(), w);
        }

        #[test]
        fn fiber_equivalence_is_an_equivalence(
            x in proptest::collection::vec(0i64..4, 6),
            c1 in -2i64..=2, c2 in -2i64..=2, d1 in -2i64..=2, d2 in -2i64..=2,
        ) {
            let l = running_example();
            let shift = |c1: i64, c2: i64, base: &[Int]| -> Point {
                (0..6).map(|j| &base[j] + &(Int::from(c1) * l.basis().get(0, j) + Int::from(c2) * l.basis().get(1, j))).collect()
            };
            let x = pt(&x);
            let y = shift(c1, c2, &x);
            let z = shift(d1, d2, &y);
            prop_assert!(l.fiber_equivalent(&x, &x));
            prop_assert!(l.fiber_equivalent(&x, &y) && l.fiber_equivalent(&y, &x));
            prop_assert!(l.fiber_equivalent(&x, &z));
            let mut off = x.clone();
            off[0] += &Int::ONE;
            prop_assert_eq!(l.fiber_equivalent(&x, &off), l.fiber_equivalent(&off, &x));
        }
    }
}
