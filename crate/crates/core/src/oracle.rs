//! Brute-force fiber enumeration and checks of the generating-set and
//! Groebner-basis properties on sampled fibers.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generators::strictly_positive_grading;
use crate::int::Int;
use crate::lattice::{critical_peak, sub_points, Lattice, LatticeVector, Point, VectorSet};
use crate::order::{Grading, TermOrder};

/// The points of a fiber with all coordinates at most some bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub representative: Point,
    /// Sorted lexicographically.
    pub points: Vec<Point>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.points.binary_search_by(|p| p.as_slice().cmp(x)).is_ok()
    }
}

/// All `x >= 0` with `x = b (mod L)` and `max x_i <= bound`.
///
/// Walks the Hermite basis pivot by pivot: once the coefficients of the first
/// `k` rows are fixed, every column before the next pivot is final, so the
/// range of each coefficient is an interval and dead branches are cut early.
pub fn enumerate_fiber(l: &Lattice, b: &[Int], bound: &Int) -> Fiber {
    let limits = vec![bound.clone(); l.dim()];
    enumerate_within(l, b, &limits, usize::MAX).expect("no node cap")
}

/// Like [`enumerate_fiber`] with a separate bound per coordinate. Gives up
/// with `None` after visiting `node_cap` search nodes.
pub fn enumerate_within(l: &Lattice, b: &[Int], limits: &[Int], node_cap: usize) -> Option<Fiber> {
    assert_eq!(b.len(), l.dim(), "representative dimension mismatch");
    assert_eq!(limits.len(), l.dim(), "limit dimension mismatch");
    let mut search = Search {
        rows: l.hnf().rows(),
        pivots: l.hnf().pivots(),
        limits,
        nodes: 0,
        node_cap,
        out: Vec::new(),
    };
    let mut x = b.to_vec();
    if !search.descend(0, &mut x) {
        return None;
    }
    let mut points = search.out;
    points.sort();
    points.dedup();
    Some(Fiber {
        representative: b.to_vec(),
        points,
    })
}

struct Search<'a> {
    rows: &'a [Vec<Int>],
    pivots: &'a [usize],
    limits: &'a [Int],
    nodes: usize,
    node_cap: usize,
    out: Vec<Point>,
}

impl Search<'_> {
    fn in_range(&self, i: usize, v: &Int) -> bool {
        !v.is_negative() && v <= &self.limits[i]
    }

    // false when the node cap was hit
    fn descend(&mut self, k: usize, x: &mut Point) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return false;
        }
        if k == self.rows.len() {
            if x.iter().enumerate().all(|(i, v)| self.in_range(i, v)) {
                self.out.push(x.clone());
            }
            return true;
        }
        let row = &self.rows[k];
        let p = self.pivots[k];
        let pivot = &row[p];
        let base = &x[p];
        // need 0 <= base + c * pivot <= limit
        let lo = (-base).div_ceil(pivot);
        let hi = (&self.limits[p] - base).div_floor(pivot);
        let next_pivot = self.pivots.get(k + 1).copied().unwrap_or(x.len());
        let mut c = lo;
        while c <= hi {
            for (xi, r) in x.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *xi += &(&c * r);
                }
            }
            let live = (p..next_pivot).all(|i| self.in_range(i, &x[i]));
            let ok = !live || self.descend(k + 1, x);
            for (xi, r) in x.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *xi -= &(&c * r);
                }
            }
            if !ok {
                return false;
            }
            c += &Int::ONE;
        }
        true
    }
}

fn move_index(s: &VectorSet) -> Vec<LatticeVector> {
    let mut moves: Vec<LatticeVector> = Vec::new();
    let mut seen = HashSet::new();
    for u in s {
        if u.is_zero() {
            continue;
        }
        for v in [u.clone(), u.negated()] {
            if seen.insert(v.clone()) {
                moves.push(v);
            }
        }
    }
    moves
}

fn components(points: &[Point], s: &VectorSet) -> Vec<usize> {
    let index: HashMap<&Point, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let moves = move_index(s);
    for (i, x) in points.iter().enumerate() {
        for u in &moves {
            if !u.positive_part_le_point(x) {
                continue;
            }
            let y = sub_points(x, u.entries());
            if let Some(&j) = index.get(&y) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    (0..points.len()).map(|i| find(&mut parent, i)).collect()
}

/// Whether the graph on the fiber with edges `x - y` or `y - x` in `s` is
/// connected.
pub fn is_connected(f: &Fiber, s: &VectorSet) -> bool {
    disconnected_pair(&f.points, &f.points, s).is_none()
}

/// Two points of `targets` lying in different components of the graph on
/// `domain` (which must contain `targets`).
fn disconnected_pair(domain: &[Point], targets: &[Point], s: &VectorSet) -> Option<(Point, Point)> {
    if targets.len() < 2 {
        return None;
    }
    let comp = components(domain, s);
    let index: HashMap<&Point, usize> = domain.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let first = &targets[0];
    let c0 = comp[index[first]];
    targets
        .iter()
        .find(|t| comp[index[t]] != c0)
        .map(|t| (first.clone(), t.clone()))
}

/// Outcome of a sampled verification.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub fibers_checked: usize,
    /// Fibers too large to enumerate.
    pub fibers_skipped: usize,
    pub points_seen: usize,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub representative: Point,
    pub kind: FailureKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// Two points with no path between them.
    Disconnected(Point, Point),
    /// A point other than the minimum without an improving move.
    Stuck(Point),
    /// The fiber minimum differs from a normal form.
    WrongMinimum { expected: Point, found: Point },
}

/// How fibers are bounded before enumeration.
enum FiberBound {
    /// Pointed lattice: every fiber is finite and bounded by the grading.
    Graded(Grading),
    /// Some fibers are infinite; enumerate a truncation.
    Truncated,
}

fn fiber_bound(l: &Lattice) -> FiberBound {
    match strictly_positive_grading(l) {
        Some(g) => FiberBound::Graded(g),
        None => FiberBound::Truncated,
    }
}

/// Per-coordinate bounds on the points of the fiber of `b`.
fn graded_limits(g: &Grading, b: &[Int]) -> Vec<Int> {
    let d = g.degree(b);
    g.weights().iter().map(|w| Int::floor_rat(&(&d / w))).collect()
}

/// Search nodes allowed per fiber before it is skipped.
pub const FIBER_NODE_CAP: usize = 2_000_000;

/// Fibers for each representative, or `None` when a fiber could not be
/// enumerated. Fibers of pointed lattices are enumerated in full; otherwise
/// the fiber is cut at `bound` and returned together with the cut at twice
/// the bound, inside which connecting paths are searched.
fn sampled_fibers<'a>(
    l: &'a Lattice,
    sample: &'a [Point],
    bound: &'a Int,
) -> impl Iterator<Item = (Point, Option<Fiber>, Option<Fiber>)> + 'a {
    let kind = fiber_bound(l);
    sample.iter().map(move |b| match &kind {
        FiberBound::Graded(g) => {
            let limits = graded_limits(g, b);
            (b.clone(), enumerate_within(l, b, &limits, FIBER_NODE_CAP), None)
        }
        FiberBound::Truncated => {
            let outer = bound + bound;
            let limits = vec![outer; l.dim()];
            let Some(outer) = enumerate_within(l, b, &limits, FIBER_NODE_CAP) else {
                return (b.clone(), None, None);
            };
            let inner = Fiber {
                representative: b.clone(),
                points: outer
                    .points
                    .iter()
                    .filter(|p| p.iter().all(|v| v <= bound))
                    .cloned()
                    .collect(),
            };
            (b.clone(), Some(inner), Some(outer))
        }
    })
}

/// Checks that every sampled fiber graph is connected under `s`.
pub fn verify_generating_set(l: &Lattice, s: &VectorSet, sample: &[Point], bound: &Int) -> VerifyReport {
    let mut report = VerifyReport::default();
    for (b, inner, outer) in sampled_fibers(l, sample, bound) {
        let Some(inner) = inner else {
            report.fibers_skipped += 1;
            continue;
        };
        report.fibers_checked += 1;
        report.points_seen += inner.len();
        let domain = outer.as_ref().unwrap_or(&inner);
        if let Some((x, y)) = disconnected_pair(&domain.points, &inner.points, s) {
            report.failures.push(VerifyFailure {
                representative: b,
                kind: FailureKind::Disconnected(x, y),
            });
        }
    }
    report
}

fn improving_move<'a>(x: &[Int], moves: &'a [LatticeVector]) -> Option<&'a LatticeVector> {
    moves.iter().find(|u| u.positive_part_le_point(x))
}

/// Checks the Groebner property on sampled fibers: the minimum is unique and
/// every other point has a move in `g` to a smaller point of the fiber.
pub fn verify_groebner(l: &Lattice, g: &VectorSet, order: &TermOrder, sample: &[Point], bound: &Int) -> VerifyReport {
    let moves: Vec<LatticeVector> = g.iter().filter_map(|u| order.orient(u).ok()).collect();
    let mut report = VerifyReport::default();
    for (b, inner, _) in sampled_fibers(l, sample, bound) {
        let Some(fiber) = inner else {
            report.fibers_skipped += 1;
            continue;
        };
        report.fibers_checked += 1;
        report.points_seen += fiber.len();
        let minimum = fiber
            .points
            .iter()
            .min_by(|a, c| order.compare(a, c).unwrap_or(Ordering::Equal))
            .cloned();
        for x in &fiber.points {
            if Some(x) == minimum.as_ref() {
                continue;
            }
            // in a truncated fiber the target may lie outside the box
            let ok = improving_move(x, &moves).is_some();
            if !ok {
                report.failures.push(VerifyFailure {
                    representative: b.clone(),
                    kind: FailureKind::Stuck(x.clone()),
                });
                break;
            }
        }
    }
    report
}

/// Checks that the normal form of every point of each sampled fiber is the
/// fiber's minimum.
pub fn verify_normal_forms(l: &Lattice, g: &VectorSet, order: &TermOrder, sample: &[Point], bound: &Int) -> VerifyReport {
    let moves: Vec<LatticeVector> = g.iter().filter_map(|u| order.orient(u).ok()).collect();
    let mut report = VerifyReport::default();
    for (b, inner, _) in sampled_fibers(l, sample, bound) {
        let Some(fiber) = inner else {
            report.fibers_skipped += 1;
            continue;
        };
        if matches!(fiber_bound(l), FiberBound::Truncated) {
            report.fibers_skipped += 1;
            continue;
        }
        report.fibers_checked += 1;
        report.points_seen += fiber.len();
        let minimum = fiber
            .points
            .iter()
            .min_by(|a, c| order.compare(a, c).unwrap_or(Ordering::Equal))
            .cloned()
            .unwrap();
        for x in &fiber.points {
            let nf = crate::completion::normal_form(x, &moves, order);
            if nf != minimum {
                report.failures.push(VerifyFailure {
                    representative: b.clone(),
                    kind: FailureKind::WrongMinimum {
                        expected: minimum.clone(),
                        found: nf,
                    },
                });
                break;
            }
        }
    }
    report
}

/// Peaks `max(u+, v+)` of all pairs of `s` plus `random` seeded points with
/// entries in `0..=max_entry`.
pub fn default_sample(s: &VectorSet, random: usize, max_entry: i64, seed: u64) -> Vec<Point> {
    let v = s.to_vec();
    let mut out: Vec<Point> = Vec::new();
    let mut seen = HashSet::new();
    for (i, u) in v.iter().enumerate() {
        for w in &v[i + 1..] {
            for (a, c) in [(u.clone(), w.clone()), (u.clone(), w.negated())] {
                let z = critical_peak(&a, &c);
                if seen.insert(z.clone()) {
                    out.push(z);
                }
            }
        }
        let z = u.positive_part();
        if seen.insert(z.clone()) {
            out.push(z);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let p: Point = (0..s.dim()).map(|_| Int::from(rng.gen_range(0..=max_entry))).collect();
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}
