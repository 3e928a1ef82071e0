//! Normal forms and the critical-pair completion procedure.
//!
//! [`complete`] takes a set of lattice vectors and a term order and adds
//! reduced differences of critical pairs until every pair `(u, v)` admits a
//! decreasing path between `z - u` and `z - v`, where `z = max(u+, v+)`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::bitset::Support;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::{critical_peak, point_support, sub_points, LatticeVector, Point, VectorSet};
use crate::order::TermOrder;

/// Default bound on the size of the working set.
pub const DEFAULT_SAFETY_CAP: usize = 10_000_000;

/// Environment variable overriding [`DEFAULT_SAFETY_CAP`].
pub const SAFETY_CAP_ENV: &str = "LATGEN_MAX_BASIS";

/// A pair-elimination rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Criterion {
    /// Skip pairs whose positive supports are disjoint.
    DisjointSupport,
    /// Gebauer-Moeller style elimination through a third element.
    GebauerMoller,
    /// Skip pairs whose reduction paths meet on a coordinate of the set.
    Cancellation(Support),
}

/// Which criteria to apply, in application order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CriteriaConfig {
    pub sequence: Vec<Criterion>,
    /// Drop elements with a reducible leading part during the run. Ignored
    /// together with [`Criterion::GebauerMoller`].
    pub retire: bool,
}

impl CriteriaConfig {
    pub fn none() -> CriteriaConfig {
        CriteriaConfig::default()
    }

    /// Cancellation on all coordinates, then disjoint support. Valid when the
    /// input already generates a pointed lattice.
    pub fn for_generating_set(dim: usize) -> CriteriaConfig {
        CriteriaConfig {
            sequence: vec![
                Criterion::Cancellation(Support::full(dim)),
                Criterion::DisjointSupport,
            ],
            retire: false,
        }
    }

    /// Disjoint support, Gebauer-Moeller, then cancellation restricted to
    /// `tau` (omitted when `tau` is empty).
    pub fn for_saturation(tau: Support) -> CriteriaConfig {
        let mut sequence = vec![Criterion::DisjointSupport, Criterion::GebauerMoller];
        if !tau.is_empty() {
            sequence.push(Criterion::Cancellation(tau));
        }
        CriteriaConfig { sequence, retire: false }
    }

    pub fn from_flags(disjoint: bool, cancellation: Option<Support>, gebauer_moller: bool) -> CriteriaConfig {
        let mut sequence = Vec::new();
        if disjoint {
            sequence.push(Criterion::DisjointSupport);
        }
        if gebauer_moller {
            sequence.push(Criterion::GebauerMoller);
        }
        if let Some(tau) = cancellation {
            sequence.push(Criterion::Cancellation(tau));
        }
        CriteriaConfig { sequence, retire: false }
    }

    /// The same criteria, with retirement of reducible elements.
    pub fn retiring(mut self) -> CriteriaConfig {
        self.retire = true;
        self
    }

    fn cancellation_set(&self) -> Option<&Support> {
        self.sequence.iter().find_map(|c| match c {
            Criterion::Cancellation(t) => Some(t),
            _ => None,
        })
    }
}

/// Counters collected by one completion run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub input_size: usize,
    pub output_size: usize,
    pub pairs_created: usize,
    pub eliminated_disjoint: usize,
    pub eliminated_gebauer_moller: usize,
    pub eliminated_cancellation: usize,
    /// Cancellation detected only along the reduction paths.
    pub eliminated_cancellation_trace: usize,
    pub reductions: usize,
    pub zero_reductions: usize,
    /// Elements dropped because a newer leading part divides theirs.
    pub retired: usize,
    pub duplicates: usize,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub basis: Vec<LatticeVector>,
    pub stats: CompletionStats,
}

fn safety_cap() -> usize {
    std::env::var(SAFETY_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_SAFETY_CAP)
}

fn find_reducer<'a>(x: &[Int], support: &Support, g: &'a [LatticeVector]) -> Option<&'a LatticeVector> {
    g.iter().find(|u| u.positive_part_le(x, support))
}

fn subtract_in_place(x: &mut [Int], u: &LatticeVector) {
    for (xi, ui) in x.iter_mut().zip(u.entries()) {
        if !ui.is_zero() {
            *xi -= ui;
        }
    }
}

/// Reduces `x` in place; `visit` sees every point of the path including the
/// start and may stop the walk early by returning `false`.
fn reduce_with(x: &mut Point, g: &[LatticeVector], mut visit: impl FnMut(&Support) -> bool) -> bool {
    loop {
        let support = point_support(x);
        if !visit(&support) {
            return false;
        }
        match find_reducer(x, &support, g) {
            Some(u) => subtract_in_place(x, u),
            None => return true,
        }
    }
}

/// End point of the maximal decreasing path from `x` that always subtracts
/// the first applicable element of `g`.
///
/// `g` must be oriented with respect to `order`.
pub fn normal_form(x: &[Int], g: &[LatticeVector], order: &TermOrder) -> Point {
    debug_assert!(g
        .iter()
        .all(|u| order.direction(u.entries()) == std::cmp::Ordering::Greater));
    let mut p = x.to_vec();
    reduce_with(&mut p, g, |_| true);
    p
}

/// True when the positive supports of `u` and `v` are disjoint.
pub fn criterion_disjoint(u: &LatticeVector, v: &LatticeVector) -> bool {
    !u.positive_support().intersects(v.positive_support())
}

/// True when `z - u` and `z - v` share a coordinate of `tau`.
pub fn criterion_cancellation(u: &LatticeVector, v: &LatticeVector, tau: &Support) -> bool {
    let z = critical_peak(u, v);
    let x = point_support(&sub_points(&z, u.entries()));
    let y = point_support(&sub_points(&z, v.entries()));
    x.intersection(&y).intersects(tau)
}

fn le(a: &[Int], b: &[Int]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Gebauer-Moeller test for the pair `(i, j)`, `i < j`, of `g`.
pub fn criterion_gebauer_moller(g: &[LatticeVector], i: usize, j: usize) -> bool {
    let z = critical_peak(&g[i], &g[j]);
    gebauer_moller_at(g, i, j, &z, &point_support(&z))
}

fn gebauer_moller_at(g: &[LatticeVector], i: usize, j: usize, z: &[Int], zs: &Support) -> bool {
    debug_assert!(i < j);
    for (k, w) in g.iter().enumerate() {
        if k == i || k == j || !w.positive_part_le(z, zs) {
            continue;
        }
        let zik = critical_peak(&g[i], w);
        let zjk = critical_peak(&g[j], w);
        debug_assert!(le(&zik, z) && le(&zjk, z));
        let eq_ik = zik == z;
        let eq_jk = zjk == z;
        let hit = match (eq_ik, eq_jk) {
            (false, false) => true,
            (true, false) => k < j,
            (false, true) => k < i,
            (true, true) => k < i,
        };
        if hit {
            return true;
        }
    }
    false
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct QueuedPair {
    degree: Int,
    seq: u64,
    i: usize,
    j: usize,
}

/// Queue of pending pairs, lowest total degree of the peak first, FIFO
/// within a degree.
#[derive(Default)]
pub struct PairQueue {
    heap: BinaryHeap<Reverse<QueuedPair>>,
    seq: u64,
}

impl PairQueue {
    pub fn push(&mut self, g: &[LatticeVector], i: usize, j: usize) {
        let degree: Int = critical_peak(&g[i], &g[j]).iter().sum();
        self.heap.push(Reverse(QueuedPair {
            degree,
            seq: self.seq,
            i,
            j,
        }));
        self.seq += 1;
    }

    pub fn pop(&mut self) -> Option<(usize, usize)> {
        self.heap.pop().map(|Reverse(p)| (p.i, p.j))
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}

/// Completion of `input` with respect to `order`.
///
/// Without retirement the input is kept as is and the output contains it.
/// With retirement (see [`CriteriaConfig::retiring`]) an element whose
/// leading part becomes divisible by a newer one is dropped, and the
/// difference of the normal forms of its two sides is added back instead.
pub fn complete(order: &TermOrder, input: &[LatticeVector], criteria: &CriteriaConfig) -> Result<Completion> {
    let mut run = Run {
        order,
        cap: safety_cap(),
        retire: criteria.retire && !criteria.sequence.contains(&Criterion::GebauerMoller),
        stats: CompletionStats {
            input_size: input.len(),
            ..Default::default()
        },
        g: Vec::new(),
        active: Vec::new(),
        reducers: Vec::new(),
        seen: HashSet::new(),
        queue: PairQueue::default(),
        pending: Vec::new(),
    };
    for u in input {
        if u.is_zero() {
            continue;
        }
        let u = order.orient(u)?;
        if run.retire {
            run.pending.push(u);
        } else if !run.seen.contains(&u) {
            run.insert(u)?;
        }
    }
    let tau = criteria.cancellation_set();

    loop {
        run.drain_pending()?;
        let Some((i, j)) = run.queue.pop() else {
            break;
        };
        if !run.active[i] || !run.active[j] {
            continue;
        }
        let g = &run.g;
        let z = critical_peak(&g[i], &g[j]);
        let zs = point_support(&z);
        let mut x = sub_points(&z, g[i].entries());
        let mut y = sub_points(&z, g[j].entries());

        let mut eliminated = false;
        for c in &criteria.sequence {
            eliminated = match c {
                Criterion::DisjointSupport => {
                    let hit = criterion_disjoint(&g[i], &g[j]);
                    run.stats.eliminated_disjoint += hit as usize;
                    hit
                }
                Criterion::GebauerMoller => {
                    let hit = gebauer_moller_at(g, i, j, &z, &zs);
                    run.stats.eliminated_gebauer_moller += hit as usize;
                    hit
                }
                Criterion::Cancellation(t) => {
                    let hit = point_support(&x).intersection(&point_support(&y)).intersects(t);
                    run.stats.eliminated_cancellation += hit as usize;
                    hit
                }
            };
            if eliminated {
                break;
            }
        }
        if eliminated {
            continue;
        }

        run.stats.reductions += 1;
        match tau {
            Some(t) => {
                let mut x_marks: Vec<Support> = Vec::new();
                reduce_with(&mut x, &run.reducers, |s| {
                    x_marks.push(s.intersection(t));
                    true
                });
                let finished = reduce_with(&mut y, &run.reducers, |s| {
                    let m = s.intersection(t);
                    m.is_empty() || !x_marks.iter().any(|xm| xm.intersects(&m))
                });
                if !finished {
                    run.stats.eliminated_cancellation_trace += 1;
                    continue;
                }
            }
            None => {
                reduce_with(&mut x, &run.reducers, |_| true);
                reduce_with(&mut y, &run.reducers, |_| true);
            }
        }
        run.add_difference(&x, &y)?;
    }
    let basis: Vec<LatticeVector> = run
        .g
        .into_iter()
        .zip(run.active)
        .filter_map(|(u, a)| a.then_some(u))
        .collect();
    run.stats.output_size = basis.len();
    Ok(Completion {
        basis,
        stats: run.stats,
    })
}

struct Run<'a> {
    order: &'a TermOrder,
    cap: usize,
    retire: bool,
    stats: CompletionStats,
    // every element ever added; pairs refer to positions here
    g: Vec<LatticeVector>,
    active: Vec<bool>,
    // active elements in insertion order
    reducers: Vec<LatticeVector>,
    seen: HashSet<LatticeVector>,
    queue: PairQueue,
    // retired elements whose sides still have to be reduced
    pending: Vec<LatticeVector>,
}

impl Run<'_> {
    fn add_difference(&mut self, x: &[Int], y: &[Int]) -> Result<()> {
        let r = LatticeVector::new(sub_points(x, y));
        if r.is_zero() {
            self.stats.zero_reductions += 1;
            return Ok(());
        }
        let r = self.order.orient(&r)?;
        if self.seen.contains(&r) {
            self.stats.duplicates += 1;
            return Ok(());
        }
        debug_assert!(
            self.reducers.iter().all(|u| !u.positive_part_le_point(&r.positive_part())),
            "new element has a reducible leading part"
        );
        self.insert(r)
    }

    fn insert(&mut self, r: LatticeVector) -> Result<()> {
        if self.reducers.len() >= self.cap {
            return Err(Error::SafetyCap { cap: self.cap });
        }
        let k = self.g.len();
        if self.retire {
            let plus = r.positive_part();
            let support = point_support(&plus);
            let mut retired = false;
            for idx in 0..k {
                let u = &self.g[idx];
                if self.active[idx] && r.positive_part_le(&u.positive_part(), u.positive_support()) {
                    debug_assert!(u.positive_part() != plus || u.positive_support() != &support);
                    self.active[idx] = false;
                    self.seen.remove(u);
                    self.pending.push(u.clone());
                    self.stats.retired += 1;
                    retired = true;
                }
            }
            if retired {
                self.reducers = self
                    .g
                    .iter()
                    .zip(&self.active)
                    .filter_map(|(u, &a)| a.then(|| u.clone()))
                    .collect();
            }
        }
        self.seen.insert(r.clone());
        self.reducers.push(r.clone());
        self.g.push(r);
        self.active.push(true);
        for i in 0..k {
            if self.active[i] {
                self.queue.push(&self.g, i, k);
                self.stats.pairs_created += 1;
            }
        }
        Ok(())
    }

    fn drain_pending(&mut self) -> Result<()> {
        while let Some(u) = self.pending.pop() {
            let mut x = u.positive_part();
            let mut y = u.negative_part();
            reduce_with(&mut x, &self.reducers, |_| true);
            reduce_with(&mut y, &self.reducers, |_| true);
            self.add_difference(&x, &y)?;
        }
        Ok(())
    }
}

/// Drops elements whose binomial is provably redundant: some other element
/// divides its leading part and both sides reduce to the same point by the
/// remaining elements. The generated binomial ideal, and so the connectivity
/// of every fiber, is unchanged.
pub fn prune_redundant(g: Vec<LatticeVector>) -> Vec<LatticeVector> {
    let mut alive = vec![true; g.len()];
    for idx in (0..g.len()).rev() {
        let plus = g[idx].positive_part();
        let divisible = g
            .iter()
            .enumerate()
            .any(|(k, w)| k != idx && alive[k] && w.positive_part_le_point(&plus));
        if !divisible {
            continue;
        }
        let rest: Vec<LatticeVector> = g
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != idx && alive[k])
            .map(|(_, w)| w.clone())
            .collect();
        let mut a = plus;
        let mut b = g[idx].negative_part();
        reduce_with(&mut a, &rest, |_| true);
        reduce_with(&mut b, &rest, |_| true);
        if a == b {
            alive[idx] = false;
        }
    }
    g.into_iter()
        .zip(alive)
        .filter_map(|(u, keep)| keep.then_some(u))
        .collect()
}

/// Replaces every element whose leading part is divisible by the leading
/// part of another element with the difference of the normal forms of its
/// two sides, until no leading part is divisible by another.
///
/// A removed move `u` is replaced by a path `u+ -> x' -> y' <- u-`, so every
/// pair of points connected before stays connected, also when some
/// coordinates are allowed to go negative.
pub fn autoreduce(g: &[LatticeVector], order: &TermOrder) -> Result<Vec<LatticeVector>> {
    let mut set: Vec<LatticeVector> = Vec::with_capacity(g.len());
    let mut seen = HashSet::new();
    for u in g {
        if u.is_zero() {
            continue;
        }
        let u = order.orient(u)?;
        if seen.insert(u.clone()) {
            set.push(u);
        }
    }
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < set.len() {
            let plus = set[i].positive_part();
            let support = point_support(&plus);
            let divisible = set
                .iter()
                .enumerate()
                .any(|(k, w)| k != i && w.positive_part_le(&plus, &support) && (k < i || w.positive_support() != &support || w.positive_part() != plus));
            if !divisible {
                i += 1;
                continue;
            }
            let u = set.remove(i);
            seen.remove(&u);
            changed = true;
            let mut x = plus;
            let mut y = u.negative_part();
            reduce_with(&mut x, &set, |_| true);
            reduce_with(&mut y, &set, |_| true);
            let r = LatticeVector::new(sub_points(&x, &y));
            if !r.is_zero() {
                let r = order.orient(&r)?;
                if seen.insert(r.clone()) {
                    set.push(r);
                }
            }
        }
        if !changed {
            return Ok(set);
        }
    }
}

/// Reduced Groebner basis from a Groebner basis, sorted lexicographically.
pub fn interreduce(g: &[LatticeVector], order: &TermOrder) -> Result<Vec<LatticeVector>> {
    let mut oriented: Vec<LatticeVector> = Vec::with_capacity(g.len());
    let mut seen = HashSet::new();
    for u in g {
        if u.is_zero() {
            continue;
        }
        let u = order.orient(u)?;
        if seen.insert(u.clone()) {
            oriented.push(u);
        }
    }
    let plus: Vec<Point> = oriented.iter().map(|u| u.positive_part()).collect();
    let minimal: Vec<LatticeVector> = oriented
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            !plus.iter().enumerate().any(|(k, p)| {
                k != i && le(p, &plus[i]) && (p != &plus[i] || k < i)
            })
        })
        .map(|(_, u)| u.clone())
        .collect();
    let mut out: Vec<LatticeVector> = minimal
        .iter()
        .map(|u| {
            let tail = normal_form(&u.negative_part(), &minimal, order);
            LatticeVector::new(sub_points(&u.positive_part(), &tail))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Convenience wrapper returning a [`VectorSet`].
pub fn complete_set(order: &TermOrder, input: &VectorSet, criteria: &CriteriaConfig) -> Result<(VectorSet, CompletionStats)> {
    let c = complete(order, &input.to_vec(), criteria)?;
    let mut out = VectorSet::with_labels(input.labels().to_vec());
    for u in c.basis {
        out.insert(u);
    }
    Ok((out, c.stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(v)
    }

    fn pt(v: &[i64]) -> Point {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn normal_form_examples() {
        let o = TermOrder::degrevlex(2);
        assert_eq!(normal_form(&pt(&[2, 0]), &[], &o), pt(&[2, 0]));
        let g = vec![lv(&[1, -1])];
        assert_eq!(normal_form(&pt(&[2, 0]), &g, &o), pt(&[0, 2]));
    }

    #[test]
    fn single_vector_completion() {
        let o = TermOrder::degrevlex(2);
        let c = complete(&o, &[lv(&[-1, 1])], &CriteriaConfig::none()).unwrap();
        assert_eq!(c.basis, vec![lv(&[1, -1])]);
    }

    #[test]
    fn disjoint_support_examples() {
        assert!(criterion_disjoint(&lv(&[1, -1, 0]), &lv(&[0, -1, 1])));
        let u = lv(&[1, -1, 0]);
        assert!(!criterion_disjoint(&u, &u));
        assert!(!criterion_disjoint(&lv(&[1, 0, -1]), &lv(&[1, -1, 0])));
    }

    #[test]
    fn cancellation_examples() {
        let u = lv(&[2, -1, 0]);
        let v = lv(&[1, -1, 0]);
        assert!(criterion_cancellation(&u, &v, &Support::full(3)));
        assert!(!criterion_cancellation(&u, &v, &Support::from_indices(3, [0])));
        assert!(!criterion_cancellation(
            &lv(&[1, -1, 0]),
            &lv(&[1, 0, -1]),
            &Support::full(3)
        ));
    }

    #[test]
    fn gebauer_moller_three_element_example() {
        // z12 = z13 = (1,1,0) strictly above z23 = (0,1,0)
        let g = vec![lv(&[1, 0, -1]), lv(&[0, 1, -1]), lv(&[-1, 1, 0])];
        assert_eq!(critical_peak(&g[0], &g[1]), critical_peak(&g[0], &g[2]));
        assert!(!criterion_gebauer_moller(&g, 0, 1));
        assert!(criterion_gebauer_moller(&g, 0, 2));
        assert!(!criterion_gebauer_moller(&g, 1, 2));
        let two = vec![lv(&[1, 0, -1]), lv(&[0, 1, -1])];
        assert!(!criterion_gebauer_moller(&two, 0, 1));
    }

    #[test]
    fn gebauer_moller_strict_condition() {
        let g = vec![lv(&[2, 1, -3]), lv(&[1, 2, -3]), lv(&[1, 1, -2])];
        // the third positive part lies strictly below both peaks
        assert!(criterion_gebauer_moller(&g, 0, 1));
    }

    #[test]
    fn interreduce_examples() {
        let o = TermOrder::degrevlex(2);
        let g = vec![lv(&[1, -1]), lv(&[2, -2])];
        assert_eq!(interreduce(&g, &o).unwrap(), vec![lv(&[1, -1])]);
        let r = interreduce(&[lv(&[1, -1])], &o).unwrap();
        assert_eq!(interreduce(&r, &o).unwrap(), r);
    }

    #[test]
    fn prune_keeps_needed_elements() {
        // a - b and a^2 - c: the second is not implied by the first
        let g = vec![lv(&[1, -1, 0]), lv(&[2, 0, -1])];
        assert_eq!(prune_redundant(g.clone()).len(), 2);
        // a - b, b - c and a - c: the last is implied
        let g = vec![lv(&[1, -1, 0]), lv(&[0, 1, -1]), lv(&[1, 0, -1])];
        assert_eq!(prune_redundant(g).len(), 2);
    }

    #[test]
    fn autoreduce_replaces_instead_of_dropping() {
        let o = TermOrder::degrevlex(3);
        // a^2 - c is replaced by b^2 - c, not dropped
        let r = autoreduce(&[lv(&[1, -1, 0]), lv(&[2, 0, -1])], &o).unwrap();
        assert_eq!(r, vec![lv(&[1, -1, 0]), lv(&[0, 2, -1])]);
        let r = autoreduce(&[lv(&[1, -1, 0]), lv(&[0, 1, -1]), lv(&[1, 0, -1])], &o).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn retiring_matches_plain_completion() {
        let o = TermOrder::degrevlex(6);
        let s = [lv(&[1, -1, -1, -3, -1, 2]), lv(&[1, 0, 2, -2, -2, 1]), lv(&[0, 1, 3, 1, -1, -1])];
        let plain = complete(&o, &s, &CriteriaConfig::none()).unwrap();
        let retiring = complete(&o, &s, &CriteriaConfig::none().retiring()).unwrap();
        assert_eq!(interreduce(&plain.basis, &o).unwrap(), interreduce(&retiring.basis, &o).unwrap());
        assert!(retiring.basis.len() <= plain.basis.len());
    }

    #[test]
    fn retiring_is_off_with_gebauer_moller() {
        let c = CriteriaConfig::from_flags(true, None, true).retiring();
        let o = TermOrder::degrevlex(3);
        let out = complete(&o, &[lv(&[1, -1, 0]), lv(&[2, 0, -1])], &c).unwrap();
        assert_eq!(out.stats.retired, 0);
    }
}
