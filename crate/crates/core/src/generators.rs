//! Generating sets and Groebner bases of lattices.
//!
//! Three ways to turn a spanning set into a generating set (Markov basis) are
//! provided: [`saturation_algorithm`], [`project_and_lift`] and
//! [`lift_and_project`]. [`extended_generating_set`] handles lattices that
//! contain nonzero nonnegative vectors, and [`groebner_basis`] completes a
//! generating set to a reduced Groebner basis.

use num_traits::Zero;

use crate::bitset::Support;
use crate::completion::{self, CompletionStats, CriteriaConfig, Criterion};
use crate::error::{Error, Result};
use crate::int::{Int, Rat};
use crate::lattice::{Lattice, LatticeVector, ProjectionMap, VectorSet};
use crate::linalg::{self, IntMatrix};
use crate::lp;
use crate::order::{Grading, TermOrder};

/// Maximum of `objective . x` over nonnegative points of the rational span of
/// `l` inside the unit box. Zero iff no such point has positive objective.
pub fn positive_span_maximum(l: &Lattice, objective: &[Rat]) -> Rat {
    if l.rank() == 0 {
        return Rat::zero();
    }
    lp::maximize_in_unit_box(l.basis(), objective).value
}

fn ones(n: usize) -> Vec<Rat> {
    vec![Rat::from_integer(1.into()); n]
}

/// True when the only nonnegative lattice vector is zero.
pub fn is_pointed(l: &Lattice) -> bool {
    positive_span_maximum(l, &ones(l.dim())).is_zero()
}

/// Coordinates reached by nonnegative lattice vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundednessReport {
    pub unbounded: Support,
    /// Nonnegative lattice vectors whose supports cover `unbounded`.
    pub witnesses: Vec<LatticeVector>,
}

impl BoundednessReport {
    pub fn bounded(&self) -> Support {
        self.unbounded.complement()
    }

    /// A single nonnegative lattice vector with support exactly `unbounded`.
    pub fn combined_witness(&self) -> Option<LatticeVector> {
        let first = self.witnesses.first()?;
        let mut acc = first.entries().to_vec();
        for w in &self.witnesses[1..] {
            for (a, b) in acc.iter_mut().zip(w.entries()) {
                *a += b;
            }
        }
        Some(LatticeVector::new(acc))
    }
}

pub fn unbounded_components(l: &Lattice) -> BoundednessReport {
    let n = l.dim();
    let mut unbounded = Support::empty(n);
    let mut witnesses = Vec::new();
    if l.rank() == 0 {
        return BoundednessReport {
            unbounded,
            witnesses,
        };
    }
    loop {
        let objective: Vec<Rat> = (0..n)
            .map(|i| Rat::from_integer(if unbounded.contains(i) { 0 } else { 1 }.into()))
            .collect();
        let opt = lp::maximize_in_unit_box(l.basis(), &objective);
        if opt.value.is_zero() {
            break;
        }
        let w = LatticeVector::new(lp::integral_combination(l.basis(), &opt.lambda));
        debug_assert!(w.negative_support().is_empty());
        unbounded.union_with(w.positive_support());
        witnesses.push(w);
    }
    BoundednessReport {
        unbounded,
        witnesses,
    }
}

/// A strictly positive vector orthogonal to `l`, if `l` is pointed.
pub fn strictly_positive_grading(l: &Lattice) -> Option<Grading> {
    let n = l.dim();
    if l.rank() == 0 {
        return Some(Grading::all_ones(n));
    }
    let dual = Lattice::kernel(l.basis());
    if dual.rank() == 0 {
        return None;
    }
    let report = unbounded_components(&dual);
    if report.unbounded.count() != n {
        return None;
    }
    let w = report.combined_witness()?;
    Grading::new(w.entries().iter().map(Int::to_rat).collect())
}

/// Coordinates dropped before computing a generating set of the projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaPlan {
    /// Dropped coordinates, ascending; also the order in which they are lifted.
    pub sigma: Vec<usize>,
    pub dim: usize,
}

impl SigmaPlan {
    pub fn projection(&self) -> ProjectionMap {
        ProjectionMap::new(self.dim, self.sigma.iter().copied())
    }
}

fn projected(b: &IntMatrix, sigma: &[usize]) -> Lattice {
    let kept: Vec<usize> = (0..b.ncols()).filter(|i| !sigma.contains(i)).collect();
    let p = b.select_columns(&kept);
    Lattice::from_basis(p.clone()).unwrap_or_else(|_| Lattice::span(kept.len(), &p.to_rows()).unwrap())
}

/// Picks coordinates to drop so that the lattice embeds injectively into the
/// remaining coordinates and its image is pointed.
///
/// Starts from the complement of the leftmost independent columns and, while
/// the image is not pointed, puts back the coordinate whose return leaves the
/// fewest unbounded components (smallest index on ties).
pub fn choose_sigma(b: &IntMatrix) -> Result<SigmaPlan> {
    let n = b.ncols();
    let k = linalg::rank(b);
    let kept = linalg::independent_columns(b, k)?;
    let mut sigma: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
    loop {
        if is_pointed(&projected(b, &sigma)) {
            return Ok(SigmaPlan { sigma, dim: n });
        }
        if sigma.is_empty() {
            return Err(Error::NotPointed);
        }
        let mut best: Option<(usize, usize)> = None;
        for (pos, _) in sigma.iter().enumerate() {
            let mut trial = sigma.clone();
            trial.remove(pos);
            let count = unbounded_components(&projected(b, &trial)).unbounded.count();
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((pos, count));
            }
        }
        sigma.remove(best.unwrap().0);
    }
}

/// Coordinates on which saturating suffices to make a set generating.
///
/// `already` lists coordinates treated as saturated from the start. The
/// result never has more than half of the remaining coordinates.
pub fn saturation_support_from(s: &VectorSet, already: &Support) -> Vec<usize> {
    let n = s.dim();
    let mut tau = already.clone();
    for i in 0..n {
        if s.iter().all(|u| u.entries()[i].is_zero()) {
            tau.insert(i);
        }
    }
    let mut sigma = Support::empty(n);
    while let Some(u) = s.iter().find(|u| !u.support().is_subset(&tau)) {
        let pos_new = u.positive_support().difference(&tau);
        let neg_new = u.negative_support().difference(&tau);
        if pos_new.count() >= neg_new.count() {
            sigma.union_with(&neg_new);
        } else {
            sigma.union_with(&pos_new);
        }
        tau.union_with(&u.support());
    }
    sigma.to_vec()
}

pub fn saturation_support(s: &VectorSet) -> Vec<usize> {
    saturation_support_from(s, &Support::empty(s.dim()))
}

/// One completion step of a generating-set computation.
#[derive(Clone, Debug)]
pub struct StageReport {
    /// Human-readable description, in original coordinate labels.
    pub label: String,
    pub completion: CompletionStats,
    /// Output of the completion, before lifting.
    pub completed: VectorSet,
    /// Working set at the end of the stage.
    pub result: VectorSet,
}

#[derive(Clone, Debug)]
pub struct GeneratorRun {
    pub generators: VectorSet,
    pub stages: Vec<StageReport>,
    /// Saturated coordinates, or dropped coordinates for project-and-lift.
    pub sigma: Vec<usize>,
}

fn set_from(labels: &[usize], vs: Vec<LatticeVector>) -> VectorSet {
    let mut out = VectorSet::with_labels(labels.to_vec());
    for v in vs {
        out.insert(v);
    }
    out
}

/// Knobs shared by the generating-set algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorOptions {
    /// Shrink the working set after every stage by replacing elements with
    /// divisible leading parts (see [`completion::autoreduce`]), and retire
    /// such elements inside completions where that is sound. Off, every
    /// stage keeps the plain completion output.
    pub reduce: bool,
}

impl Default for GeneratorOptions {
    fn default() -> GeneratorOptions {
        GeneratorOptions { reduce: true }
    }
}

impl GeneratorOptions {
    /// Plain completion outputs at every stage.
    pub fn unreduced() -> GeneratorOptions {
        GeneratorOptions { reduce: false }
    }
}

fn saturate(
    s: &VectorSet,
    coords: &[usize],
    cancel_mask: &Support,
    opts: &GeneratorOptions,
    stages: &mut Vec<StageReport>,
) -> Result<VectorSet> {
    let n = s.dim();
    let labels = s.labels().to_vec();
    let mut g = s.clone();
    let mut done = Support::empty(n);
    for &i in coords {
        let order = TermOrder::negated_unit(n, i);
        let tau = done.intersection(cancel_mask);
        let c = completion::complete(&order, &g.to_vec(), &CriteriaConfig::for_saturation(tau))?;
        let completed = set_from(&labels, c.basis.clone());
        g = if opts.reduce {
            set_from(&labels, completion::autoreduce(&c.basis, &order)?)
        } else {
            completed.clone()
        };
        let done_labels: Vec<usize> = done.iter().map(|d| labels[d] + 1).collect();
        stages.push(StageReport {
            label: format!("saturated {:?}, order -e{}", done_labels, labels[i] + 1),
            completion: c.stats,
            completed,
            result: g.clone(),
        });
        done.insert(i);
    }
    Ok(g)
}

/// Generating set by saturating one coordinate at a time.
pub fn saturation_algorithm(s: &VectorSet, opts: &GeneratorOptions) -> Result<GeneratorRun> {
    let sigma = saturation_support(s);
    let mut stages = Vec::new();
    let g = saturate(s, &sigma, &Support::full(s.dim()), opts, &mut stages)?;
    Ok(GeneratorRun {
        generators: g,
        stages,
        sigma,
    })
}

fn nonzero(s: &VectorSet) -> VectorSet {
    let mut out = VectorSet::with_labels(s.labels().to_vec());
    for v in s {
        if !v.is_zero() {
            out.insert(v.clone());
        }
    }
    out
}

/// Generating set of a pointed lattice by computing one for a projection and
/// lifting it back one coordinate at a time.
pub fn project_and_lift(s: &VectorSet, opts: &GeneratorOptions) -> Result<GeneratorRun> {
    let n = s.dim();
    let lattice = Lattice::span(n, &s.iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>())?;
    if lattice.rank() == 0 {
        return Ok(GeneratorRun {
            generators: VectorSet::with_labels(s.labels().to_vec()),
            stages: Vec::new(),
            sigma: Vec::new(),
        });
    }
    let plan = choose_sigma(lattice.basis())?;
    // the projection of the spanning set spans the projected lattice
    let proj = plan.projection();
    let start = nonzero(&proj.project_set(s));
    let mut stages = Vec::new();
    let sat_coords = saturation_support(&start);
    let saturated = saturate(&start, &sat_coords, &Support::full(start.dim()), opts, &mut stages)?;
    let mut g = if opts.reduce {
        saturated
    } else {
        set_from(saturated.labels(), completion::prune_redundant(saturated.to_vec()))
    };

    let basis = lattice.basis();
    let mut dropped = plan.sigma.clone();
    for &i in &plan.sigma {
        let kept: Vec<usize> = (0..n).filter(|j| !dropped.contains(j)).collect();
        let pb = basis.select_columns(&kept);
        let column: Vec<Int> = basis.rows().map(|r| r[i].clone()).collect();
        let omega = linalg::solve_omega(&pb, &column)?;
        let order = TermOrder::with_cost(omega.iter().map(|w| -w).collect());
        let mut criteria = CriteriaConfig::for_generating_set(kept.len());
        criteria.retire = opts.reduce;
        let c = completion::complete(&order, &g.to_vec(), &criteria)?;
        let completed = set_from(g.labels(), c.basis);

        dropped.retain(|&j| j != i);
        let next: Vec<usize> = (0..n).filter(|j| !dropped.contains(j)).collect();
        let slot = next.iter().position(|&j| j == i).unwrap();
        let labels: Vec<usize> = next.iter().map(|&j| s.labels()[j]).collect();
        let mut lifted = VectorSet::with_labels(labels);
        for u in &completed {
            let value = Int::from_rat(&linalg::dot_rat(&omega, u.entries())).ok_or(Error::NotInLattice)?;
            let mut e = u.entries().to_vec();
            e.insert(slot, value);
            lifted.insert(LatticeVector::new(e));
        }
        stages.push(StageReport {
            label: format!("lift coordinate {}", s.labels()[i] + 1),
            completion: c.stats,
            completed,
            result: lifted.clone(),
        });
        g = lifted;
    }
    Ok(GeneratorRun {
        generators: g,
        stages,
        sigma: plan.sigma,
    })
}

/// Generating set from a single completion in one extra dimension.
pub fn lift_and_project(s: &VectorSet, opts: &GeneratorOptions) -> Result<GeneratorRun> {
    let n = s.dim();
    let sigma = saturation_support(s);
    let mut lifted: Vec<LatticeVector> = s
        .iter()
        .map(|u| {
            let mut e = u.entries().to_vec();
            e.push(Int::ZERO);
            LatticeVector::new(e)
        })
        .collect();
    let mut extra = vec![Int::ZERO; n + 1];
    for &i in &sigma {
        extra[i] = Int::ONE;
    }
    extra[n] = Int::from(-1);
    lifted.push(LatticeVector::new(extra));

    let order = TermOrder::negated_unit(n + 1, n);
    let c = completion::complete(&order, &lifted, &CriteriaConfig::from_flags(true, None, true))?;
    let mut out = VectorSet::with_labels(s.labels().to_vec());
    let mut projected = Vec::new();
    for u in &c.basis {
        let t = &u.entries()[n];
        let e: Vec<Int> = (0..n)
            .map(|i| {
                if sigma.binary_search(&i).is_ok() {
                    &u.entries()[i] + t
                } else {
                    u.entries()[i].clone()
                }
            })
            .collect();
        let v = LatticeVector::new(e);
        if !v.is_zero() && !out.contains_up_to_sign(&v) {
            projected.push(v.clone());
            out.insert(v);
        }
    }
    let order = TermOrder::degrevlex(n);
    let oriented: Vec<LatticeVector> = projected.iter().map(|v| order.orient(v)).collect::<Result<_>>()?;
    let generators = if opts.reduce {
        set_from(s.labels(), completion::autoreduce(&oriented, &order)?)
    } else {
        set_from(s.labels(), oriented)
    };
    let mut labels = s.labels().to_vec();
    labels.push(labels.last().map_or(0, |l| l + 1));
    let stage = StageReport {
        label: format!(
            "lifted by {:?}, order -e{}",
            sigma.iter().map(|&i| s.labels()[i] + 1).collect::<Vec<_>>(),
            n + 1
        ),
        completion: c.stats,
        completed: set_from(&labels, c.basis),
        result: generators.clone(),
    };
    Ok(GeneratorRun {
        generators,
        stages: vec![stage],
        sigma,
    })
}

/// Generating set of any lattice, pointed or not.
///
/// For a pointed lattice this is [`project_and_lift`]. Otherwise a
/// nonnegative lattice vector covering all unbounded coordinates is added
/// and only bounded coordinates are saturated.
pub fn extended_generating_set(s: &VectorSet, opts: &GeneratorOptions) -> Result<GeneratorRun> {
    let n = s.dim();
    let lattice = Lattice::span(n, &s.iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>())?;
    let report = unbounded_components(&lattice);
    let Some(witness) = report.combined_witness() else {
        return project_and_lift(s, opts);
    };
    let mut start = nonzero(s);
    start.insert(witness);
    let bounded = report.bounded();
    let coords = saturation_support_from(&start, &report.unbounded);
    let mut stages = Vec::new();
    let g = saturate(&start, &coords, &bounded, opts, &mut stages)?;
    Ok(GeneratorRun {
        generators: g,
        stages,
        sigma: coords,
    })
}

/// Reduced Groebner basis of the lattice spanned by `s` for `order`.
pub fn groebner_basis(s: &VectorSet, order: &TermOrder) -> Result<VectorSet> {
    let run = extended_generating_set(s, &GeneratorOptions::default())?;
    groebner_from_generators(s, &run.generators, order)
}

/// Reduced Groebner basis from a known generating set of the lattice
/// spanned by `s`.
pub fn groebner_from_generators(s: &VectorSet, generators: &VectorSet, order: &TermOrder) -> Result<VectorSet> {
    let n = s.dim();
    let lattice = Lattice::span(n, &s.iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>())?;
    if !order.is_term_order_for(&lattice) {
        return Err(Error::NotTermOrder);
    }
    let bounded = unbounded_components(&lattice).bounded();
    let mut sequence = Vec::new();
    if !bounded.is_empty() {
        sequence.push(Criterion::Cancellation(bounded));
    }
    sequence.push(Criterion::DisjointSupport);
    let c = completion::complete(order, &generators.to_vec(), &CriteriaConfig { sequence, retire: true })?;
    let reduced = completion::interreduce(&c.basis, order)?;
    Ok(set_from(s.labels(), reduced))
}

/// Which generating-set algorithm to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Saturation,
    ProjectAndLift,
    LiftAndProject,
}

/// Runs `algorithm`, falling back to the non-pointed extension when needed.
pub fn generating_set(s: &VectorSet, algorithm: Algorithm, opts: &GeneratorOptions) -> Result<GeneratorRun> {
    let lattice = Lattice::span(s.dim(), &s.iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>())?;
    if !is_pointed(&lattice) {
        return extended_generating_set(s, opts);
    }
    match algorithm {
        Algorithm::Saturation => saturation_algorithm(s, opts),
        Algorithm::ProjectAndLift => project_and_lift(s, opts),
        Algorithm::LiftAndProject => lift_and_project(s, opts),
    }
}

/// Sum of absolute values of all entries; a rough size measure.
pub fn total_weight(s: &VectorSet) -> Int {
    s.iter()
        .flat_map(|v| v.entries().iter())
        .map(|e| if e.is_negative() { -e } else { e.clone() })
        .sum()
}
