#![allow(dead_code)]

use std::cmp::Ordering;

use latgen::generators::saturation_support;
use latgen::int::Int;
use latgen::lattice::{LatticeVector, VectorSet};
use latgen::tables::random_pointed_bases;

pub const RANDOM_SEED: u64 = 20_07;
pub const RANDOM_COUNT: usize = 25;

pub fn running_example() -> VectorSet {
    VectorSet::from_i64(6, &[&[1, -1, -1, -3, -1, 2], &[1, 0, 2, -2, -2, 1]])
}

/// The seeded 2x6 instances with entries in [-3, 3].
pub fn random_instances() -> Vec<VectorSet> {
    random_pointed_bases(RANDOM_COUNT, 2, 6, 3, RANDOM_SEED)
        .iter()
        .map(VectorSet::from_matrix)
        .collect()
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&e| Int::from(e)).collect()
}

pub fn small(v: &[Int]) -> Vec<i64> {
    v.iter().map(|e| e.to_i64().expect("small entry")).collect()
}

pub fn rows(s: &VectorSet) -> Vec<Vec<i64>> {
    s.iter().map(|v| small(v.entries())).collect()
}

/// Every element of `expected` is in `s` up to sign and the sizes agree.
pub fn same_up_to_sign(s: &VectorSet, expected: &[&[i64]]) -> bool {
    s.len() == expected.len()
        && expected
            .iter()
            .all(|e| s.contains_up_to_sign(&LatticeVector::from_i64(e)))
}

pub fn saturation_bound_holds(s: &VectorSet) -> bool {
    saturation_support(s).len() <= s.dim() / 2
}

/// Graded reverse lexicographic comparison, written out directly.
pub fn degrevlex(x: &[i64], y: &[i64]) -> Ordering {
    let dx: i64 = x.iter().sum();
    let dy: i64 = y.iter().sum();
    if dx != dy {
        return dx.cmp(&dy);
    }
    for i in (0..x.len()).rev() {
        if x[i] != y[i] {
            return y[i].cmp(&x[i]);
        }
    }
    Ordering::Equal
}

/// All nonnegative points `b + sum c_j basis_j` with every `|c_j| <= radius`.
/// Panics when a point sits on the edge of the coefficient box, since the
/// fiber might then continue past it.
pub fn brute_fiber(basis: &[Vec<i64>], b: &[i64], radius: i64) -> Vec<Vec<i64>> {
    let k = basis.len();
    let mut out = Vec::new();
    let mut coeffs = vec![-radius; k];
    loop {
        let mut x = b.to_vec();
        for (c, r) in coeffs.iter().zip(basis) {
            for (xi, ri) in x.iter_mut().zip(r) {
                *xi += c * ri;
            }
        }
        if x.iter().all(|&e| e >= 0) {
            assert!(
                coeffs.iter().all(|c| c.abs() < radius),
                "coefficient box too small for fiber of {b:?}"
            );
            out.push(x);
        }
        let mut j = 0;
        while j < k && coeffs[j] == radius {
            coeffs[j] = -radius;
            j += 1;
        }
        if j == k {
            break;
        }
        coeffs[j] += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Checks `g` against a brute-force fiber: the fiber has a single
/// degrevlex-minimal point and every other point has a move of `g` (in its
/// decreasing direction) that applies to it.
pub fn brute_groebner_check(basis: &[Vec<i64>], g: &[Vec<i64>], b: &[i64]) -> Result<(), String> {
    let fiber = brute_fiber(basis, b, 40);
    let min = fiber.iter().min_by(|x, y| degrevlex(x, y)).unwrap().clone();
    let oriented: Vec<Vec<i64>> = g
        .iter()
        .map(|u| {
            let zero = vec![0; u.len()];
            if degrevlex(u, &zero) == Ordering::Greater {
                u.clone()
            } else {
                u.iter().map(|e| -e).collect()
            }
        })
        .collect();
    for x in &fiber {
        if *x == min {
            continue;
        }
        let movable = oriented
            .iter()
            .any(|u| u.iter().zip(x).all(|(ui, xi)| *ui <= 0 || ui <= xi));
        if !movable {
            return Err(format!("{x:?} in the fiber of {b:?} has no improving move"));
        }
    }
    Ok(())
}

/// Positive parts and pairwise peaks of `g`, a small set of interesting
/// right-hand sides.
pub fn peaks(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for (i, u) in g.iter().enumerate() {
        out.push(u.iter().map(|&e| e.max(0)).collect());
        for v in &g[i + 1..] {
            for s in [1, -1] {
                out.push(u.iter().zip(v).map(|(&a, &b)| a.max(0).max(s * b)).collect());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
