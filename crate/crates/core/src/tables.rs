//! Benchmark instances: constraint matrices of three-way contingency tables
//! and seeded random lattice bases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generators::is_pointed;
use crate::int::Int;
use crate::lattice::Lattice;
use crate::linalg::{rank, IntMatrix};

/// Column of cell `(i, j, k)` in a `d1 x d2 x d3` table.
pub fn cell_index(dims: (usize, usize, usize), i: usize, j: usize, k: usize) -> usize {
    (i * dims.1 + j) * dims.2 + k
}

/// The 0/1 matrix whose rows are the line sums of a `d1 x d2 x d3` table
/// along each of the three axes. Its kernel is the set of tables with all
/// 2-marginals zero.
///
/// Rows come in three blocks: sums over `i` for each `(j, k)`, over `j` for
/// each `(i, k)`, over `k` for each `(i, j)`.
pub fn gen_table_matrix(d1: usize, d2: usize, d3: usize) -> IntMatrix {
    assert!(d1 >= 2 && d2 >= 2 && d3 >= 2, "table dimensions must be at least 2");
    let dims = (d1, d2, d3);
    let n = d1 * d2 * d3;
    let mut rows = Vec::with_capacity(d2 * d3 + d1 * d3 + d1 * d2);
    let mut push = |cells: Vec<usize>| {
        let mut row = vec![Int::ZERO; n];
        for c in cells {
            row[c] = Int::ONE;
        }
        rows.push(row);
    };
    for j in 0..d2 {
        for k in 0..d3 {
            push((0..d1).map(|i| cell_index(dims, i, j, k)).collect());
        }
    }
    for i in 0..d1 {
        for k in 0..d3 {
            push((0..d2).map(|j| cell_index(dims, i, j, k)).collect());
        }
    }
    for i in 0..d1 {
        for j in 0..d2 {
            push((0..d3).map(|k| cell_index(dims, i, j, k)).collect());
        }
    }
    IntMatrix::from_rows(n, rows).expect("rows have the right length")
}

/// `count` bases of pointed rank-`rows` lattices in dimension `cols`, with
/// entries drawn uniformly from `-max_abs..=max_abs`. Draws that are rank
/// deficient or not pointed are skipped, so the result depends only on the
/// arguments.
pub fn random_pointed_bases(count: usize, rows: usize, cols: usize, max_abs: i64, seed: u64) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let data: Vec<Vec<Int>> = (0..rows)
            .map(|_| (0..cols).map(|_| Int::from(rng.gen_range(-max_abs..=max_abs))).collect())
            .collect();
        let m = IntMatrix::from_rows(cols, data).expect("rows have the right length");
        if rank(&m) != rows {
            continue;
        }
        let l = Lattice::from_basis(m.clone()).expect("full rank basis");
        if is_pointed(&l) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_cube() {
        let m = gen_table_matrix(4, 4, 4);
        assert_eq!((m.nrows(), m.ncols()), (48, 64));
        assert_eq!(rank(&m), 37);
    }

    #[test]
    fn three_cube() {
        let m = gen_table_matrix(3, 3, 3);
        assert_eq!(m.ncols(), 27);
        assert_eq!(rank(&m), 19);
    }

    #[test]
    fn two_cube_rows() {
        let m = gen_table_matrix(2, 2, 2);
        assert_eq!(m.ncols(), 8);
        for r in m.rows() {
            assert_eq!(r.iter().filter(|e| !e.is_zero()).count(), 2);
            assert!(r.iter().all(|e| e.is_zero() || *e == Int::ONE));
        }
        // each cell lies on one line per axis
        for c in 0..8 {
            assert_eq!(m.rows().filter(|r| !r[c].is_zero()).count(), 3);
        }
    }

    #[test]
    fn rectangular_rank() {
        // kernel rank is (d1-1)(d2-1)(d3-1)
        let m = gen_table_matrix(2, 3, 4);
        assert_eq!(rank(&m), 24 - 6);
    }

    #[test]
    fn random_bases_are_reproducible() {
        let a = random_pointed_bases(5, 2, 6, 3, 7);
        let b = random_pointed_bases(5, 2, 6, 3, 7);
        assert_eq!(a, b);
        for m in &a {
            assert_eq!(rank(m), 2);
            assert!(m.rows().flatten().all(|e| e.abs() <= Int::from(3)));
        }
        assert_ne!(a, random_pointed_bases(5, 2, 6, 3, 8));
    }
}
