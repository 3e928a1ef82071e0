//! Exact integer and rational linear algebra.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::int::{Int, Rat};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::ONE);
        }
        m
    }

    /// Builds a matrix from rows, all of which must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Int>>) -> Result<IntMatrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(IntMatrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Convenience constructor for small literal matrices.
    ///
    /// Panics if the rows are ragged.
    pub fn from_i64(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Int::from(v)).collect())
            .collect();
        IntMatrix::from_rows(cols, rows).expect("ragged literal matrix")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Int]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_rows(&self) -> Vec<Vec<Int>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Int::ZERO;
                for k in 0..self.cols {
                    acc += &(self.get(r, k) * other.get(k, c));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> IntMatrix {
        let rows = self
            .rows()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        IntMatrix::from_rows(cols.len(), rows).unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Int::is_zero)
    }

    fn to_rat_rows(&self) -> Vec<Vec<Rat>> {
        self.rows().map(|r| r.iter().map(Int::to_rat).collect()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{}", self.rows, self.cols)?;
        for r in self.rows() {
            let line: Vec<String> = r.iter().map(Int::to_string).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Row-style Hermite normal form of an integer matrix.
///
/// Only nonzero rows are kept. Pivots are positive and strictly increasing,
/// and entries above a pivot lie in `0..pivot`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    cols: usize,
    rows: Vec<Vec<Int>>,
    pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn to_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.cols, self.rows.clone()).unwrap()
    }

    /// Integer coefficients `c` with `v = sum c_k * row_k`, if any exist.
    pub fn solve(&self, v: &[Int]) -> Option<Vec<Int>> {
        if v.len() != self.cols {
            return None;
        }
        let mut residual = v.to_vec();
        let mut coefs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = residual[p].checked_div_exact(&row[p])?;
            if !q.is_zero() {
                for (r, e) in residual.iter_mut().zip(row).skip(p) {
                    *r -= &(&q * e);
                }
            }
            coefs.push(q);
        }
        if residual.iter().all(Int::is_zero) {
            Some(coefs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.solve(v).is_some()
    }
}

fn axpy_row(target: &mut [Int], q: &Int, source: &[Int], from: usize) {
    for (t, s) in target.iter_mut().zip(source).skip(from) {
        if !s.is_zero() {
            *t -= &(q * s);
        }
    }
}

/// Hermite normal form of the row lattice of `m`.
pub fn hnf(m: &IntMatrix) -> Hnf {
    hnf_rows(m.to_rows(), m.ncols())
}

fn hnf_rows(mut rows: Vec<Vec<Int>>, cols: usize) -> Hnf {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            // bring the smallest nonzero entry of the column to row r
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let mut done = true;
            for row in tail.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let q = row[c].div_floor(&pivot_row[c]);
                axpy_row(row, &q, pivot_row, c);
                if !row[c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows.len() && !rows[r][c].is_zero() {
            if rows[r][c].is_negative() {
                for e in rows[r].iter_mut() {
                    *e = -&*e;
                }
            }
            let (head, tail) = rows.split_at_mut(r);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                let q = row[c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    axpy_row(row, &q, pivot_row, c);
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    rows.truncate(r);
    Hnf { cols, rows, pivots }
}

/// Z-basis of `{u in Z^n : A u = 0}`, in Hermite normal form.
pub fn integer_kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.ncols();
    let d = a.nrows();
    let rows: Vec<Vec<Int>> = (0..n)
        .map(|j| {
            let mut row: Vec<Int> = (0..d).map(|i| a.get(i, j).clone()).collect();
            row.extend((0..n).map(|k| if k == j { Int::ONE } else { Int::ZERO }));
            row
        })
        .collect();
    let h = hnf_rows(rows, d + n);
    let kernel: Vec<Vec<Int>> = h
        .rows
        .iter()
        .zip(&h.pivots)
        .filter(|(_, &p)| p >= d)
        .map(|(row, _)| row[d..].to_vec())
        .collect();
    IntMatrix::from_rows(n, kernel).unwrap()
}

/// LLL-reduces the rows of a matrix with independent rows (parameter 3/4).
///
/// Integral variant: Gram-Schmidt data is kept as the integers
/// `d_i = det(Gram of the first i rows)` and `lambda_ij = d_j * mu_ij`, so
/// no rationals are needed.
pub fn lll_reduce(m: &IntMatrix) -> Result<IntMatrix> {
    let mut b = m.to_rows();
    let n = b.len();
    if n <= 1 {
        return Ok(m.clone());
    }
    // d[i + 1] is the Gram determinant of the first i + 1 rows; d[0] = 1
    let mut d = vec![Int::ONE; n + 1];
    let mut lambda = vec![vec![Int::ZERO; n]; n];
    d[1] = dot(&b[0], &b[0]);
    if d[1].is_zero() {
        return Err(Error::RankDeficient { rank: 0, wanted: n });
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&b[k], &b[j]);
                for i in 0..j {
                    u = (&(&d[i + 1] * &u) - &(&lambda[k][i] * &lambda[j][i]))
                        .checked_div_exact(&d[i])
                        .expect("exact division in Gram-Schmidt update");
                }
                if j < k {
                    lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::RankDeficient { rank: k, wanted: n });
                    }
                    d[k + 1] = u;
                }
            }
        }
        size_reduce(&mut b, &mut lambda, &d, k, k - 1);
        let lhs = Int::from(4) * &d[k + 1] * &d[k - 1];
        let rhs = Int::from(3) * &d[k] * &d[k] - Int::from(4) * &lambda[k][k - 1] * &lambda[k][k - 1];
        if lhs < rhs {
            swap_rows(&mut b, &mut lambda, &mut d, k, kmax);
            k = k.saturating_sub(1).max(1);
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                size_reduce(&mut b, &mut lambda, &d, k, l);
            }
            k += 1;
        }
    }
    IntMatrix::from_rows(m.ncols(), b)
}

fn size_reduce(b: &mut [Vec<Int>], lambda: &mut [Vec<Int>], d: &[Int], k: usize, l: usize) {
    let lam = lambda[k][l].clone();
    let dl = &d[l + 1];
    if (&lam + &lam).abs() <= *dl {
        return;
    }
    // nearest integer to lam / dl
    let q = (&(&lam + &lam) + dl).div_floor(&(dl + dl));
    let (head, tail) = b.split_at_mut(k);
    axpy_row(&mut tail[0], &q, &head[l], 0);
    lambda[k][l] = &lam - &(&q * dl);
    for i in 0..l {
        let v = &lambda[k][i] - &(&q * &lambda[l][i]);
        lambda[k][i] = v;
    }
}

fn swap_rows(b: &mut [Vec<Int>], lambda: &mut [Vec<Int>], d: &mut [Int], k: usize, kmax: usize) {
    b.swap(k, k - 1);
    for j in 0..k - 1 {
        let t = lambda[k][j].clone();
        lambda[k][j] = lambda[k - 1][j].clone();
        lambda[k - 1][j] = t;
    }
    let lam = lambda[k][k - 1].clone();
    let big = (&(&d[k - 1] * &d[k + 1]) + &(&lam * &lam))
        .checked_div_exact(&d[k])
        .expect("exact division in swap");
    for i in k + 1..=kmax {
        let t = lambda[i][k].clone();
        let new_ik = (&(&d[k + 1] * &lambda[i][k - 1]) - &(&lam * &t))
            .checked_div_exact(&d[k])
            .expect("exact division in swap");
        let new_ik1 = (&(&big * &t) + &(&lam * &new_ik))
            .checked_div_exact(&d[k + 1])
            .expect("exact division in swap");
        lambda[i][k] = new_ik;
        lambda[i][k - 1] = new_ik1;
    }
    d[k] = big;
}

/// Reduced row echelon form over Q; returns the pivot columns.
///
/// Pivoting is deterministic: leftmost column, then smallest row index.
pub(crate) fn rref(rows: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for e in rows[r].iter_mut() {
            *e = &*e * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (e, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *e = &*e - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &IntMatrix) -> usize {
    let mut rows = m.to_rat_rows();
    rref(&mut rows, m.ncols()).len()
}

/// Lexicographically first set of `k` linearly independent columns.
pub fn independent_columns(b: &IntMatrix, k: usize) -> Result<Vec<usize>> {
    let mut rows = b.to_rat_rows();
    let pivots = rref(&mut rows, b.ncols());
    if pivots.len() < k {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            wanted: k,
        });
    }
    Ok(pivots[..k].to_vec())
}

/// Solves `M x = rhs` over Q, setting free variables to zero.
///
/// Fails if the system is inconsistent or if the rows of `M` are dependent.
fn solve_rows(m: &[Vec<Rat>], cols: usize, rhs: &[Rat]) -> Result<Vec<Rat>> {
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Err(Error::Inconsistent);
    }
    if pivots.len() < m.len() {
        return Err(Error::Underdetermined);
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Ok(x)
}

/// Finds `w` with `w . u_k = lifted[k]` for every row `u_k` of `projected`.
pub fn solve_omega(projected: &IntMatrix, lifted: &[Int]) -> Result<Vec<Rat>> {
    if lifted.len() != projected.nrows() {
        return Err(Error::Dimension {
            expected: projected.nrows(),
            found: lifted.len(),
        });
    }
    let rhs: Vec<Rat> = lifted.iter().map(Int::to_rat).collect();
    solve_rows(&projected.to_rat_rows(), projected.ncols(), &rhs)
}

/// Unique rational coefficients `c` with `c B = v`.
pub fn solve_left(b: &IntMatrix, v: &[Int]) -> Result<Vec<Rat>> {
    if v.len() != b.ncols() {
        return Err(Error::Dimension {
            expected: b.ncols(),
            found: v.len(),
        });
    }
    let bt = b.transpose().to_rat_rows();
    let rhs: Vec<Rat> = v.iter().map(Int::to_rat).collect();
    let mut aug: Vec<Vec<Rat>> = bt
        .into_iter()
        .zip(rhs)
        .map(|(mut row, r)| {
            row.push(r);
            row
        })
        .collect();
    let k = b.nrows();
    let pivots = rref(&mut aug, k + 1);
    if pivots.last() == Some(&k) {
        return Err(Error::Inconsistent);
    }
    if pivots.len() < k {
        return Err(Error::Underdetermined);
    }
    let mut x = vec![Rat::zero(); k];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Ok(x)
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    let mut acc = Int::ZERO;
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn dot_rat(a: &[Rat], b: &[Int]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y.to_rat();
        }
    }
    acc
}
