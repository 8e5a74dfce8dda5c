//! Exact integer linear algebra: column Hermite reduction, integer kernels
//! and particular solutions of `A·x = b`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix stored as rows.
pub type Matrix = Vec<Vec<BigInt>>;

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn columns(a: &Matrix) -> usize {
    a.first().map_or(0, Vec::len)
}

/// Rank over the rationals.
pub fn rank(a: &Matrix) -> usize {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let (rows, cols) = (m.len(), columns(a));
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            for j in c..cols {
                let sub = &f * &m[r][j];
                m[i][j] -= sub;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Column-style Hermite reduction `A·U = L` with `U` unimodular.
///
/// `L` is lower echelon: its first `rank` columns carry pivots at strictly
/// increasing rows, and the remaining columns are zero.
#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    pub lower: Matrix,
    pub unimodular: Matrix,
    /// `(row, column)` of each pivot, column `k` for pivot `k`.
    pub pivots: Vec<(usize, usize)>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Integer basis of `{x : A·x = 0}` as the trailing columns of `U`.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let n = self.unimodular.len();
        (self.rank()..n)
            .map(|c| (0..n).map(|r| self.unimodular[r][c].clone()).collect())
            .collect()
    }

    /// An integer `x` with `A·x = b`, or `None` when no integer solution exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let n = self.unimodular.len();
        let mut y = vec![BigInt::zero(); n];
        for (k, &(row, _)) in self.pivots.iter().enumerate() {
            let mut rest = b[row].clone();
            for (j, yj) in y.iter().enumerate().take(k) {
                rest -= &self.lower[row][j] * yj;
            }
            let (q, r) = rest.div_rem(&self.lower[row][k]);
            if !r.is_zero() {
                return None;
            }
            y[k] = q;
        }
        for (row, target) in b.iter().enumerate() {
            let value: BigInt = (0..self.rank()).map(|j| &self.lower[row][j] * &y[j]).sum();
            if &value != target {
                return None;
            }
        }
        Some(
            (0..n)
                .map(|r| (0..n).map(|c| &self.unimodular[r][c] * &y[c]).sum())
                .collect(),
        )
    }
}

pub fn column_echelon(a: &Matrix) -> ColumnEchelon {
    let rows = a.len();
    let n = columns(a);
    let mut l = a.clone();
    let mut u: Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut c = 0;
    for row in 0..rows {
        if c == n {
            break;
        }
        loop {
            // smallest nonzero magnitude among columns c.. becomes the pivot candidate
            let Some(best) = (c..n)
                .filter(|&j| !l[row][j].is_zero())
                .min_by(|&x, &y| l[row][x].abs().cmp(&l[row][y].abs()))
            else {
                break;
            };
            swap_columns(&mut l, &mut u, c, best);
            let mut done = true;
            for j in c + 1..n {
                if l[row][j].is_zero() {
                    continue;
                }
                let f = l[row][j].div_floor(&l[row][c]);
                add_column_multiple(&mut l, &mut u, j, c, &-f);
                if !l[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if l[row][c].is_zero() {
            continue;
        }
        if l[row][c].is_negative() {
            negate_column(&mut l, &mut u, c);
        }
        pivots.push((row, c));
        c += 1;
    }
    ColumnEchelon {
        lower: l,
        unimodular: u,
        pivots,
    }
}

fn swap_columns(l: &mut Matrix, u: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in l.iter_mut().chain(u.iter_mut()) {
        r.swap(a, b);
    }
}

/// column `dst += f * column src`
fn add_column_multiple(l: &mut Matrix, u: &mut Matrix, dst: usize, src: usize, f: &BigInt) {
    for r in l.iter_mut().chain(u.iter_mut()) {
        let add = &r[src] * f;
        r[dst] += add;
    }
}

fn negate_column(l: &mut Matrix, u: &mut Matrix, c: usize) {
    for r in l.iter_mut().chain(u.iter_mut()) {
        r[c] = -r[c].clone();
    }
}

/// Row echelon form of a lattice basis under unimodular row operations.
///
/// Returns the reduced basis with positive pivots and the pivot column of
/// each row; zero rows are dropped.
pub fn row_echelon(vectors: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let n = vectors.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        loop {
            let Some(best) = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&x, &y| m[x][c].abs().cmp(&m[y][c].abs()))
            else {
                break;
            };
            m.swap(r, best);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].div_floor(&m[r][c]);
                for j in c..n {
                    let sub = &m[r][j] * &f;
                    m[i][j] -= sub;
                }
                if !m[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
    }
    m.truncate(r);
    (m, pivot_cols)
}

pub fn mul_vec(a: &Matrix, x: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}
