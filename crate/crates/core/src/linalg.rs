//! Exact linear algebra: fraction-free (Bareiss) elimination over integral
//! domains and reduced row echelon form over the rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalars::{Poly, Rational};

/// Integral domain with exact division, as Bareiss elimination needs.
pub trait Domain: Clone + PartialEq + Zero + One {
    fn mul_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    /// `self / other`, where the division is known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Domain for BigInt {
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Domain for Poly {
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self + &(-o.clone())
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_div(o)
    }
    fn neg_ref(&self) -> Self {
        -self.clone()
    }
}

impl Domain for Rational {
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// Bareiss elimination in place. Returns the rank and the sign of the row
/// permutation; for a square matrix of full rank the last pivot is the
/// determinant up to that sign.
fn bareiss<T: Domain>(m: &mut [Vec<T>]) -> (usize, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut rank = 0;
    let mut negate = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if piv != rank {
            m.swap(piv, rank);
            negate = !negate;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..cols {
                let v = pivot_row[col].mul_ref(&row[c]).sub_ref(&factor.mul_ref(&pivot_row[c]));
                row[c] = v.div_exact(&prev);
            }
            row[col] = T::zero();
        }
        prev = pivot_row[col].clone();
        rank += 1;
    }
    (rank, negate)
}

pub fn determinant<T: Domain>(matrix: &[Vec<T>]) -> T {
    let n = matrix.len();
    if n == 0 {
        return T::one();
    }
    let mut m = matrix.to_vec();
    let (rank, negate) = bareiss(&mut m);
    if rank < n {
        return T::zero();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg_ref()
    } else {
        d
    }
}

pub fn rank<T: Domain>(matrix: &[Vec<T>]) -> usize {
    let mut m = matrix.to_vec();
    bareiss(&mut m).0
}

/// Scales each row of a rational matrix to integers.
pub fn clear_denominators(matrix: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    use num_integer::Integer;
    matrix
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter()
                .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Rank of a rational matrix by fraction-free elimination.
pub fn rank_rational(matrix: &[Vec<Rational>]) -> usize {
    rank(&clear_denominators(matrix))
}

/// Reduced row echelon form over Q; returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !p.is_zero() {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// Basis of `{v : M v = 0}`.
pub fn nullspace(matrix: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut m = matrix.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `M x = b` for one solution, if any.
pub fn solve(matrix: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain([bi.clone()]).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some(x)
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Incrementally maintained row space over Q, for independence tests.
#[derive(Default, Clone)]
pub struct RowSpace {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &f * r;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        let v: Vec<Rational> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    if !r.is_zero() {
                        *x = &*x - &f * r;
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}
