//! The action of the partition algebra on `V^{(x) k}`, `dim V = n`.
//!
//! Matrices are indexed `[top multi-index][bottom multi-index]`, so stacking
//! diagrams corresponds to the ordinary matrix product. Multi-indices are
//! big-endian: `i_1` is the most significant digit. At a half-integer rank
//! the action is on `V^{(x) k} (x) v_n`, and the pinned last index is dropped
//! from the encoding.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{orbit_element, SpecialElement};
use crate::combinatorics::{syt_dimension, BratteliGraph, GraphKind};
use crate::diagrams::{enumerate, Diagram, Rank};
use crate::error::{Error, Result};
use crate::linalg::{self, RowSpace};
use crate::scalars::{rat, Rational};
use crate::symgroup::Perm;

/// Largest side `n^k` accepted by default.
pub const DEFAULT_SIDE_CAP: usize = 81;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EndoMatrix {
    n: usize,
    k: usize,
    side: usize,
    data: Vec<Rational>,
}

impl EndoMatrix {
    pub fn zero(n: usize, k: usize) -> Self {
        let side = n.pow(k as u32);
        EndoMatrix { n, k, side, data: vec![Rational::zero(); side * side] }
    }

    pub fn identity(n: usize, k: usize) -> Self {
        let mut m = Self::zero(n, k);
        for i in 0..m.side {
            m.data[i * m.side + i] = Rational::one();
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of tensor factors.
    pub fn factors(&self) -> usize {
        self.k
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.data[row * self.side + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Rational) {
        self.data[row * self.side + col] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.side).map(<[Rational]>::to_vec).collect()
    }

    pub fn flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&o.data) {
            *a += b;
        }
        m
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= s;
        }
        m
    }

    pub fn mul(&self, o: &Self) -> Self {
        let s = self.side;
        let mut out = Self::zero(self.n, self.k);
        for i in 0..s {
            for m in 0..s {
                let a = &self.data[i * s + m];
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = &o.data[m * s + j];
                    if !b.is_zero() {
                        out.data[i * s + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        (0..self.side).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn rank(&self) -> usize {
        linalg::rank_rational(&self.rows())
    }

    /// Digits of a flat index, most significant first.
    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let mut d = vec![0; self.k];
        for slot in d.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        d
    }

    pub fn to_csv(&self) -> String {
        self.rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(crate::scalars::format_rational)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn check_side(n: usize, k: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::BadParams("n must be at least 1".into()));
    }
    match n.checked_pow(k as u32) {
        Some(side) if side <= cap => Ok(()),
        _ => Err(Error::LimitExceeded(format!("n^k = {n}^{k} exceeds {cap}"))),
    }
}

/// Tensor factors acted on at a rank: `floor(k)`.
pub fn factors_for(rank: Rank) -> usize {
    rank.floor()
}

/// Positions `(row, col)` of the ones of a diagram's matrix. With `exact`,
/// distinct blocks must carry distinct values (the orbit basis pattern).
fn ones(d: &Diagram, n: usize, exact: bool) -> Vec<(usize, usize)> {
    let rank = d.rank();
    let kk = rank.ambient();
    let k = factors_for(rank);
    let nb = d.num_blocks();
    let pinned = rank.is_half().then(|| d.top(kk - 1) as usize);
    let free: Vec<usize> = (0..nb).filter(|&b| Some(b) != pinned).collect();
    let mut values = vec![0usize; nb];
    if let Some(p) = pinned {
        values[p] = n - 1;
    }
    let mut out = Vec::new();
    let total = n.pow(free.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &b in &free {
            values[b] = c % n;
            c /= n;
        }
        if exact {
            let mut used = vec![false; n];
            if values.iter().any(|&v| std::mem::replace(&mut used[v], true)) {
                continue;
            }
        }
        let (mut row, mut col) = (0, 0);
        for i in 0..k {
            row = row * n + values[d.top(i) as usize];
            col = col * n + values[d.bottom(i) as usize];
        }
        out.push((row, col));
    }
    out
}

pub fn phi_diagram(d: &Diagram, n: usize) -> Result<EndoMatrix> {
    phi_diagram_capped(d, n, DEFAULT_SIDE_CAP)
}

pub fn phi_diagram_capped(d: &Diagram, n: usize, cap: usize) -> Result<EndoMatrix> {
    let k = factors_for(d.rank());
    check_side(n, k, cap)?;
    let mut m = EndoMatrix::zero(n, k);
    for (r, c) in ones(d, n, false) {
        m.set(r, c, Rational::one());
    }
    Ok(m)
}

/// The action of an element at its own parameter value, which must be the
/// integer `n`.
pub fn phi(a: &SpecialElement, n: usize) -> Result<EndoMatrix> {
    phi_capped(a, n, DEFAULT_SIDE_CAP)
}

pub fn phi_capped(a: &SpecialElement, n: usize, cap: usize) -> Result<EndoMatrix> {
    if a.param() != &rat(n as i64) {
        return Err(Error::BadParams(format!(
            "element specialized at {} acted on with n = {n}",
            a.param()
        )));
    }
    let k = factors_for(a.rank());
    check_side(n, k, cap)?;
    let mut m = EndoMatrix::zero(n, k);
    let s = m.side;
    for (d, c) in a.terms() {
        for (r, col) in ones(d, n, false) {
            m.data[r * s + col] += c;
        }
    }
    Ok(m)
}

/// The matrix of the orbit basis element `x_d`: ones exactly where the
/// equality pattern of the indices is `d`.
pub fn phi_orbit(d: &Diagram, n: usize) -> Result<EndoMatrix> {
    let k = factors_for(d.rank());
    check_side(n, k, DEFAULT_SIDE_CAP)?;
    let mut m = EndoMatrix::zero(n, k);
    for (r, c) in ones(d, n, true) {
        m.set(r, c, Rational::one());
    }
    Ok(m)
}

/// `phi(x_d)` through the diagram-basis expansion of `x_d`.
pub fn phi_orbit_via_expansion(d: &Diagram, n: usize) -> Result<EndoMatrix> {
    phi(&orbit_element(d, rat(n as i64)), n)
}

/// The permutation action `v_{i_1} (x) .. -> v_{s(i_1)} (x) ..` of `S_n`.
pub fn perm_action(sigma: &Perm, k: usize) -> EndoMatrix {
    let n = sigma.len();
    let mut m = EndoMatrix::zero(n, k);
    for idx in 0..m.side {
        let digits = m.digits(idx);
        let img = digits.iter().fold(0, |acc, &i| acc * n + sigma.image(i));
        m.set(img, idx, Rational::one());
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsKind {
    /// `b * delta(i_k, i_k')`, same space.
    Down,
    /// Sum over the last top and bottom index, one factor fewer.
    Up,
    /// Partial trace over the last factor.
    One,
}

pub fn endo_eps(b: &EndoMatrix, which: EpsKind) -> Result<EndoMatrix> {
    if b.k == 0 {
        return Err(Error::BadParams("no tensor factor to contract".into()));
    }
    let n = b.n;
    match which {
        EpsKind::Down => {
            let mut m = b.clone();
            for r in 0..b.side {
                for c in 0..b.side {
                    if r % n != c % n {
                        m.set(r, c, Rational::zero());
                    }
                }
            }
            Ok(m)
        }
        EpsKind::Up | EpsKind::One => {
            let mut m = EndoMatrix::zero(n, b.k - 1);
            for r in 0..m.side {
                for c in 0..m.side {
                    let mut acc = Rational::zero();
                    for j in 0..n {
                        if which == EpsKind::One {
                            acc += b.get(r * n + j, c * n + j);
                        } else {
                            for l in 0..n {
                                acc += b.get(r * n + j, c * n + l);
                            }
                        }
                    }
                    m.set(r, c, acc);
                }
            }
            Ok(m)
        }
    }
}

/// Restriction to `V^{(x)(k-1)} (x) v_n`, the last index pinned to `n`.
pub fn restrict_last(b: &EndoMatrix) -> EndoMatrix {
    let n = b.n;
    let mut m = EndoMatrix::zero(n, b.k - 1);
    for r in 0..m.side {
        for c in 0..m.side {
            m.set(r, c, b.get(r * n + n - 1, c * n + n - 1).clone());
        }
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismReport {
    pub n: usize,
    pub rank: String,
    pub pairs_checked: usize,
    pub failures: usize,
}

/// `phi(a b) = phi(a) phi(b)` over basis pairs: all of them, or `samples`
/// pairs drawn with the seeded generator.
pub fn homomorphism_check(n: usize, rank: Rank, samples: Option<(usize, u64)>) -> Result<HomomorphismReport> {
    use rand::{Rng, SeedableRng};
    let basis = enumerate(rank)?;
    let mats: Vec<EndoMatrix> = basis.iter().map(|d| phi_diagram(d, n)).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = match samples {
        None => (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect(),
        Some((count, seed)) => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| (rng.gen_range(0..basis.len()), rng.gen_range(0..basis.len())))
                .collect()
        }
    };
    let nn = rat(n as i64);
    let mut failures = 0;
    for &(i, j) in &pairs {
        let (d, l) = basis[i].compose_unchecked(&basis[j]);
        let lhs = phi_diagram(&d, n)?.scale(&crate::scalars::Coefficient::pow_u(&nn, l as u32));
        if lhs != mats[i].mul(&mats[j]) {
            failures += 1;
        }
    }
    Ok(HomomorphismReport { n, rank: rank.to_string(), pairs_checked: pairs.len(), failures })
}

/// Rank of the span of a family of 0/1 matrices given by their ones, via
/// the Gram matrix of pairwise overlaps (rank of `M M^t` equals rank of `M`
/// over the rationals).
fn span_rank_of_ones(ones: &[Vec<(usize, usize)>]) -> usize {
    let sets: Vec<std::collections::HashSet<(usize, usize)>> =
        ones.iter().map(|o| o.iter().copied().collect()).collect();
    let gram: Vec<Vec<num_bigint::BigInt>> = sets
        .iter()
        .map(|a| {
            sets.iter()
                .map(|b| num_bigint::BigInt::from(a.intersection(b).count()))
                .collect()
        })
        .collect();
    linalg::rank(&gram)
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantReport {
    pub n: usize,
    pub rank: String,
    pub algebra_dim: usize,
    pub image_rank: usize,
    pub kernel_dim: usize,
    /// Diagrams with more than `n` blocks.
    pub kernel_witnesses: usize,
    /// Every witness `x_d` acts by zero and they are independent.
    pub witnesses_in_kernel: bool,
}

impl CommutantReport {
    pub fn kernel_matches(&self) -> bool {
        self.witnesses_in_kernel && self.kernel_witnesses == self.kernel_dim
    }
}

pub fn commutant_dims(n: usize, rank: Rank) -> Result<CommutantReport> {
    check_side(n, factors_for(rank), DEFAULT_SIDE_CAP)?;
    let basis = enumerate(rank)?;
    let all_ones: Vec<Vec<(usize, usize)>> = basis.iter().map(|d| ones(d, n, false)).collect();
    let image_rank = span_rank_of_ones(&all_ones);
    let witnesses: Vec<&Diagram> = basis.iter().filter(|d| d.num_blocks() > n).collect();
    let index: HashMap<&Diagram, usize> = basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let mut span = RowSpace::new();
    let mut in_kernel = true;
    for d in &witnesses {
        let x = orbit_element(d, rat(n as i64));
        if !phi(&x, n)?.is_zero() {
            in_kernel = false;
        }
        let mut v = vec![Rational::zero(); basis.len()];
        for (e, c) in x.terms() {
            v[index[e]] = c.clone();
        }
        if !span.insert(v) {
            in_kernel = false;
        }
    }
    Ok(CommutantReport {
        n,
        rank: rank.to_string(),
        algebra_dim: basis.len(),
        image_rank,
        kernel_dim: basis.len() - image_rank,
        kernel_witnesses: witnesses.len(),
        witnesses_in_kernel: in_kernel,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BimoduleReport {
    pub n: usize,
    pub rank: String,
    /// `sum dim(S^lambda) * paths(lambda)`, against `n^k`.
    pub weighted_sum: String,
    pub space_dim: String,
    /// `sum paths(lambda)^2`, against the image rank.
    pub square_sum: String,
    pub image_rank: usize,
}

impl BimoduleReport {
    pub fn ok(&self) -> bool {
        self.weighted_sum == self.space_dim && self.square_sum == self.image_rank.to_string()
    }
}

/// Dimension identities of `V^{(x) k}` as a bimodule for the symmetric group
/// (`S_{n-1}` at half ranks) and the partition algebra.
pub fn bimodule_dimension_check(n: usize, rank: Rank) -> Result<BimoduleReport> {
    let g = BratteliGraph::build(GraphKind::Concrete(n), rank)?;
    let mut weighted = num_bigint::BigInt::zero();
    let mut squares = num_bigint::BigInt::zero();
    for (lambda, paths) in g.counts_at(rank) {
        weighted += syt_dimension(&lambda) * &paths;
        squares += &paths * &paths;
    }
    let image_rank = commutant_dims(n, rank)?.image_rank;
    Ok(BimoduleReport {
        n,
        rank: rank.to_string(),
        weighted_sum: weighted.to_string(),
        space_dim: num_bigint::BigInt::from(n).pow(factors_for(rank) as u32).to_string(),
        square_sum: squares.to_string(),
        image_rank,
    })
}

/// Joint eigenspaces of commuting matrices, searching the given candidate
/// eigenvalues. Returns each eigenvalue tuple with its dimension, or `None`
/// if the candidates do not exhaust the space.
pub fn joint_eigenspaces(mats: &[EndoMatrix], candidates: &[Rational]) -> Option<Vec<(Vec<Rational>, usize)>> {
    let side = mats.first()?.side;
    // subspaces as column bases
    let mut spaces: Vec<(Vec<Rational>, Vec<Vec<Rational>>)> = vec![(
        Vec::new(),
        (0..side)
            .map(|i| (0..side).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect(),
    )];
    for m in mats {
        let rows = m.rows();
        let mut next = Vec::new();
        for (tuple, basis) in spaces {
            // images of the basis vectors: applied as a row action, v -> v M
            let images: Vec<Vec<Rational>> = basis
                .iter()
                .map(|v| {
                    (0..side)
                        .map(|j| {
                            v.iter()
                                .zip(&rows)
                                .filter(|(a, _)| !a.is_zero())
                                .map(|(a, r)| a * &r[j])
                                .sum()
                        })
                        .collect()
                })
                .collect();
            let mut found = 0;
            for c in candidates {
                // coefficient vectors y with sum y_i (v_i M - c v_i) = 0
                let cols: Vec<Vec<Rational>> = (0..side)
                    .map(|j| {
                        basis
                            .iter()
                            .zip(&images)
                            .map(|(v, w)| &w[j] - c * &v[j])
                            .collect()
                    })
                    .collect();
                let ns = linalg::nullspace(&cols, basis.len());
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let sub: Vec<Vec<Rational>> = ns
                    .iter()
                    .map(|y| {
                        (0..side)
                            .map(|j| y.iter().zip(&basis).map(|(a, v)| a * &v[j]).sum())
                            .collect()
                    })
                    .collect();
                let mut t = tuple.clone();
                t.push(c.clone());
                next.push((t, sub));
            }
            if found != basis.len() {
                return None;
            }
        }
        spaces = next;
    }
    let mut out: Vec<(Vec<Rational>, usize)> = spaces.into_iter().map(|(t, b)| (t, b.len())).collect();
    out.sort();
    Some(out)
}
